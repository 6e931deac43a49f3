"""Command-line front end: ``aalpha {charpoly,census,decode,verify,family}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .census import CensusInputError, CorruptInputError, open_graph6, run_census
from .engine import alpha_charpoly
from .families import FamilySpecError, make_family
from .formulas import DecodeError, decode_invariants
from .graph import Graph6Error, parse_graph6, read_graph6_lines, to_graph6
from .poly import parse_bipoly, render_bipoly, render_uni
from .verify import IDENTITIES, verify_graphs

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2

INPUT_ERRORS = (Graph6Error, CensusInputError, CorruptInputError, FamilySpecError, DecodeError,
                OSError)


class InputError(ValueError):
    pass


def parse_alpha(text: str) -> Fraction:
    """Exact rational from ``p/q`` or a decimal string; never goes through a float."""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        d = Decimal(text)
        if not d.is_finite():
            raise InputError(f"alpha must be finite, got {text!r}")
        return Fraction(d)
    except (ValueError, ZeroDivisionError, InvalidOperation):
        raise InputError(f"cannot parse alpha {text!r} as an exact rational") from None


def _fraction_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _read_graphs(path: str):
    with open_graph6(path) as fh:
        for lineno, rec in read_graph6_lines(fh):
            try:
                yield rec.decode(), parse_graph6(rec)
            except Graph6Error as exc:
                raise CensusInputError(str(exc), lineno) from None


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=False))


# -- subcommands -----------------------------------------------------------------

def cmd_charpoly(args) -> int:
    if (args.g6 is None) == (args.family is None):
        raise InputError("give exactly one of a graph6 string or --family")
    g = make_family(args.family) if args.family else parse_graph6(args.g6)
    p = alpha_charpoly(g)
    at = parse_alpha(args.at) if args.at is not None else None
    if args.format == "json":
        out = {"graph6": to_graph6(g).decode(), "polynomial": render_bipoly(p)}
        if at is not None:
            out["alpha"] = _fraction_str(at)
            out["value"] = render_uni(p.eval_alpha(at))
        _emit(out)
    else:
        print(render_uni(p.eval_alpha(at)) if at is not None else render_bipoly(p))
    return EXIT_OK


def cmd_census(args) -> int:
    if args.threads < 1:
        raise InputError("--threads must be >= 1")
    result = run_census(args.input, threads=args.threads, exact=args.exact,
                        progress=args.progress)
    families = [f.to_json() for f in result.families]
    if args.format == "json":
        out = result.report.to_json()
        if args.families:
            out["families"] = families
        _emit(out)
    else:
        print(result.report.tsv_row())
        if args.families:
            for fam in families:
                _emit(fam)
    return EXIT_OK


def cmd_decode(args) -> int:
    if args.poly is not None:
        _emit(decode_invariants(parse_bipoly(args.poly)).to_json())
        return EXIT_OK
    for _, g in _read_graphs(args.input):
        _emit(decode_invariants(alpha_charpoly(g)).to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    summary = verify_graphs(_read_graphs(args.input))
    if summary.graphs == 0:
        raise InputError("empty input")
    if args.format == "json":
        _emit(summary.to_json())
    else:
        for name in IDENTITIES:
            print(f"{name}\tpass={summary.passed[name]}\tfail={summary.failed[name]}"
                  f"\tskipped={summary.skipped[name]}")
        for f in summary.failures[:20]:
            print(f"FAIL {f['identity']} {f['graph']}", file=sys.stderr)
        print(f"graphs={summary.graphs}\t{'OK' if summary.ok else 'FAILED'}")
    return EXIT_OK if summary.ok else EXIT_VERIFY


def cmd_family(args) -> int:
    print(to_graph6(make_family(args.spec)).decode())
    return EXIT_OK


# -- wiring ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aalpha",
                                     description="Exact A_alpha-characteristic polynomials of graphs.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("charpoly", help="print the bivariate polynomial of one graph")
    p.add_argument("g6", nargs="?", help="graph6 string")
    p.add_argument("--family", help="family spec such as P:5, K:3,4, H:2,3,2, S:1,2,2")
    p.add_argument("--at", help="evaluate at this alpha (p/q or decimal, exact)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("census", help="group a graph6 stream by polynomial")
    p.add_argument("input", nargs="?", default="-", help="graph6 file, .gz accepted; - for stdin")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--threads", type=int, default=1, help="worker processes for the map phase")
    p.add_argument("--families", action="store_true", help="also print every cospectral family")
    p.add_argument("--exact", action="store_true", help="per-graph exact path for the map phase")
    p.add_argument("--progress", action="store_true", help="log record counts while running")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("decode", help="read n, m, sum d^2, sum d^3, triangles off the polynomial")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--poly", help="decode this polynomial text instead of reading graphs")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", help="run the identity suite over a graph6 stream")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("family", help="print a named family member as graph6")
    p.add_argument("spec")
    p.set_defaults(func=cmd_family)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose or getattr(args, "progress", False)
                        else logging.WARNING, format="%(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (InputError, *INPUT_ERRORS) as exc:
        print(f"aalpha: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

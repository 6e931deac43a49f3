"""Cospectrality census over graph6 streams.

Map: each chunk of records is decoded, its A_alpha-polynomials computed by the
batched modular path, canonically encoded and fingerprinted.  Reduce: the
fingerprints of all chunks are sorted together; every bucket holding more than
one record is recomputed with the exact Berkowitz path and split by full
canonical encoding, so a fingerprint collision can never merge two different
polynomials.
"""

from __future__ import annotations

import gzip
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator

import numpy as np

from .batch import MAX_BATCH_ORDER, adjacency_from_graph6, coefficient_table, validate_records
from .engine import alpha_charpoly
from .formulas import decode_invariants
from .graph import (Graph, Graph6Error, basic_counts, is_double_starlike, is_starlike,
                    parse_graph6, read_graph6_lines, to_graph6)
from .iso import are_isomorphic
from .poly import (BiPoly, canonical_encode, encode_rows, fingerprint_bytes, parse_bipoly,
                   render_bipoly)

log = logging.getLogger(__name__)

PROGRESS_EVERY = 100_000
DEFAULT_CHUNK = 20_000


class CensusInputError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class CorruptInputError(ValueError):
    """A cospectral family contains isomorphic graphs, i.e. the input repeats a graph."""


@dataclass(frozen=True)
class CensusReport:
    n: int
    graphs: int
    distinct_polys: int
    with_mate: int
    max_family: int

    @property
    def fraction_with_mate(self) -> Fraction:
        return Fraction(self.with_mate, self.graphs)

    def fraction_decimal(self, places: int = 9) -> str:
        return decimal_string(self.fraction_with_mate, places)

    def tsv_row(self) -> str:
        return "\t".join(map(str, (self.n, self.graphs, self.distinct_polys, self.with_mate,
                                   self.fraction_decimal(), self.max_family)))

    def to_json(self) -> dict:
        f = self.fraction_with_mate
        return {"n": self.n, "graphs": self.graphs, "distinct_polys": self.distinct_polys,
                "with_mate": self.with_mate,
                "fraction": f"{f.numerator}/{f.denominator}",
                "fraction_decimal": self.fraction_decimal(),
                "max_family": self.max_family}


@dataclass(frozen=True)
class MateFamily:
    poly: BiPoly
    members: tuple[str, ...]

    def to_json(self) -> dict:
        return {"polynomial": render_bipoly(self.poly), "members": list(self.members)}


@dataclass(frozen=True)
class CensusResult:
    report: CensusReport
    families: tuple[MateFamily, ...]


def decimal_string(f: Fraction, places: int) -> str:
    """Truncate a nonnegative fraction to ``places`` decimals, as the census report prints it."""
    if f < 0:
        raise ValueError("negative fraction")
    q = f.numerator * 10 ** places // f.denominator
    digits = str(q).rjust(places + 1, "0")
    return f"{digits[:-places]}.{digits[-places:]}" if places else digits


# -- input ---------------------------------------------------------------------

def open_graph6(path: str | Path) -> BinaryIO:
    """Open a graph6 file (``-`` for stdin, ``.gz`` transparently decompressed)."""
    if str(path) == "-":
        return sys.stdin.buffer
    if str(path).endswith(".gz"):
        return gzip.open(path, "rb")
    return open(path, "rb")


def _chunks(records: Iterator[tuple[int, bytes]], size: int):
    while True:
        chunk = list(islice(records, size))
        if not chunk:
            return
        yield chunk


def _order_of(lineno: int, rec: bytes) -> int:
    try:
        return parse_graph6(rec).n
    except Graph6Error as exc:
        raise CensusInputError(str(exc), lineno) from None


def _check_chunk(chunk: list[tuple[int, bytes]], n: int) -> np.ndarray:
    width = len(chunk[0][1])
    for lineno, rec in chunk:
        if len(rec) != width:
            _raise_for(lineno, rec, n)
    arr = np.frombuffer(b"".join(rec for _, rec in chunk), dtype=np.uint8).reshape(len(chunk), width)
    if n > 62:
        for lineno, rec in chunk:
            if _order_of(lineno, rec) != n:
                _raise_for(lineno, rec, n)
        return arr
    bad = validate_records(arr, n)
    if len(bad):
        lineno, rec = chunk[bad[0]]
        _raise_for(lineno, rec, n)
    return arr


def _raise_for(lineno: int, rec: bytes, n: int):
    g = None
    try:
        g = parse_graph6(rec)
    except Graph6Error as exc:
        raise CensusInputError(str(exc), lineno) from None
    if g.n != n:
        raise CensusInputError(f"mixed vertex counts: expected n={n}, got n={g.n}", lineno)
    raise CensusInputError("malformed graph6 record", lineno)


# -- map -----------------------------------------------------------------------

def _map_chunk(args) -> bytes:
    """Fingerprints (16 bytes each, concatenated) for one chunk of same-order records."""
    n, records, exact = args
    if exact or n > MAX_BATCH_ORDER:
        encs = [canonical_encode(alpha_charpoly(parse_graph6(bytes(r)))) for r in records]
    else:
        table = coefficient_table(adjacency_from_graph6(records, n))
        encs = [encode_rows(rows) for rows in table.tolist()]
    return b"".join(fingerprint_bytes(e) for e in encs)


# -- census --------------------------------------------------------------------

def run_census(source: Iterable[bytes | str] | str | Path, *, threads: int = 1,
               chunk_size: int = DEFAULT_CHUNK, exact: bool = False,
               progress: bool = False) -> CensusResult:
    """Group graphs by their exact A_alpha-characteristic polynomial.

    ``source`` is an iterable of graph6 lines or a path (``-`` for stdin).
    ``exact`` forces the per-graph Berkowitz path for the map phase.
    """
    if threads < 1:
        raise ValueError("threads must be >= 1")
    if isinstance(source, (str, Path)):
        with open_graph6(source) as fh:
            return run_census(fh, threads=threads, chunk_size=chunk_size, exact=exact,
                              progress=progress)

    records = read_graph6_lines(source)
    first = next(records, None)
    if first is None:
        raise CensusInputError("empty input")
    n = _order_of(*first)
    records = _prepend(first, records)

    kept: list[np.ndarray] = []
    fps: list[bytes] = []
    seen = 0

    def jobs():
        for chunk in _chunks(records, chunk_size):
            arr = _check_chunk(chunk, n)
            kept.append(arr)
            yield n, arr, exact

    if threads == 1:
        results = map(_map_chunk, jobs())
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=threads)
        results = pool.map(_map_chunk, jobs())
    try:
        for fp in results:
            fps.append(fp)
            before = seen
            seen += len(fp) // 16
            if progress and seen // PROGRESS_EVERY > before // PROGRESS_EVERY:
                log.info("census n=%d: %d records", n, seen)
    finally:
        if pool is not None:
            pool.shutdown()

    lines = np.concatenate(kept) if len(kept) > 1 else kept[0]
    digests = np.frombuffer(b"".join(fps), dtype=np.uint8).reshape(-1, 16)
    return _reduce(n, lines, digests)


def _prepend(first, rest):
    yield first
    yield from rest


def _reduce(n: int, lines: np.ndarray, digests: np.ndarray) -> CensusResult:
    total = len(lines)
    keys = digests.view(">u8").reshape(-1, 2)
    order = np.lexsort((keys[:, 1], keys[:, 0]))
    sk = keys[order]
    starts = np.flatnonzero(np.r_[True, (sk[1:] != sk[:-1]).any(axis=1)])
    sizes = np.diff(np.r_[starts, total])

    distinct = int(np.sum(sizes == 1))
    families = []
    for s, size in zip(starts[sizes > 1], sizes[sizes > 1]):
        groups: dict[bytes, list[str]] = {}
        polys: dict[bytes, BiPoly] = {}
        for idx in order[s:s + size]:
            rec = lines[idx].tobytes()
            g = parse_graph6(rec)
            p = alpha_charpoly(g)
            enc = canonical_encode(p)
            if fingerprint_bytes(enc) != digests[idx].tobytes():
                raise ArithmeticError(f"batched and exact polynomials differ for {rec.decode()}")
            groups.setdefault(enc, []).append(rec.decode())
            polys[enc] = p
        distinct += len(groups)
        for enc, members in groups.items():
            if len(members) > 1:
                families.append(MateFamily(polys[enc], tuple(sorted(members))))
    families.sort(key=lambda f: (-len(f.members), f.members[0]))
    for fam in families:
        verify_family(fam)
    with_mate = sum(len(f.members) for f in families)
    max_family = max((len(f.members) for f in families), default=1)
    report = CensusReport(n, total, distinct, with_mate, max_family)
    return CensusResult(report, tuple(families))


def verify_family(fam: MateFamily):
    """Members must share the decoded invariants and be pairwise non-isomorphic."""
    graphs = [parse_graph6(m) for m in fam.members]
    dec = decode_invariants(fam.poly)
    for m, g in zip(fam.members, graphs):
        c = basic_counts(g)
        if (c.n, c.m, c.sum_d2, c.sum_d3, c.triangle_count) != (dec.n, dec.m, dec.sum_d2,
                                                                 dec.sum_d3, dec.t):
            raise ArithmeticError(f"{m} disagrees with the invariants decoded from its polynomial")
    for (m1, g1), (m2, g2) in combinations(zip(fam.members, graphs), 2):
        if m1 == m2 or are_isomorphic(g1, g2):
            raise CorruptInputError(f"input repeats a graph: {m1} and {m2} are isomorphic")


# -- tree checks ------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    label: str
    graph6: str
    reason: str


def check_family_mate_free(candidates: Iterable[tuple[str, Graph]],
                           families: Iterable[MateFamily]) -> list[Violation]:
    """Report every candidate graph whose polynomial is shared by an enumerated family.

    Any such family has a member not isomorphic to the candidate, so the
    candidate would have a cospectral mate.
    """
    by_poly = {canonical_encode(f.poly): f for f in families}
    out = []
    for label, g in candidates:
        fam = by_poly.get(canonical_encode(alpha_charpoly(g)))
        if fam is not None:
            out.append(Violation(label, _g6(g), f"shares its polynomial with {list(fam.members)}"))
    return out


def structural_tree_violations(families: Iterable[MateFamily]) -> list[Violation]:
    """Family members that are starlike or double starlike trees."""
    out = []
    for fam in families:
        for m in fam.members:
            g = parse_graph6(m)
            if is_starlike(g):
                out.append(Violation("starlike", m, "starlike tree inside a cospectral family"))
            elif is_double_starlike(g):
                out.append(Violation("double starlike", m,
                                     "double starlike tree inside a cospectral family"))
    return out


def _g6(g: Graph) -> str:
    return to_graph6(g).decode()


def families_from_json(items: Iterable[dict]) -> list[MateFamily]:
    return [MateFamily(parse_bipoly(it["polynomial"]), tuple(it["members"])) for it in items]

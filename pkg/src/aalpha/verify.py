"""Per-graph identity checks tying the closed forms to the computed polynomials."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .engine import (alpha_charpoly, alpha_matrix, alpha_weighted_graph, loop_weight_expansion,
                     power_traces, scale_charpoly, special_charpolys, trace_moments)
from .formulas import (CoeffInputs, a_first_four, aalpha_first_four, coeffs_from_traces,
                       decode_invariants, l_first_four, q_first_four)
from .graph import Graph, basic_counts, bipartite_components
from .poly import Poly

TRACE_ALPHAS = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 7))
LOOP_ALPHAS = (Fraction(1, 3), Fraction(2, 5), Fraction(1))
LOOP_MAX_N = 6

IDENTITIES = (
    "first_four", "alpha_zero", "alpha_one", "alpha_half_scaled", "a_coeffs", "l_coeffs",
    "q_coeffs", "q_specialisation", "trace_moments", "trace_coefficients",
    "bipartite_L_eq_Q", "decode_roundtrip", "loop_expansion",
)


def _top(p: Poly, k: int) -> tuple:
    """Coefficients of x^n, x^(n-1), ... x^(n-k+1), zero-padded."""
    n = p.degree
    return tuple(p[n - j] if n - j >= 0 else 0 for j in range(k))


def check_graph(g: Graph, loop_max_n: int = LOOP_MAX_N) -> dict[str, bool | None]:
    """Map identity name to True/False, or None when skipped for this graph."""
    out: dict[str, bool | None] = {}
    counts = basic_counts(g)
    inputs = CoeffInputs.from_counts(counts)
    poly = alpha_charpoly(g)
    sp = special_charpolys(g)
    four = aalpha_first_four(inputs)

    # coefficient(j) is zero beyond x-degree n, where the closed forms must vanish too
    out["first_four"] = all(poly.coefficient(j) == four[j] for j in range(4))
    out["alpha_zero"] = poly.eval_alpha(0) == sp.phiA
    phiD = Poly([1])
    for d in g.degrees:
        phiD = phiD * Poly([-d, 1])
    out["alpha_one"] = poly.eval_alpha(1) == phiD
    out["alpha_half_scaled"] = scale_charpoly(poly.eval_alpha(Fraction(1, 2)), 2) == sp.phiQ
    out["a_coeffs"] = _top(sp.phiA, 4) == a_first_four(counts.m, counts.triangle_count)
    out["l_coeffs"] = _top(sp.phiL, 4) == l_first_four(inputs)
    out["q_coeffs"] = _top(sp.phiQ, 4) == q_first_four(inputs)
    half = tuple(c(Fraction(1, 2)) * 2 ** j for j, c in enumerate(four))
    out["q_specialisation"] = half == q_first_four(inputs)

    ok_traces = ok_coeffs = True
    for a in TRACE_ALPHAS:
        tm = tuple(trace_moments(g, a))
        ok_traces &= tm == tuple(power_traces(alpha_matrix(g, a), 3))
        want = coeffs_from_traces(counts.m, a, *tm)
        got = tuple(poly.coefficient(j)(a) for j in range(4))
        ok_coeffs &= want == got
    out["trace_moments"] = ok_traces
    out["trace_coefficients"] = ok_coeffs

    out["bipartite_L_eq_Q"] = (sp.phiL == sp.phiQ) == bipartite_components(g).is_bipartite
    dec = decode_invariants(poly)
    out["decode_roundtrip"] = ((dec.n, dec.m, dec.sum_d2, dec.sum_d3, dec.t, dec.is_regular)
                               == (counts.n, counts.m, counts.sum_d2, counts.sum_d3,
                                   counts.triangle_count, len(set(counts.degree_sequence)) == 1))
    if g.n <= loop_max_n:
        out["loop_expansion"] = all(
            loop_weight_expansion(alpha_weighted_graph(g, a)) == poly.eval_alpha(a)
            for a in LOOP_ALPHAS)
    else:
        out["loop_expansion"] = None
    return out


@dataclass
class VerifySummary:
    graphs: int = 0
    passed: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    skipped: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not sum(self.failed.values())

    def to_json(self) -> dict:
        return {
            "graphs": self.graphs,
            "ok": self.ok,
            "identities": {name: {"pass": self.passed[name], "fail": self.failed[name],
                                  "skipped": self.skipped[name]} for name in IDENTITIES},
            "failures": self.failures[:50],
        }


def verify_graphs(graphs: Iterable[tuple[str, Graph]], loop_max_n: int = LOOP_MAX_N) -> VerifySummary:
    summary = VerifySummary()
    for label, g in graphs:
        summary.graphs += 1
        for name, res in check_graph(g, loop_max_n).items():
            if res is None:
                summary.skipped[name] += 1
            elif res:
                summary.passed[name] += 1
            else:
                summary.failed[name] += 1
                summary.failures.append({"graph": label, "identity": name})
    return summary

"""Exact characteristic polynomials: integer matrices, the bivariate A_alpha polynomial,
and the loop-weight / scaling / trace identities used to cross-check it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .graph import Graph, WeightedGraph, basic_counts
from .poly import BiPoly, InexactInterpolationError, Poly, interpolate_integer_points

MAX_LOOP_EXPANSION_VERTICES = 16


def berkowitz(M: Sequence[Sequence]) -> list:
    """Coefficients of det(xI - M), highest power first, with no divisions.

    Works over any commutative ring whose elements support ``+``, ``-`` and ``*``.
    """
    n = len(M)
    if n == 0:
        return [1]
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    poly = [1, -M[0][0]]
    for k in range(1, n):
        # leading (k+1)x(k+1) block: A = M[:k, :k], R = M[k, :k], C = M[:k, k]
        R = M[k][:k]
        col = [M[i][k] for i in range(k)]
        toeplitz = [1, -M[k][k]]
        vec = col
        for _ in range(k):
            toeplitz.append(-sum(r * v for r, v in zip(R, vec)))
            vec = [sum(M[i][j] * vec[j] for j in range(k)) for i in range(k)]
        poly = [sum(toeplitz[i - j] * poly[j] for j in range(max(0, i - k - 1), min(i, k) + 1))
                for i in range(k + 2)]
    return poly


def charpoly_int(M: Sequence[Sequence[int]]) -> Poly:
    """det(xI - M) as a :class:`Poly` in x (lowest power first)."""
    return Poly(reversed(berkowitz(M)))


def charpoly_rational(M: Sequence[Sequence]) -> Poly:
    return Poly(reversed(berkowitz([[Fraction(v) for v in row] for row in M])))


def alpha_matrix_int(g: Graph, a: int) -> list[list[int]]:
    """a*D + (1-a)*A for an integer ``a``."""
    d = g.degrees
    off = 1 - a
    return [[a * d[i] if i == j else off * (row >> j & 1) for j in range(g.n)]
            for i, row in enumerate(g.adj)]


def alpha_matrix(g: Graph, a) -> list[list[Fraction]]:
    a = Fraction(a)
    d = g.degrees
    return [[a * d[i] if i == j else (1 - a) * (row >> j & 1) for j in range(g.n)]
            for i, row in enumerate(g.adj)]


def alpha_charpoly(g: Graph, nodes: Sequence[int] | None = None) -> BiPoly:
    """det(xI - A_alpha(G)) with exact integer coefficients in x and alpha.

    Evaluates at integer alpha nodes (default 0..n), takes the integer
    characteristic polynomial at each, and interpolates every x-coefficient.
    """
    n = g.n
    nodes = list(range(n + 1)) if nodes is None else list(nodes)
    if len(nodes) < n + 1:
        raise ValueError(f"need at least {n + 1} interpolation nodes")
    values = [berkowitz(alpha_matrix_int(g, a)) for a in nodes]
    acoeffs = []
    for j in range(n + 1):
        c = interpolate_integer_points([(a, v[j]) for a, v in zip(nodes, values)], degree=n)
        if c.degree > j:
            raise InexactInterpolationError(f"alpha-degree {c.degree} of c_{j} exceeds {j}")
        acoeffs.append(c)
    return BiPoly(acoeffs)


@dataclass(frozen=True)
class SpecialCharpolys:
    phiA: Poly
    phiL: Poly
    phiQ: Poly


def special_charpolys(g: Graph) -> SpecialCharpolys:
    return SpecialCharpolys(
        phiA=charpoly_int(g.adjacency_matrix()),
        phiL=charpoly_int(g.laplacian()),
        phiQ=charpoly_int(g.signless_laplacian()),
    )


def scale_charpoly(p: Poly, k) -> Poly:
    """phi(kM) from phi(M): the coefficient of x^(n-j) picks up k^j."""
    n = p.degree
    if n < 0 or p[n] != 1:
        raise ValueError("scale_charpoly expects a monic polynomial")
    return Poly(c * k ** (n - i) for i, c in enumerate(p.coeffs))


def weighted_charpoly(wg: WeightedGraph) -> Poly:
    """Direct characteristic polynomial of the loaded weighted adjacency matrix."""
    return charpoly_rational(wg.matrix())


def loop_weight_expansion(wg: WeightedGraph) -> Poly:
    """phi(A(G[h])) assembled as sum over vertex subsets S of (-1)^|S| prod(h_S) phi(A(G - S)).

    Exponential in n by construction; a verification oracle only.
    """
    n = wg.n
    if n > MAX_LOOP_EXPANSION_VERTICES:
        raise ValueError(f"loop-weight expansion limited to {MAX_LOOP_EXPANSION_VERTICES} vertices")
    bare = wg.without_loops()
    total = Poly()
    for k in range(n + 1):
        for subset in combinations(range(n), k):
            h = Fraction(1)
            for r in subset:
                h *= wg.loops[r]
            if h == 0:
                continue
            term = weighted_charpoly(bare.delete(subset)).scale(h)
            total = total - term if k % 2 else total + term
    return total


def alpha_weighted_graph(g: Graph, a) -> WeightedGraph:
    """Edges weighted 1 - a with a loop of weight a*d_i at each vertex, so A(.) = A_a(G)."""
    a = Fraction(a)
    if a == 1:
        # all edge weights would vanish; keep the loops only
        return WeightedGraph(g.n, {}, tuple(a * d for d in g.degrees))
    return WeightedGraph.from_graph(g, weight=1 - a, loops=[a * d for d in g.degrees])


@dataclass(frozen=True)
class TraceMoments:
    t1: Fraction
    t2: Fraction
    t3: Fraction

    def __iter__(self):
        return iter((self.t1, self.t2, self.t3))


def trace_moments(g: Graph, a) -> TraceMoments:
    """tr(A_a), tr(A_a^2), tr(A_a^3) from edge, degree-power and triangle counts."""
    a = Fraction(a)
    c = basic_counts(g)
    b = 1 - a
    return TraceMoments(
        t1=2 * a * c.m,
        t2=2 * b * b * c.m + a * a * c.sum_d2,
        t3=a ** 3 * c.sum_d3 + 3 * a * b * b * c.sum_d2 + 6 * b ** 3 * c.triangle_count,
    )


def power_traces(M: Sequence[Sequence], kmax: int) -> list:
    """[tr(M), tr(M^2), ..., tr(M^kmax)] by repeated multiplication."""
    n = len(M)
    P = [list(row) for row in M]
    out = []
    for k in range(kmax):
        out.append(sum(P[i][i] for i in range(n)))
        if k + 1 < kmax:
            P = [[sum(P[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
    return out

"""Generators for the named graph families and the flat family-spec grammar.

Spec strings: ``P:n``, ``C:n``, ``K:n``, ``K:a,b``, ``F:n``, ``W:n``,
``H:p,n,q`` (double starlike tree) and ``S:l1,l2,...`` (starlike tree legs).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import MAX_VERTICES, Graph


class FamilySpecError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...]

    def __str__(self):
        return f"{self.kind}:{','.join(map(str, self.params))}"


_ARITY = {"P": (1,), "C": (1,), "K": (1, 2), "F": (1,), "W": (1,), "H": (3,)}


def parse_family_spec(text: str) -> FamilySpec:
    kind, sep, rest = text.strip().partition(":")
    kind = kind.upper()
    if not sep or kind not in (*_ARITY, "S"):
        raise FamilySpecError(f"unknown family spec {text!r}")
    try:
        params = tuple(int(p) for p in rest.split(","))
    except ValueError:
        raise FamilySpecError(f"non-integer parameter in {text!r}") from None
    if kind != "S" and len(params) not in _ARITY[kind]:
        raise FamilySpecError(f"wrong number of parameters in {text!r}")
    return FamilySpec(kind, params)


def path(n: int) -> Graph:
    _check(n >= 1, f"P_{n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    _check(n >= 3, f"C_{n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    _check(n >= 1, f"K_{n}")
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << i) for i in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    _check(a >= 1 and b >= 1, f"K_{{{a},{b}}}")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def friendship(n: int) -> Graph:
    """``n`` triangles sharing vertex 0."""
    _check(n >= 1, f"F_{n}")
    edges = []
    for k in range(n):
        u, v = 2 * k + 1, 2 * k + 2
        edges += [(0, u), (0, v), (u, v)]
    return Graph.from_edges(2 * n + 1, edges)


def wheel(n: int) -> Graph:
    """Cycle on vertices 1..n plus hub 0."""
    _check(n >= 3, f"W_{n}")
    edges = [(0, i) for i in range(1, n + 1)]
    edges += [(i, i % n + 1) for i in range(1, n + 1)]
    return Graph.from_edges(n + 1, edges)


def double_starlike(p: int, n: int, q: int) -> Graph:
    """H(p,n,q): path 0..n-1 with p pendants on vertex 0 and q on vertex n-1."""
    _check(p >= 1 and n >= 2 and q >= 1, f"H({p},{n},{q})")
    edges = [(i, i + 1) for i in range(n - 1)]
    nxt = n
    for hub, count in ((0, p), (n - 1, q)):
        for _ in range(count):
            edges.append((hub, nxt))
            nxt += 1
    return Graph.from_edges(n + p + q, edges)


def starlike(legs) -> Graph:
    """Center 0 with paths of the given lengths hanging off it."""
    legs = tuple(legs)
    _check(len(legs) >= 1 and all(l >= 1 for l in legs), f"S{legs}")
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def make_family(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_family_spec(spec)
    check_size(spec)
    p = spec.params
    builders = {
        "P": lambda: path(*p),
        "C": lambda: cycle(*p),
        "K": lambda: complete(*p) if len(p) == 1 else complete_bipartite(*p),
        "F": lambda: friendship(*p),
        "W": lambda: wheel(*p),
        "H": lambda: double_starlike(*p),
        "S": lambda: starlike(p),
    }
    return builders[spec.kind]()


def _check(ok: bool, name: str):
    if not ok:
        raise FamilySpecError(f"parameters out of range for {name}")


def starlike_trees(n: int):
    """All starlike trees on ``n`` vertices, one per multiset of leg lengths (at least three legs)."""

    def partitions(total, largest):
        if total == 0:
            yield ()
            return
        for first in range(min(total, largest), 0, -1):
            for rest in partitions(total - first, first):
                yield (first,) + rest

    for legs in partitions(n - 1, n - 1):
        if len(legs) >= 3:
            yield legs, starlike(legs)


def double_starlike_trees(n: int):
    """All H(p,k,q) on ``n`` vertices with p, q >= 2 (so both ends have degree > 2), p <= q."""
    for k in range(2, n - 3):
        for p in range(2, n - k - 1):
            q = n - k - p
            if q >= p:
                yield (p, k, q), double_starlike(p, k, q)


def _vertex_count(spec: FamilySpec) -> int:
    p = spec.params
    return {
        "P": lambda: p[0], "C": lambda: p[0], "K": lambda: sum(p),
        "F": lambda: 2 * p[0] + 1, "W": lambda: p[0] + 1,
        "H": lambda: sum(p), "S": lambda: 1 + sum(p),
    }[spec.kind]()


def check_size(spec: FamilySpec):
    if _vertex_count(spec) > MAX_VERTICES:
        raise FamilySpecError(f"{spec} would have more than {MAX_VERTICES} vertices")

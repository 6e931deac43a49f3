"""Isomorphism testing by colour refinement and individualisation (small graphs only)."""

from __future__ import annotations

from .graph import Graph


def _refine(nbrs: list[list[int]], colors: list[int]) -> list[int]:
    """Coarsest equitable refinement; colour ids are canonical for the union being refined."""
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in nbrs[v]))) for v in range(len(nbrs))]
        ids = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [ids[s] for s in sigs]
        if len(ids) == len(set(colors)):
            return new
        colors = new


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count or sorted(g.degrees) != sorted(h.degrees):
        return False
    n = g.n
    # disjoint union: g on 0..n-1, h on n..2n-1
    nbrs = [[w for w in range(n) if g.adj[v] >> w & 1] for v in range(n)]
    nbrs += [[n + w for w in range(n) if h.adj[v] >> w & 1] for v in range(n)]
    return _search(g, h, nbrs, _refine(nbrs, [0] * (2 * n)))


def _search(g: Graph, h: Graph, nbrs, colors) -> bool:
    n = g.n
    left, right = colors[:n], colors[n:]
    if sorted(left) != sorted(right):
        return False
    if len(set(left)) == n:
        where = {c: v for v, c in enumerate(right)}
        perm = [where[c] for c in left]
        return g.relabel(perm) == h
    counts: dict[int, int] = {}
    for c in left:
        counts[c] = counts.get(c, 0) + 1
    target = min((k, c) for c, k in counts.items() if k > 1)[1]
    v = left.index(target)
    fresh = max(colors) + 1
    for w in range(n):
        if right[w] != target:
            continue
        trial = list(colors)
        trial[v] = trial[n + w] = fresh
        if _search(g, h, nbrs, _refine(nbrs, trial)):
            return True
    return False

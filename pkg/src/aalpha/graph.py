"""Simple graphs as bit rows, the graph6 wire format, and structural counts."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

MAX_VERTICES = 64


class Graph6Error(ValueError):
    """A malformed graph6 record.

    ``kind`` is one of ``"length"``, ``"char"``, ``"padding"``, ``"too_large"``
    or ``"size"``; ``offset`` is the byte offset of the problem within the record.
    """

    def __init__(self, kind: str, offset: int, message: str):
        super().__init__(f"{message} (byte {offset})")
        self.kind = kind
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``n`` vertices; ``adj[i]`` has bit ``j`` set iff ij is an edge."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("need one adjacency row per vertex")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {i} has bits beyond vertex {self.n - 1}")
            if row >> i & 1:
                raise ValueError(f"loop at vertex {i}")
            for j in _bits(row):
                if not self.adj[j] >> i & 1:
                    raise ValueError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.adj[i]) if i < j]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def adjacency_matrix(self) -> list[list[int]]:
        return [[row >> j & 1 for j in range(self.n)] for row in self.adj]

    def degree_matrix(self) -> list[list[int]]:
        d = self.degrees
        return [[d[i] if i == j else 0 for j in range(self.n)] for i in range(self.n)]

    def laplacian(self) -> list[list[int]]:
        d = self.degrees
        return [[d[i] if i == j else -(row >> j & 1) for j in range(self.n)]
                for i, row in enumerate(self.adj)]

    def signless_laplacian(self) -> list[list[int]]:
        d = self.degrees
        return [[d[i] if i == j else row >> j & 1 for j in range(self.n)]
                for i, row in enumerate(self.adj)]

    def induced(self, keep: Iterable[int]) -> Graph:
        keep = list(keep)
        index = {v: k for k, v in enumerate(keep)}
        rows = []
        for v in keep:
            rows.append(sum(1 << index[w] for w in _bits(self.adj[v]) if w in index))
        return Graph(len(keep), tuple(rows))

    def relabel(self, perm: list[int]) -> Graph:
        """Graph whose vertex ``perm[v]`` plays the role of ``v``."""
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            rows[perm[v]] = sum(1 << perm[w] for w in _bits(row))
        return Graph(self.n, tuple(rows))

    def disjoint_union(self, other: Graph) -> Graph:
        shift = self.n
        return Graph(self.n + other.n, self.adj + tuple(row << shift for row in other.adj))


def _bits(row: int):
    while row:
        low = row & -row
        yield low.bit_length() - 1
        row ^= low


# -- graph6 -----------------------------------------------------------------

def parse_graph6(line: bytes | str) -> Graph:
    """Decode one graph6 record (no ``>>graph6<<`` header, no newline)."""
    data = line.encode("ascii", "replace") if isinstance(line, str) else bytes(line)
    if not data:
        raise Graph6Error("length", 0, "empty graph6 record")
    for pos, ch in enumerate(data):
        if not 63 <= ch <= 126:
            raise Graph6Error("char", pos, f"character {ch!r} outside 63..126")
    if data[0] != 126:
        n, start = data[0] - 63, 1
    elif len(data) >= 4 and data[1] != 126:
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        start = 4
        if n < 63:
            raise Graph6Error("length", 0, f"non-canonical long size prefix for n={n}")
    else:
        raise Graph6Error("length", 0, "truncated or unsupported size prefix")
    if n > MAX_VERTICES:
        raise Graph6Error("too_large", 0, f"n={n} exceeds {MAX_VERTICES}")
    if n == 0:
        raise Graph6Error("length", 0, "graph with zero vertices")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[start:]
    if len(body) != nbytes:
        raise Graph6Error("size", start + min(len(body), nbytes),
                          f"expected {nbytes} adjacency bytes for n={n}, got {len(body)}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] - 63) >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if nbits % 6:
        pad = (1 << (6 - nbits % 6)) - 1
        if (body[-1] - 63) & pad:
            raise Graph6Error("padding", start + nbytes - 1, "nonzero padding bits")
    return Graph(n, tuple(rows))


def to_graph6(g: Graph) -> bytes:
    n = g.n
    if n <= 62:
        head = bytes([n + 63])
    else:
        head = bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    out = bytearray()
    acc = nb = 0
    for j in range(1, n):
        for i in range(j):
            acc = acc << 1 | (g.adj[i] >> j & 1)
            nb += 1
            if nb == 6:
                out.append(acc + 63)
                acc = nb = 0
    if nb:
        out.append((acc << (6 - nb)) + 63)
    return head + bytes(out)


def read_graph6_lines(stream: Iterable[bytes | str]):
    """Yield ``(line_number, record)`` for non-blank lines, skipping a ``>>graph6<<`` header."""
    for lineno, raw in enumerate(stream, 1):
        rec = raw.strip() if isinstance(raw, bytes) else raw.strip().encode("ascii", "replace")
        if rec.startswith(b">>graph6<<"):
            rec = rec[len(b">>graph6<<"):]
        if rec:
            yield lineno, rec


# -- structural counts -------------------------------------------------------

@dataclass(frozen=True)
class BasicCounts:
    n: int
    m: int
    degree_sequence: tuple[int, ...]
    sum_d2: int
    sum_d3: int
    triangle_count: int


def triangle_count(g: Graph) -> int:
    t = 0
    for i in range(g.n):
        higher_i = g.adj[i] >> (i + 1) << (i + 1)
        for j in _bits(higher_i):
            t += (g.adj[i] & g.adj[j] & ~((1 << (j + 1)) - 1)).bit_count()
    return t


def basic_counts(g: Graph) -> BasicCounts:
    d = g.degrees
    return BasicCounts(
        n=g.n,
        m=sum(d) // 2,
        degree_sequence=d,
        sum_d2=sum(x * x for x in d),
        sum_d3=sum(x ** 3 for x in d),
        triangle_count=triangle_count(g),
    )


@dataclass(frozen=True)
class BipartiteInfo:
    is_bipartite: bool
    component_count: int


def bipartite_components(g: Graph) -> BipartiteInfo:
    color = [-1] * g.n
    bipartite = True
    components = 0
    for s in range(g.n):
        if color[s] >= 0:
            continue
        components += 1
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in _bits(g.adj[v]):
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    bipartite = False
    return BipartiteInfo(bipartite, components)


def is_connected(g: Graph) -> bool:
    return bipartite_components(g).component_count == 1


def integer_determinant(M: list[list[int]]) -> int:
    """Bareiss fraction-free elimination; every division is exact."""
    a = [list(row) for row in M]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def spanning_tree_count(g: Graph) -> int:
    """Matrix-tree theorem: the determinant of L with row and column 0 removed."""
    if g.n == 1:
        return 1
    L = g.laplacian()
    return integer_determinant([row[1:] for row in L[1:]])


def is_tree(g: Graph) -> bool:
    return g.edge_count == g.n - 1 and is_connected(g)


def is_starlike(g: Graph) -> bool:
    return is_tree(g) and sum(d > 2 for d in g.degrees) == 1


def is_double_starlike(g: Graph) -> bool:
    return is_tree(g) and sum(d > 2 for d in g.degrees) == 2


# -- weighted graphs ---------------------------------------------------------

@dataclass(frozen=True)
class WeightedGraph:
    """Edge-weighted graph with optional per-vertex loop weights; weights are exact rationals."""

    n: int
    weights: Mapping[frozenset, Fraction]
    loops: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        clean = {}
        for pair, w in self.weights.items():
            pair = frozenset(pair)
            if len(pair) != 2 or not all(0 <= v < self.n for v in pair):
                raise ValueError(f"bad vertex pair {sorted(pair)}")
            w = Fraction(w)
            if w == 0:
                raise ValueError(f"zero weight on edge {sorted(pair)}")
            clean[pair] = w
        object.__setattr__(self, "weights", clean)
        loops = tuple(Fraction(h) for h in self.loops) or (Fraction(0),) * self.n
        if len(loops) != self.n:
            raise ValueError("need one loop weight per vertex")
        object.__setattr__(self, "loops", loops)

    @classmethod
    def from_graph(cls, g: Graph, weight=1, loops=()) -> WeightedGraph:
        return cls(g.n, {frozenset(e): Fraction(weight) for e in g.edges()}, tuple(loops))

    def weight(self, u: int, v: int) -> Fraction:
        return self.weights.get(frozenset((u, v)), Fraction(0))

    def without_loops(self) -> WeightedGraph:
        return WeightedGraph(self.n, self.weights)

    def delete(self, removed: Iterable[int]) -> WeightedGraph:
        """The weighted subgraph left after deleting ``removed`` with all incident edges."""
        gone = set(removed)
        keep = [v for v in range(self.n) if v not in gone]
        index = {v: k for k, v in enumerate(keep)}
        weights = {frozenset(index[v] for v in pair): w
                   for pair, w in self.weights.items() if not pair & gone}
        return WeightedGraph(len(keep), weights, tuple(self.loops[v] for v in keep))

    def matrix(self) -> list[list[Fraction]]:
        """Adjacency matrix with loop weights on the diagonal."""
        return [[self.loops[i] if i == j else self.weight(i, j) for j in range(self.n)]
                for i in range(self.n)]


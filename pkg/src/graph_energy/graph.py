"""Simple undirected graphs: data model, I/O, generators and enumeration.

Vertices are ``0 .. n-1``. Edges are stored as a sorted tuple of pairs
``(u, v)`` with ``u < v``; edge index ``k`` refers to ``edges[k]``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DomainError, GraphFormatError

MAX_ENUMERATION_N = 8


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    Use :meth:`from_edges` to build one from unsorted or unordered pairs;
    the plain constructor insists on the canonical edge form.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"vertex count must be non-negative, got {self.n}")
        edges = tuple(tuple(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise GraphFormatError(f"edge ({u}, {v}) is not canonical for n={self.n}")
        for a, b in zip(edges, edges[1:]):
            if a >= b:
                raise GraphFormatError(f"edges not strictly sorted near {a}, {b}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Canonicalize ``edges`` (orient, sort) and reject loops/duplicates."""
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex index out of range in edge ({u}, {v}) for n={n}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise GraphFormatError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, tuple(sorted(seen)))

    @classmethod
    def from_adjacency(cls, adjacency) -> "Graph":
        a = np.asarray(adjacency)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphFormatError("adjacency matrix must be square")
        if not np.array_equal(a, a.T) or np.any(np.diag(a) != 0):
            raise GraphFormatError("adjacency matrix must be symmetric with zero diagonal")
        iu, ju = np.nonzero(np.triu(a, 1))
        return cls(a.shape[0], tuple(zip(iu.tolist(), ju.tolist())))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=float)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        a.setflags(write=False)
        return a

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nbrs = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=int)
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        d.setflags(write=False)
        return d

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: k for k, e in enumerate(self.edges)}

    def is_connected(self) -> bool:
        return self.n <= 1 or len(components(self)[0]) == self.n

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class EdgeSubset:
    """Spanning subgraph H of ``host``: bit ``k`` of ``mask`` keeps ``host.edges[k]``."""

    host: Graph
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.host.m:
            raise DomainError(f"mask {self.mask:#x} does not fit {self.host.m} edges")

    @classmethod
    def full(cls, host: Graph) -> "EdgeSubset":
        return cls(host, (1 << host.m) - 1)

    @classmethod
    def from_edges(cls, host: Graph, edges: Iterable[Sequence[int]]) -> "EdgeSubset":
        mask = 0
        for u, v in edges:
            e = (min(u, v), max(u, v))
            if e not in host.edge_index:
                raise DomainError(f"{e} is not an edge of the host graph")
            mask |= 1 << host.edge_index[e]
        return cls(host, mask)

    @property
    def indices(self) -> list[int]:
        return [k for k in range(self.host.m) if self.mask >> k & 1]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [self.host.edges[k] for k in self.indices]

    def as_graph(self) -> Graph:
        return Graph(self.host.n, tuple(self.edges))

    def degrees(self) -> np.ndarray:
        return self.as_graph().degrees

    def __len__(self):
        return bin(self.mask).count("1")


# ---------------------------------------------------------------- edge lists

def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format: a vertex count, then one ``u v`` pair per line.

    Blank lines and lines starting with ``#`` are ignored. Errors carry the
    1-based line number.
    """
    n = None
    edges = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer token in {line!r}") from None
        if n is None:
            if len(values) != 1 or values[0] < 0:
                raise GraphFormatError(f"line {lineno}: expected a vertex count, got {line!r}")
            n = values[0]
            continue
        if len(values) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = values
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {lineno}: vertex index out of range for n={n}")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge {e} (first on line {seen[e]})")
        seen[e] = lineno
        edges.append(e)
    if n is None:
        raise GraphFormatError("empty document: missing vertex count")
    return Graph(n, tuple(sorted(edges)))


def format_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges]) + "\n"


# -------------------------------------------------------------------- graph6

_G6_HEADER = ">>graph6<<"


def _g6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise DomainError(f"graph6 cannot encode n={n}")


def to_graph6(g: Graph) -> str:
    """Encode ``g`` as a graph6 line (no header, no newline)."""
    adj = set(g.edges)
    bits = [1 if (i, j) in adj else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _g6_size(g.n) + body


def from_graph6(line: str | bytes) -> Graph:
    """Decode one graph6 line; the optional ``>>graph6<<`` header is accepted."""
    if isinstance(line, bytes):
        line = line.decode("ascii", errors="replace")
    s = line.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"graph6 byte {ord(ch)} out of range at position {pos}")
    vals = [ord(c) - 63 for c in s]
    if vals[0] != 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 2 and vals[1] != 63:
        if len(vals) < 4:
            raise GraphFormatError("truncated graph6 size field")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    else:
        if len(vals) < 8:
            raise GraphFormatError("truncated graph6 size field")
        n = 0
        for x in vals[2:8]:
            n = (n << 6) | x
        body = vals[8:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphFormatError(
            f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}"
        )
    bits = [(x >> s) & 1 for x in body for s in range(5, -1, -1)]
    if any(bits[nbits:]):
        raise GraphFormatError("nonzero padding bits in graph6 body")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, tuple(sorted(edges)))


# ------------------------------------------------------------------ families

def path(n: int) -> Graph:
    _check_positive("path", n)
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise DomainError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    """S_n: one centre joined to ``n - 1`` leaves (``n`` vertices total)."""
    _check_positive("star", n)
    return Graph(n, tuple((0, i) for i in range(1, n)))


def complete(n: int) -> Graph:
    _check_positive("complete", n)
    return Graph(n, tuple(combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with sides ``0..a-1`` and ``a..a+b-1``."""
    _check_positive("complete_bipartite", a, b)
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def dandelion(n: int) -> Graph:
    """D_n on ``3n + 1`` vertices.

    Vertex 0 is the hub, joined to spokes ``1..n``. Spoke ``s`` carries the
    two leaves ``n + s`` and ``2n + s``.
    """
    _check_positive("dandelion", n)
    edges = []
    for s in range(1, n + 1):
        edges += [(0, s), (s, n + s), (s, 2 * n + s)]
    return Graph.from_edges(3 * n + 1, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges]
        offset += g.n
    return Graph.from_edges(offset, edges)


FAMILIES = {
    "path": path,
    "cycle": cycle,
    "star": star,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "dandelion": dandelion,
}


def family(kind: str, *params: int) -> Graph:
    try:
        build = FAMILIES[kind]
    except KeyError:
        raise DomainError(f"unknown family {kind!r}; choose from {sorted(FAMILIES)}") from None
    return build(*params)


def _check_positive(kind, *params):
    for p in params:
        if not isinstance(p, (int, np.integer)) or p < 1:
            raise DomainError(f"{kind} parameters must be positive integers, got {params}")


# --------------------------------------------------------------- enumeration

def vertex_pairs(n: int) -> list[tuple[int, int]]:
    """Upper-triangle pairs in enumeration bit order: bit k <-> pairs[k]."""
    return list(combinations(range(n), 2))


def _check_enum(n):
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise DomainError(f"enumeration supports 1 <= n <= {MAX_ENUMERATION_N}, got {n}")


def graph_from_index(n: int, index: int) -> Graph:
    pairs = vertex_pairs(n)
    return Graph(n, tuple(sorted(p for k, p in enumerate(pairs) if index >> k & 1)))


def enumerate_graphs(n: int, connected_only: bool = False) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices, in upper-triangle bitmask order."""
    _check_enum(n)
    pairs = vertex_pairs(n)
    for index in range(1 << len(pairs)):
        g = Graph(n, tuple(sorted(p for k, p in enumerate(pairs) if index >> k & 1)))
        if connected_only and not g.is_connected():
            continue
        yield g


def count_graphs(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def adjacency_batch(n: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Adjacency matrices for enumeration indices ``start..stop-1``, shape (B, n, n)."""
    _check_enum(n)
    pairs = vertex_pairs(n)
    total = 1 << len(pairs)
    stop = total if stop is None else min(stop, total)
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((len(idx), n, n), dtype=np.float64)
    for k, (i, j) in enumerate(pairs):
        bit = ((idx >> k) & 1).astype(np.float64)
        out[:, i, j] = bit
        out[:, j, i] = bit
    return out


def iter_adjacency_chunks(n: int, chunk: int = 1 << 16) -> Iterator[tuple[int, np.ndarray]]:
    total = count_graphs(n)
    for start in range(0, total, chunk):
        yield start, adjacency_batch(n, start, start + chunk)


def connected_batch(adjacency: np.ndarray) -> np.ndarray:
    """Boolean connectivity flag for each matrix of a (B, n, n) stack."""
    b, n, _ = adjacency.shape
    if n <= 1:
        return np.ones(b, dtype=bool)
    reach = ((adjacency + np.eye(n)) > 0).astype(np.float64)
    steps = 1
    while steps < n - 1:
        reach = (reach @ reach > 0).astype(np.float64)
        steps *= 2
    return reach[:, 0, :].all(axis=1)


# ---------------------------------------------------------------- structure

def components(g: Graph, mask: int | None = None) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex.

    With ``mask``, only the edges selected by it are traversed.
    """
    if mask is None:
        nbrs = g.neighbors
    else:
        lists = [[] for _ in range(g.n)]
        for k, (u, v) in enumerate(g.edges):
            if mask >> k & 1:
                lists[u].append(v)
                lists[v].append(u)
        nbrs = lists
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            x = queue.popleft()
            for y in nbrs[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


@dataclass(frozen=True)
class Component:
    vertices: tuple[int, ...]
    is_regular: bool
    is_bipartite: bool
    is_complete_bipartite: bool


def _two_coloring(vertices, nbrs):
    color = {vertices[0]: 0}
    queue = deque([vertices[0]])
    while queue:
        x = queue.popleft()
        for y in nbrs[x]:
            if y not in color:
                color[y] = 1 - color[x]
                queue.append(y)
            elif color[y] == color[x]:
                return None
    return color


def classify_components(g: Graph, h: EdgeSubset | None = None) -> list[Component]:
    """Regularity and bipartiteness of each component of H (default H = G).

    Vertices isolated in H are not reported.
    """
    sub = g if h is None else h.as_graph()
    deg = sub.degrees
    out = []
    for comp in components(sub):
        if len(comp) == 1:
            continue
        color = _two_coloring(comp, sub.neighbors)
        regular = len({int(deg[v]) for v in comp}) == 1
        biclique = False
        if color is not None:
            side = sum(color[v] for v in comp)
            m_comp = sum(int(deg[v]) for v in comp) // 2
            biclique = m_comp == side * (len(comp) - side)
        out.append(Component(tuple(comp), regular, color is not None, biclique))
    return out


def is_biclique_union(g: Graph) -> bool:
    """True when every non-trivial component of ``g`` is complete bipartite."""
    return all(c.is_complete_bipartite for c in classify_components(g))


def spanning_tree(g: Graph) -> EdgeSubset:
    """BFS spanning forest of ``g`` as an edge subset."""
    seen = [False] * g.n
    mask = 0
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors[x]:
                if not seen[y]:
                    seen[y] = True
                    mask |= 1 << g.edge_index[(min(x, y), max(x, y))]
                    queue.append(y)
    return EdgeSubset(g, mask)

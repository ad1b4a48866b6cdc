"""Simple undirected graphs, DIMACS-style I/O, degeneracy and cycle counts."""
from __future__ import annotations

import heapq
from functools import cached_property

import numpy as np

from .. import kernels
from ..errors import EnumerationCapExceeded, ParseError


class Graph:
    """Simple graph on vertices 0..n-1 with indexed edges.

    Edges keep their input order (that order is the coloring order and the
    output order); each is stored as (min, max).
    """

    def __init__(self, n, edges):
        self.n = int(n)
        norm = []
        index = {}
        for k, (a, b) in enumerate(edges):
            a, b = int(a), int(b)
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError(f"edge {k} ({a}, {b}) has a vertex out of range")
            if a == b:
                raise ValueError(f"edge {k} is a loop at {a}")
            e = (a, b) if a < b else (b, a)
            if e in index:
                raise ValueError(f"edge {k} duplicates edge {index[e]}")
            index[e] = k
            norm.append(e)
        self.edges = tuple(norm)
        self.edge_index = index
        self.adj = [[] for _ in range(self.n)]     # per vertex: list of (neighbor, edge)
        for k, (a, b) in enumerate(self.edges):
            self.adj[a].append((b, k))
            self.adj[b].append((a, k))
        for row in self.adj:
            row.sort()

    @property
    def m(self):
        return len(self.edges)

    def degree(self, v):
        return len(self.adj[v])

    @cached_property
    def max_degree(self):
        return max((len(r) for r in self.adj), default=0)

    def neighbors(self, v):
        return [w for w, _ in self.adj[v]]

    def edge(self, a, b):
        return self.edge_index[(a, b) if a < b else (b, a)]

    def has_edge(self, a, b):
        return ((a, b) if a < b else (b, a)) in self.edge_index

    @cached_property
    def arrays(self):
        """(eu, ev, indptr, nbrs, nbr_edge) as int32 arrays for the kernels."""
        eu = np.array([a for a, _ in self.edges], dtype=np.int32)
        ev = np.array([b for _, b in self.edges], dtype=np.int32)
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        indptr[1:] = np.cumsum([len(r) for r in self.adj])
        nbrs = np.array([w for r in self.adj for w, _ in r], dtype=np.int32)
        nbr_edge = np.array([k for r in self.adj for _, k in r], dtype=np.int32)
        return eu, ev, indptr, nbrs, nbr_edge

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, max_degree={self.max_degree})"


# -- I/O -----------------------------------------------------------------------

def parse_graph(text):
    """``p edge N M`` header, ``e U V`` lines (1-based), ``c`` comment lines."""
    n = m = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "p":
            if n is not None:
                raise ParseError("duplicate 'p' line", lineno)
            if len(tok) != 4 or tok[1] != "edge":
                raise ParseError("expected 'p edge N M'", lineno)
            try:
                n, m = int(tok[2]), int(tok[3])
            except ValueError:
                raise ParseError("N and M must be integers", lineno) from None
        elif tok[0] == "e":
            if n is None:
                raise ParseError("'e' line before 'p edge' header", lineno)
            if len(tok) != 3:
                raise ParseError("expected 'e U V'", lineno)
            try:
                a, b = int(tok[1]) - 1, int(tok[2]) - 1
            except ValueError:
                raise ParseError("vertices must be integers", lineno) from None
            if not (0 <= a < n and 0 <= b < n):
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            if a == b:
                raise ParseError("loops are not allowed", lineno)
            e = (a, b) if a < b else (b, a)
            if e in seen:
                raise ParseError("parallel edge", lineno)
            seen.add(e)
            edges.append((e, lineno))
        else:
            raise ParseError(f"unknown line type {tok[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'p edge N M' header", 1)
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    return Graph(n, [e for e, _ in edges])


def load_graph(path):
    with open(path) as fh:
        return parse_graph(fh.read())


def format_graph(g, comment=None):
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {a + 1} {b + 1}" for a, b in g.edges)
    return "\n".join(lines) + "\n"


# -- structure -----------------------------------------------------------------

def degeneracy_order(g):
    """(d, order): repeatedly delete a vertex of minimum current degree.

    d is the largest degree seen at deletion time, which is the degeneracy;
    orienting each edge from the earlier-deleted endpoint gives out-degree <= d.
    """
    deg = [len(r) for r in g.adj]
    removed = [False] * g.n
    heap = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    order = []
    d = 0
    while heap:
        k, v = heapq.heappop(heap)
        if removed[v] or k != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        d = max(d, k)
        for w, _ in g.adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return d, order


def orientation(g, order=None):
    """Arcs (tail, head) pointing away from the earlier-removed endpoint."""
    if order is None:
        _, order = degeneracy_order(g)
    rank = {v: k for k, v in enumerate(order)}
    return [(a, b) if rank[a] < rank[b] else (b, a) for a, b in g.edges]


def cycles_through_edge(g, edge, length, cap=10**7):
    """Exact number of simple cycles with ``length`` edges that contain ``edge``.

    ``edge`` is an edge index or a vertex pair.  Brute-force path counting.
    """
    if isinstance(edge, tuple):
        edge = g.edge(*edge)
    if length < 3:
        return 0
    u, v = g.edges[edge]
    _, _, indptr, nbrs, _ = g.arrays
    count = kernels.count_paths(v, u, length - 1, indptr, nbrs, cap)
    if count < 0:
        raise EnumerationCapExceeded(f"cycle search exceeded {cap} nodes")
    return int(count)


def max_cycles_through_edge(g, length, cap=10**7):
    """g(n) for cycles of the given length: max over edges of cycles_through_edge."""
    return max((cycles_through_edge(g, e, length, cap) for e in range(g.m)), default=0)

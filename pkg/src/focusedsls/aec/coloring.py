"""Edge colorings, 4-availability, bichromatic cycles and cycle resampling."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import kernels


class EdgeColoring:
    """Proper (possibly partial) edge coloring with palette 1..q; 0 = uncolored.

    Keeps a vertex-by-color table so that "the edge of color c at v" is O(1).
    Assigning a color that is already present at an endpoint raises.
    """

    def __init__(self, graph, q, colors=None):
        self.graph = graph
        self.q = int(q)
        self.colors = np.zeros(graph.m, dtype=np.int32)
        self.vc = np.full((graph.n, self.q + 1), -1, dtype=np.int32)
        self._mask = np.zeros(self.q + 1, dtype=np.uint8)
        if colors is not None:
            if len(colors) != graph.m:
                raise ValueError("one color per edge expected")
            for e, c in enumerate(colors):
                if c:
                    self.set(e, int(c))

    def set(self, e, c):
        u, v = self.graph.edges[e]
        old = int(self.colors[e])
        if old == c:
            return
        if c:
            if not 1 <= c <= self.q:
                raise ValueError(f"color {c} outside palette 1..{self.q}")
            for x in (u, v):
                if self.vc[x, c] >= 0:
                    raise ValueError(f"color {c} already used at vertex {x}")
        if old:
            self.vc[u, old] = -1
            self.vc[v, old] = -1
        self.colors[e] = c
        if c:
            self.vc[u, c] = e
            self.vc[v, c] = e

    def uncolor(self, e):
        self.set(e, 0)

    def copy(self):
        other = EdgeColoring.__new__(EdgeColoring)
        other.graph = self.graph
        other.q = self.q
        other.colors = self.colors.copy()
        other.vc = self.vc.copy()
        other._mask = np.zeros(self.q + 1, dtype=np.uint8)
        return other

    def tolist(self):
        return self.colors.tolist()

    def is_complete(self):
        return bool(np.all(self.colors > 0))

    def __getitem__(self, e):
        return int(self.colors[e])

    def __eq__(self, other):
        if not isinstance(other, EdgeColoring):
            return NotImplemented
        return self.graph is other.graph and np.array_equal(self.colors, other.colors)

    __hash__ = None

    def __repr__(self):
        return f"EdgeColoring(q={self.q}, colors={self.tolist()})"


def forbidden_count_bound(graph):
    return 2 * max(graph.max_degree - 1, 0)


def four_available(graph, coloring, edge):
    """Colors that keep the coloring proper and close no bichromatic 4-cycle at ``edge``.

    The edge's current color is ignored.  At most 2(max degree - 1) colors can
    be forbidden; exceeding that means the coloring is corrupt.
    """
    eu, ev, indptr, nbrs, nbr_edge = graph.arrays
    mask = coloring._mask
    count = kernels.forbidden_mask(edge, eu, ev, coloring.colors, coloring.vc,
                                   indptr, nbrs, nbr_edge, mask)
    if count > forbidden_count_bound(graph):
        raise AssertionError(
            f"{count} colors are 4-forbidden for edge {edge}, more than "
            f"2(max degree - 1) = {forbidden_count_bound(graph)}")
    return (np.flatnonzero(mask[1:] == 0) + 1).tolist()


def initial_coloring(graph, q, edge_order=None):
    """Color edges in order, each with its greatest 4-available color."""
    col = EdgeColoring(graph, q)
    for e in (range(graph.m) if edge_order is None else edge_order):
        avail = four_available(graph, col, e)
        if not avail:
            raise ValueError(f"no 4-available color for edge {e}; palette too small")
        col.set(e, avail[-1])
    return col


# -- cycle flaws ---------------------------------------------------------------

def canonical_cycle(vertices):
    """Rotation/reflection of a cycle's vertex sequence that is lexicographically least."""
    vs = tuple(int(v) for v in vertices)
    i = vs.index(min(vs))
    fwd = vs[i:] + vs[:i]
    rev = (fwd[0],) + tuple(reversed(fwd[1:]))
    return min(fwd, rev)


@dataclass(frozen=True, order=True)
class CycleFlaw:
    """An even cycle, ordered by (length, canonical vertex sequence).

    ``edges[k]`` joins ``vertices[k]`` and ``vertices[k + 1]``; the two edges
    kept during resampling are ``edges[0]`` and ``edges[1]``.
    """

    length: int
    vertices: tuple
    edges: tuple = field(compare=False)

    @property
    def e1(self):
        return self.edges[0]

    @property
    def e2(self):
        return self.edges[1]

    @property
    def key(self):
        return (self.length, self.vertices)

    @property
    def edge_set(self):
        return frozenset(self.edges)


def make_flaw(graph, vertices):
    vs = canonical_cycle(vertices)
    L = len(vs)
    edges = tuple(graph.edge(vs[k], vs[(k + 1) % L]) for k in range(L))
    return CycleFlaw(L, vs, edges)


def find_flaws(graph, coloring, restrict_to_edges=None, min_length=6):
    """Bichromatic cycles with at least ``min_length`` edges, sorted by flaw order.

    With ``restrict_to_edges`` only cycles through one of those edges are
    returned; only the two-colored components through them are walked.
    """
    eu, ev, _, _, _ = graph.arrays
    colors, vc = coloring.colors, coloring.vc
    buf = np.empty(graph.m + 2, dtype=np.int32)
    cands = range(graph.m) if restrict_to_edges is None else sorted(set(restrict_to_edges))
    found = {}
    done = set()
    for e in cands:
        a = int(colors[e])
        if a == 0:
            continue
        u, v = graph.edges[e]
        for _, f in graph.adj[v]:
            b = int(colors[f])
            if f == e or b == 0 or vc[u, b] < 0:
                continue
            pair = (a, b) if a < b else (b, a)
            if (e, pair) in done:
                continue
            L = kernels.trace_bicolored(e, b, eu, ev, colors, vc, buf)
            if L == 0:
                continue
            flaw = make_flaw(graph, buf[:L])
            for g in flaw.edges:
                done.add((g, pair))
            if L >= min_length:
                found[flaw.key] = flaw
    return [found[k] for k in sorted(found)]


def is_bichromatic(coloring, flaw):
    cs = [int(coloring.colors[e]) for e in flaw.edges]
    if 0 in cs:
        return False
    return (len(set(cs[0::2])) == 1 and len(set(cs[1::2])) == 1 and cs[0] != cs[1])


def resample_cycle(graph, coloring, flaw, rng):
    """Keep e1, e2; recolor the rest of the cycle in order from the edge after e2,
    each uniformly among its 4-available colors at that moment."""
    new = coloring.copy()
    rest = flaw.edges[2:]
    for e in rest:
        new.uncolor(e)
    for e in rest:
        avail = four_available(graph, new, e)
        if not avail:
            raise AssertionError(f"edge {e} has no 4-available color")
        new.set(e, avail[int(rng.integers(len(avail)))])
    return new


def reconstruct_previous(graph, coloring, flaw):
    """The unique state that resampling ``flaw`` could have come from.

    Extends the {color(e1), color(e2)} alternation around the cycle.
    """
    prev = coloring.copy()
    c1, c2 = int(coloring.colors[flaw.e1]), int(coloring.colors[flaw.e2])
    for e in flaw.edges[2:]:
        prev.uncolor(e)
    for k, e in enumerate(flaw.edges):
        if k >= 2:
            prev.set(e, c1 if k % 2 == 0 else c2)
    return prev


def resample_outcomes(graph, coloring, flaw):
    """Every coloring reachable by resampling ``flaw`` (the action set A(C, sigma))."""
    work = coloring.copy()
    rest = flaw.edges[2:]
    for e in rest:
        work.uncolor(e)
    out = []

    def extend(k):
        if k == len(rest):
            out.append(work.copy())
            return
        e = rest[k]
        for c in four_available(graph, work, e):
            work.set(e, c)
            extend(k + 1)
            work.uncolor(e)

    extend(0)
    return out


# -- verification (independent of the kernels) ---------------------------------

@dataclass
class Violation:
    kind: str                 # "improper" or "cycle"
    vertex: int = -1
    colors: tuple = ()
    cycle: tuple = ()

    def describe(self):
        if self.kind == "improper":
            return f"vertex {self.vertex + 1} has two edges colored {self.colors[0]}"
        vs = " ".join(str(v + 1) for v in self.cycle)
        return (f"bichromatic {len(self.cycle)}-cycle with colors "
                f"{self.colors[0]},{self.colors[1]}: {vs}")


def _as_list(coloring):
    return coloring.tolist() if isinstance(coloring, EdgeColoring) else [int(c) for c in coloring]


def properness_violation(graph, colors):
    for v in range(graph.n):
        seen = set()
        for _, e in graph.adj[v]:
            c = colors[e]
            if c in seen:
                return Violation("improper", vertex=v, colors=(c,))
            seen.add(c)
    return None


def bichromatic_cycles(graph, colors):
    """All bichromatic cycles of a proper complete coloring, via per-pair component scans.

    Returns (color pair, canonical vertex tuple) sorted by (length, vertices).
    """
    by_color = {}
    for e, c in enumerate(colors):
        by_color.setdefault(c, []).append(e)
    used = sorted(by_color)
    out = []
    for i, a in enumerate(used):
        for b in used[i + 1:]:
            adj = {}
            for e in by_color[a] + by_color[b]:
                x, y = graph.edges[e]
                adj.setdefault(x, []).append(y)
                adj.setdefault(y, []).append(x)
            seen = set()
            for start in adj:
                if start in seen:
                    continue
                comp, stack = [], [start]
                seen.add(start)
                while stack:
                    x = stack.pop()
                    comp.append(x)
                    for y in adj[x]:
                        if y not in seen:
                            seen.add(y)
                            stack.append(y)
                if all(len(adj[x]) == 2 for x in comp):
                    order = [comp[0]]
                    prev, cur = None, comp[0]
                    while True:
                        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                        if nxt == comp[0]:
                            break
                        order.append(nxt)
                        prev, cur = cur, nxt
                    out.append(((a, b), canonical_cycle(order)))
    out.sort(key=lambda item: (len(item[1]), item[1]))
    return out


def verify_acyclic_coloring(graph, coloring):
    """None if the coloring is proper with no bichromatic cycle, else the first Violation."""
    colors = _as_list(coloring)
    if len(colors) != graph.m or any(c <= 0 for c in colors):
        raise ValueError("coloring is incomplete")
    bad = properness_violation(graph, colors)
    if bad is not None:
        return bad
    cycles = bichromatic_cycles(graph, colors)
    if cycles:
        pair, vs = cycles[0]
        return Violation("cycle", colors=pair, cycle=vs)
    return None


def in_omega(graph, coloring):
    """Complete, proper and free of bichromatic 4-cycles."""
    colors = _as_list(coloring)
    if any(c <= 0 for c in colors):
        return False
    if properness_violation(graph, colors) is not None:
        return False
    return all(len(vs) != 4 for _, vs in bichromatic_cycles(graph, colors))

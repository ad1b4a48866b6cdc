"""Seeded random graph families with a maximum-degree cap.

Every generator takes a numpy Generator and returns a :class:`Graph` whose
edge order is the order in which edges were created.
"""
from __future__ import annotations

from .graph import Graph


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def _pick(rng, items):
    return items[int(rng.integers(len(items)))]


def random_tree(rng, n, max_degree):
    """Each new vertex hangs off a uniformly chosen vertex that still has room."""
    if max_degree < 2 and n > 2:
        raise ValueError("a tree on more than 2 vertices needs max degree >= 2")
    deg = [0] * n
    edges = []
    open_ = [0]
    for v in range(1, n):
        k = int(rng.integers(len(open_)))
        u = open_[k]
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
        if deg[u] >= max_degree:
            open_[k] = open_[-1]
            open_.pop()
        if deg[v] < max_degree:
            open_.append(v)
    return Graph(n, edges)


def random_series_parallel(rng, n, max_degree):
    """Random 2-tree-like graph: each new vertex joins both ends of an existing edge.

    When no edge has two unsaturated ends the vertex is attached as a pendant
    to an unsaturated vertex instead.  Both steps keep the graph free of K4
    minors (series-parallel), so the degeneracy is at most 2.
    """
    if max_degree < 2:
        raise ValueError("max degree must be at least 2")
    if n < 2:
        return Graph(max(n, 0), [])
    deg = [0] * n
    edges = [(0, 1)]
    deg[0] = deg[1] = 1
    pool = [(0, 1)]
    for v in range(2, n):
        while pool:
            k = int(rng.integers(len(pool)))
            a, b = pool[k]
            if deg[a] < max_degree and deg[b] < max_degree:
                break
            pool[k] = pool[-1]
            pool.pop()
        if pool:
            edges.extend([(a, v), (b, v)])
            deg[a] += 1
            deg[b] += 1
            deg[v] = 2
            pool.extend([(a, v), (b, v)])
            continue
        room = [u for u in range(v) if deg[u] < max_degree]
        if not room:
            break
        u = _pick(rng, room)
        edges.append((u, v))
        deg[u] += 1
        deg[v] = 1
        pool.append((u, v))
    return Graph(n, edges)


def random_planar_triangulation(rng, n, max_degree, flips=None):
    """Stacked triangulation grown from K4, then randomized by edge flips.

    Vertices are inserted into uniformly chosen faces whose corners have room;
    each flip replaces the diagonal ab of two faces abc, abd by cd when cd is
    absent, a and b keep degree >= 4, and c, d have room.  Planarity is kept
    throughout, so the degeneracy is at most 5.
    """
    if n < 4:
        raise ValueError("need at least 4 vertices")
    if max_degree < 4:
        raise ValueError("max degree must be at least 4")
    deg = [0] * n
    edges = set()
    order = []

    def add_edge(a, b):
        e = (a, b) if a < b else (b, a)
        edges.add(e)
        order.append(e)
        deg[a] += 1
        deg[b] += 1

    faces = {}
    edge_faces = {}
    next_id = [0]

    def add_face(a, b, c):
        fid = next_id[0]
        next_id[0] += 1
        faces[fid] = (a, b, c)
        for x, y in ((a, b), (b, c), (a, c)):
            edge_faces.setdefault((x, y) if x < y else (y, x), set()).add(fid)

    def drop_face(fid):
        a, b, c = faces.pop(fid)
        for x, y in ((a, b), (b, c), (a, c)):
            edge_faces[(x, y) if x < y else (y, x)].discard(fid)

    for a in range(4):
        for b in range(a + 1, 4):
            add_edge(a, b)
    for tri in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
        add_face(*tri)

    placed = 4
    attempts = 0
    while placed < n and attempts < 50 * n:
        attempts += 1
        fid = _pick(rng, list(faces))
        a, b, c = faces[fid]
        if max(deg[a], deg[b], deg[c]) >= max_degree:
            continue
        v = placed
        placed += 1
        drop_face(fid)
        for x in (a, b, c):
            add_edge(x, v)
        add_face(a, b, v)
        add_face(b, c, v)
        add_face(a, c, v)

    if flips is None:
        flips = 2 * len(edges)
    for _ in range(flips):
        ab = _pick(rng, order)
        if ab not in edges:
            continue
        a, b = ab
        fids = list(edge_faces.get(ab, ()))
        if len(fids) != 2:
            continue
        c = [x for x in faces[fids[0]] if x not in ab][0]
        d = [x for x in faces[fids[1]] if x not in ab][0]
        cd = (c, d) if c < d else (d, c)
        if c == d or cd in edges or deg[a] <= 3 or deg[b] <= 3:
            continue
        if deg[c] >= max_degree or deg[d] >= max_degree:
            continue
        drop_face(fids[0])
        drop_face(fids[1])
        edges.discard(ab)
        deg[a] -= 1
        deg[b] -= 1
        edge_faces.pop(ab, None)
        add_edge(c, d)
        add_face(a, c, d)
        add_face(b, c, d)

    final = [e for e in dict.fromkeys(order) if e in edges]
    return Graph(placed, final)


def random_capped_gnp(rng, n, p, max_degree):
    """G(n, p) edges considered in random order, kept while both ends have room."""
    cand = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = rng.random(len(cand)) < p
    chosen = [cand[k] for k in range(len(cand)) if keep[k]]
    perm = rng.permutation(len(chosen))
    deg = [0] * n
    edges = []
    for k in perm:
        a, b = chosen[int(k)]
        if deg[a] < max_degree and deg[b] < max_degree:
            edges.append((a, b))
            deg[a] += 1
            deg[b] += 1
    return Graph(n, edges)

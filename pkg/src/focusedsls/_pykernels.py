"""Pure-Python reference versions of the compiled kernels in ``_kernels.pyx``.

Array conventions (shared with the compiled module):

* ``eu, ev``: int32 endpoints of each edge.
* ``indptr, nbrs, nbr_edge``: CSR adjacency, neighbours sorted per row.
* ``colors``: int32 color per edge, 0 = uncolored.
* ``vc``: int32 (n, q+1) table, ``vc[v, c]`` = edge at v with color c or -1.
"""


def find_edge(indptr, nbrs, nbr_edge, x, y):
    lo, hi = int(indptr[x]), int(indptr[x + 1])
    while lo < hi:
        mid = (lo + hi) // 2
        z = nbrs[mid]
        if z < y:
            lo = mid + 1
        elif z > y:
            hi = mid
        else:
            return int(nbr_edge[mid])
    return -1


def forbidden_mask(e, eu, ev, colors, vc, indptr, nbrs, nbr_edge, mask):
    """Mark in ``mask`` the colors that are 4-forbidden for edge e; return their count.

    e's own color is ignored.
    """
    mask[:] = 0
    u, v = int(eu[e]), int(ev[e])
    count = 0
    for k in range(indptr[u], indptr[u + 1]):
        f = nbr_edge[k]
        if f == e:
            continue
        c = colors[f]
        if c > 0 and not mask[c]:
            mask[c] = 1
            count += 1
    for k in range(indptr[v], indptr[v + 1]):
        f = nbr_edge[k]
        if f == e:
            continue
        a = colors[f]
        if a == 0:
            continue
        if not mask[a]:
            mask[a] = 1
            count += 1
        g = vc[u, a]
        if g >= 0 and g != e:
            w = eu[f] + ev[f] - v
            x = eu[g] + ev[g] - u
            if w != x:
                h = find_edge(indptr, nbrs, nbr_edge, w, x)
                if h >= 0:
                    c = colors[h]
                    if c > 0 and not mask[c]:
                        mask[c] = 1
                        count += 1
    return count


def trace_bicolored(e0, b, eu, ev, colors, vc, out):
    """Follow the {colors[e0], b} component from e0.

    Returns the cycle length and writes its vertices (starting ``eu[e0],
    ev[e0]``) into ``out`` if the component is a cycle; returns 0 for a path.
    """
    a = colors[e0]
    if a == 0 or b == a:
        return 0
    u, v = int(eu[e0]), int(ev[e0])
    out[0] = u
    out[1] = v
    k = 2
    cur, want, other = v, b, a
    limit = out.shape[0]
    while True:
        f = vc[cur, want]
        if f < 0:
            return 0
        nxt = eu[f] + ev[f] - cur
        if nxt == u:
            return k
        if k >= limit:
            return 0
        out[k] = nxt
        k += 1
        cur, want, other = nxt, other, want


def count_paths(start, target, length, indptr, nbrs, cap):
    """Number of simple paths start -> target with exactly ``length`` edges.

    Returns -1 if more than ``cap`` search nodes would be expanded.
    """
    n = indptr.shape[0] - 1
    on_path = [False] * n
    on_path[start] = True
    expanded = 0
    total = 0
    # iterative DFS: stack of (vertex, depth, next row position)
    stack = [(start, 0, int(indptr[start]))]
    while stack:
        x, depth, pos = stack[-1]
        if pos >= indptr[x + 1]:
            stack.pop()
            on_path[x] = False
            continue
        stack[-1] = (x, depth, pos + 1)
        y = int(nbrs[pos])
        if on_path[y]:
            continue
        if y == target:
            if depth + 1 == length:
                total += 1
            continue
        if depth + 1 >= length:
            continue
        expanded += 1
        if expanded > cap:
            return -1
        on_path[y] = True
        stack.append((y, depth + 1, int(indptr[y])))
    on_path[start] = False
    return total

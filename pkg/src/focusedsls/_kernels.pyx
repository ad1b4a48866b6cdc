# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``; same signatures and results."""

import numpy as np
cimport numpy as cnp

from libc.stdlib cimport malloc, free

cnp.import_array()

ctypedef cnp.int32_t i32


cdef inline Py_ssize_t _find_edge(const i32[:] indptr, const i32[:] nbrs,
                                  const i32[:] nbr_edge, Py_ssize_t x, Py_ssize_t y) nogil:
    cdef Py_ssize_t lo = indptr[x], hi = indptr[x + 1], mid
    cdef i32 z
    while lo < hi:
        mid = (lo + hi) >> 1
        z = nbrs[mid]
        if z < y:
            lo = mid + 1
        elif z > y:
            hi = mid
        else:
            return nbr_edge[mid]
    return -1


def find_edge(const i32[:] indptr, const i32[:] nbrs, const i32[:] nbr_edge,
              Py_ssize_t x, Py_ssize_t y):
    return _find_edge(indptr, nbrs, nbr_edge, x, y)


cdef inline i32* _data(cnp.ndarray arr) except NULL:
    # raw pointer access: far cheaper per call than acquiring a memoryview
    if cnp.PyArray_TYPE(arr) != cnp.NPY_INT32 or not cnp.PyArray_IS_C_CONTIGUOUS(arr):
        raise TypeError("kernel arrays must be C-contiguous int32")
    return <i32*> cnp.PyArray_DATA(arr)


cdef inline Py_ssize_t _find_edge_ptr(const i32* indptr, const i32* nbrs,
                                      const i32* nbr_edge, Py_ssize_t x, Py_ssize_t y) nogil:
    cdef Py_ssize_t lo = indptr[x], hi = indptr[x + 1], mid
    cdef i32 z
    while lo < hi:
        mid = (lo + hi) >> 1
        z = nbrs[mid]
        if z < y:
            lo = mid + 1
        elif z > y:
            hi = mid
        else:
            return nbr_edge[mid]
    return -1


def forbidden_mask(Py_ssize_t e, cnp.ndarray eu_a, cnp.ndarray ev_a, cnp.ndarray colors_a,
                   cnp.ndarray vc_a, cnp.ndarray indptr_a, cnp.ndarray nbrs_a,
                   cnp.ndarray nbr_edge_a, cnp.ndarray mask_a):
    cdef const i32* eu = _data(eu_a)
    cdef const i32* ev = _data(ev_a)
    cdef const i32* colors = _data(colors_a)
    cdef const i32* vc = _data(vc_a)
    cdef const i32* indptr = _data(indptr_a)
    cdef const i32* nbrs = _data(nbrs_a)
    cdef const i32* nbr_edge = _data(nbr_edge_a)
    if cnp.PyArray_TYPE(mask_a) != cnp.NPY_UINT8 or not cnp.PyArray_IS_C_CONTIGUOUS(mask_a):
        raise TypeError("mask must be a C-contiguous uint8 array")
    cdef cnp.uint8_t* mask = <cnp.uint8_t*> cnp.PyArray_DATA(mask_a)
    cdef Py_ssize_t width = vc_a.shape[1], nmask = mask_a.shape[0]
    cdef Py_ssize_t u = eu[e], v = ev[e], k, f, g, h, w, x, count = 0
    cdef i32 a, c
    with nogil:
        for k in range(nmask):
            mask[k] = 0
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
            g = vc[u * width + a]
            if g >= 0 and g != e:
                w = eu[f] + ev[f] - v
                x = eu[g] + ev[g] - u
                if w != x:
                    h = _find_edge_ptr(indptr, nbrs, nbr_edge, w, x)
                    if h >= 0:
                        c = colors[h]
                        if c > 0 and not mask[c]:
                            mask[c] = 1
                            count += 1
    return count


def trace_bicolored(Py_ssize_t e0, i32 b, cnp.ndarray eu_a, cnp.ndarray ev_a,
                    cnp.ndarray colors_a, cnp.ndarray vc_a, cnp.ndarray out_a):
    cdef const i32* eu = _data(eu_a)
    cdef const i32* ev = _data(ev_a)
    cdef const i32* colors = _data(colors_a)
    cdef const i32* vc = _data(vc_a)
    cdef i32* out = _data(out_a)
    cdef Py_ssize_t width = vc_a.shape[1], limit = out_a.shape[0], result = 0
    cdef i32 a = colors[e0], want, other, tmp
    cdef Py_ssize_t u, v, cur, nxt, f, k
    if a == 0 or b == a:
        return 0
    u = eu[e0]
    v = ev[e0]
    out[0] = u
    out[1] = v
    k = 2
    cur = v
    want = b
    other = a
    with nogil:
        while True:
            f = vc[cur * width + want]
            if f < 0:
                break
            nxt = eu[f] + ev[f] - cur
            if nxt == u:
                result = k
                break
            if k >= limit:
                break
            out[k] = nxt
            k += 1
            cur = nxt
            tmp = want
            want = other
            other = tmp
    return result


def count_paths(Py_ssize_t start, Py_ssize_t target, Py_ssize_t length,
                const i32[:] indptr, const i32[:] nbrs, long long cap):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t top, x, depth, pos, y
    cdef long long expanded = 0, total = 0
    cdef char *on_path = <char *> malloc(n)
    cdef Py_ssize_t *sv = <Py_ssize_t *> malloc((length + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *sp = <Py_ssize_t *> malloc((length + 1) * sizeof(Py_ssize_t))
    if on_path == NULL or sv == NULL or sp == NULL:
        free(on_path); free(sv); free(sp)
        raise MemoryError()
    try:
        with nogil:
            for x in range(n):
                on_path[x] = 0
            on_path[start] = 1
            top = 0
            sv[0] = start
            sp[0] = indptr[start]
            while top >= 0:
                x = sv[top]
                pos = sp[top]
                depth = top
                if pos >= indptr[x + 1]:
                    on_path[x] = 0
                    top -= 1
                    continue
                sp[top] = pos + 1
                y = nbrs[pos]
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
                    total = -1
                    break
                on_path[y] = 1
                top += 1
                sv[top] = y
                sp[top] = indptr[y]
    finally:
        free(on_path)
        free(sv)
        free(sp)
    return total

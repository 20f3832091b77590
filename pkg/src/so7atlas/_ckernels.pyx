# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels over packed signed-permutation words.

Same contracts as ``_pykernels``; selected at import by ``kernels``.
"""

import numpy as np
cimport numpy as cnp

from libc.stdlib cimport calloc, free, malloc

from .tables import AMBIENT_SIZE, IDENTITY_CODE, PERM_RANK

cnp.import_array()

BACKEND = "cython"

ctypedef long long i64


cdef inline i64 _compose(i64 a, i64 b) nogil:
    cdef i64 out = 0
    cdef int i, pb, pa, s
    for i in range(7):
        pb = (b >> (7 + 3 * i)) & 7
        pa = (a >> (7 + 3 * pb)) & 7
        s = ((b >> i) ^ (a >> pb)) & 1
        out |= (<i64>pa << (7 + 3 * i)) | (<i64>s << i)
    return out


cdef inline i64 _dense(const int[::1] rank, i64 code) nogil:
    return <i64>rank[code >> 7] * 128 + (code & 127)


def compose(a, b):
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    shape = a.shape
    cdef const i64[::1] av = np.ascontiguousarray(a).ravel()
    cdef const i64[::1] bv = np.ascontiguousarray(b).ravel()
    cdef Py_ssize_t n = av.shape[0], k
    out = np.empty(n, dtype=np.int64)
    cdef i64[::1] ov = out
    with nogil:
        for k in range(n):
            ov[k] = _compose(av[k], bv[k])
    return out.reshape(shape)


def closure(gens, Py_ssize_t limit):
    cdef const i64[::1] gv = np.ascontiguousarray(gens, dtype=np.int64).ravel()
    cdef const int[::1] rank = PERM_RANK
    cdef Py_ssize_t ng = gv.shape[0]
    cdef Py_ssize_t cap = AMBIENT_SIZE
    cdef unsigned char* seen = <unsigned char*> calloc(AMBIENT_SIZE, 1)
    cdef i64* queue = <i64*> malloc(cap * sizeof(i64))
    cdef Py_ssize_t head = 0, tail = 0, j
    cdef i64 x, y, d
    cdef bint overflow = False
    cdef i64 ident = IDENTITY_CODE
    if seen == NULL or queue == NULL:
        free(seen)
        free(queue)
        raise MemoryError()
    try:
        with nogil:
            x = ident
            seen[_dense(rank, x)] = 1
            queue[tail] = x
            tail += 1
            while head < tail:
                x = queue[head]
                head += 1
                for j in range(ng):
                    y = _compose(x, gv[j])
                    d = _dense(rank, y)
                    if not seen[d]:
                        seen[d] = 1
                        if tail >= limit or tail >= cap:
                            overflow = True
                            break
                        queue[tail] = y
                        tail += 1
                if overflow:
                    break
        if overflow:
            return None
        out = np.empty(tail, dtype=np.int64)
        for j in range(tail):
            out[j] = queue[j]
        out.sort()
        return out
    finally:
        free(seen)
        free(queue)


def components(Py_ssize_t n, targets):
    """Orbit labels of the maps ``i -> targets[k, i]`` on ``range(n)``."""
    t = np.ascontiguousarray(targets, dtype=np.int64).reshape(-1, n)
    cdef const i64[:, ::1] tv = t
    cdef Py_ssize_t nk = tv.shape[0]
    # undirected adjacency in CSR form: forward edges plus their reverses
    cdef Py_ssize_t m = nk * n
    deg_np = np.zeros(n + 1, dtype=np.int64)
    cdef i64[::1] deg = deg_np
    cdef Py_ssize_t k, i, u, v, p
    for k in range(nk):
        for i in range(n):
            deg[i + 1] += 1
            deg[tv[k, i] + 1] += 1
    for i in range(n):
        deg[i + 1] += deg[i]
    adj_np = np.empty(2 * m, dtype=np.int64)
    fill_np = deg_np[:n].copy()
    cdef i64[::1] adj = adj_np
    cdef i64[::1] fill = fill_np
    for k in range(nk):
        for i in range(n):
            v = tv[k, i]
            adj[fill[i]] = v
            fill[i] += 1
            adj[fill[v]] = i
            fill[v] += 1
    labels_np = np.full(n, -1, dtype=np.int64)
    stack_np = np.empty(n, dtype=np.int64)
    cdef i64[::1] labels = labels_np
    cdef i64[::1] stack = stack_np
    cdef Py_ssize_t top, current = 0
    with nogil:
        for i in range(n):
            if labels[i] >= 0:
                continue
            labels[i] = current
            stack[0] = i
            top = 1
            while top > 0:
                top -= 1
                u = stack[top]
                for p in range(deg[u], deg[u + 1]):
                    v = adj[p]
                    if labels[v] < 0:
                        labels[v] = current
                        stack[top] = v
                        top += 1
            current += 1
    return labels_np

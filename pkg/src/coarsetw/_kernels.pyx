# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: breadth-first search on CSR adjacency and subset DPs for exact widths.

Signatures mirror :mod:`coarsetw._pykernels` exactly.
"""
from libc.stdlib cimport malloc, free

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil

ctypedef unsigned long long u64


def all_pairs_bfs(const int[:] indptr, const int[:] indices, int[:, :] out):
    cdef Py_ssize_t n = out.shape[0]
    cdef Py_ssize_t s, i, head, tail, u, w, e
    cdef int du
    cdef int *queue = <int *> malloc(max(n, 1) * sizeof(int))
    if queue == NULL:
        raise MemoryError()
    try:
        for s in range(n):
            for i in range(n):
                out[s, i] = -1
            out[s, s] = 0
            queue[0] = <int> s
            head = 0
            tail = 1
            while head < tail:
                u = queue[head]
                head += 1
                du = out[s, u] + 1
                for e in range(indptr[u], indptr[u + 1]):
                    w = indices[e]
                    if out[s, w] < 0:
                        out[s, w] = du
                        queue[tail] = <int> w
                        tail += 1
    finally:
        free(queue)


def multi_source_bfs(const int[:] indptr, const int[:] indices, const int[:] sources, int[:] out):
    cdef Py_ssize_t n = out.shape[0]
    cdef Py_ssize_t i, head = 0, tail = 0, u, w, e
    cdef int du
    cdef int *queue = <int *> malloc(max(n, 1) * sizeof(int))
    if queue == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            out[i] = -1
        for i in range(sources.shape[0]):
            u = sources[i]
            if out[u] < 0:
                out[u] = 0
                queue[tail] = <int> u
                tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            du = out[u] + 1
            for e in range(indptr[u], indptr[u + 1]):
                w = indices[e]
                if out[w] < 0:
                    out[w] = du
                    queue[tail] = <int> w
                    tail += 1
    finally:
        free(queue)


cdef inline int _q_size(u64 rest, int v, u64 *adj) noexcept nogil:
    # vertices outside rest+v reachable from v through rest
    cdef u64 vbit = (<u64> 1) << v
    cdef u64 comp = vbit, frontier = vbit, reach = 0, nb, f
    while frontier:
        nb = 0
        f = frontier
        while f:
            nb |= adj[__builtin_ctzll(f)]
            f &= f - 1
        reach |= nb
        frontier = nb & rest & ~comp
        comp |= frontier
    return __builtin_popcountll(reach & ~(rest | vbit))


cdef list _unwind(signed char *choice, u64 full):
    order = []
    cdef u64 s = full
    cdef int v
    while s:
        v = choice[s]
        order.append(v)
        s &= ~((<u64> 1) << v)
    order.reverse()
    return order


def treewidth_dp(adj_masks, int n):
    cdef u64 adj[64]
    cdef u64 size = (<u64> 1) << n
    cdef u64 s, rest, bits
    cdef int v, q, val, best, bv, i
    cdef signed char *tw
    cdef signed char *choice
    if n == 0:
        return -1, []
    for i in range(n):
        adj[i] = adj_masks[i]
    tw = <signed char *> malloc(size)
    choice = <signed char *> malloc(size)
    if tw == NULL or choice == NULL:
        free(tw)
        free(choice)
        raise MemoryError()
    try:
        tw[0] = -1
        with nogil:
            for s in range(1, size):
                best = 127
                bv = -1
                bits = s
                while bits:
                    v = __builtin_ctzll(bits)
                    bits &= bits - 1
                    rest = s & ~((<u64> 1) << v)
                    val = tw[rest]
                    if val < best:
                        q = _q_size(rest, v, adj)
                        if q > val:
                            val = q
                        if val < best:
                            best = val
                            bv = v
                tw[s] = <signed char> best
                choice[s] = <signed char> bv
        return int(tw[size - 1]), _unwind(choice, size - 1)
    finally:
        free(tw)
        free(choice)


def pathwidth_dp(adj_masks, int n):
    cdef u64 adj[64]
    cdef u64 size = (<u64> 1) << n
    cdef u64 s, bits
    cdef int v, best, bv, bd, i
    cdef signed char *pw
    cdef signed char *choice
    if n == 0:
        return -1, []
    for i in range(n):
        adj[i] = adj_masks[i]
    pw = <signed char *> malloc(size)
    choice = <signed char *> malloc(size)
    if pw == NULL or choice == NULL:
        free(pw)
        free(choice)
        raise MemoryError()
    try:
        pw[0] = 0
        with nogil:
            for s in range(1, size):
                best = 127
                bv = -1
                bd = 0
                bits = s
                while bits:
                    v = __builtin_ctzll(bits)
                    bits &= bits - 1
                    if adj[v] & ~s:
                        bd += 1
                    if pw[s & ~((<u64> 1) << v)] < best:
                        best = pw[s & ~((<u64> 1) << v)]
                        bv = v
                pw[s] = <signed char> (bd if bd > best else best)
                choice[s] = <signed char> bv
        return int(pw[size - 1]), _unwind(choice, size - 1)
    finally:
        free(pw)
        free(choice)

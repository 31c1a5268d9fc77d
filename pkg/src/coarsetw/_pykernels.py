"""Pure-Python implementations of the hot loops in :mod:`coarsetw._kernels`.

Used when the compiled extension is unavailable, and as a reference in tests.
"""
from collections import deque


def all_pairs_bfs(indptr, indices, out):
    n = out.shape[0]
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[u] + 1
            for e in range(indptr[u], indptr[u + 1]):
                w = indices[e]
                if dist[w] < 0:
                    dist[w] = du
                    queue.append(w)
        out[s, :] = dist


def multi_source_bfs(indptr, indices, sources, out):
    n = out.shape[0]
    dist = [-1] * n
    queue = deque()
    for u in sources:
        u = int(u)
        if dist[u] < 0:
            dist[u] = 0
            queue.append(u)
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for e in range(indptr[u], indptr[u + 1]):
            w = int(indices[e])
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    out[:] = dist


def _q_size(rest, v, adj):
    vbit = 1 << v
    comp = frontier = vbit
    reach = 0
    while frontier:
        nb = 0
        f = frontier
        while f:
            low = f & -f
            nb |= adj[low.bit_length() - 1]
            f ^= low
        reach |= nb
        frontier = nb & rest & ~comp
        comp |= frontier
    return bin(reach & ~(rest | vbit)).count("1")


def _bits(s):
    while s:
        low = s & -s
        yield low.bit_length() - 1
        s ^= low


def _unwind(choice, full):
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    return order


def treewidth_dp(adj_masks, n):
    if n == 0:
        return -1, []
    adj = list(adj_masks)
    size = 1 << n
    tw = [0] * size
    choice = [0] * size
    tw[0] = -1
    for s in range(1, size):
        best, bv = n + 1, -1
        for v in _bits(s):
            rest = s & ~(1 << v)
            val = tw[rest]
            if val < best:
                val = max(val, _q_size(rest, v, adj))
                if val < best:
                    best, bv = val, v
        tw[s] = best
        choice[s] = bv
    return tw[size - 1], _unwind(choice, size - 1)


def pathwidth_dp(adj_masks, n):
    if n == 0:
        return -1, []
    adj = list(adj_masks)
    size = 1 << n
    pw = [0] * size
    choice = [0] * size
    for s in range(1, size):
        best, bv, boundary = n + 1, -1, 0
        for v in _bits(s):
            if adj[v] & ~s:
                boundary += 1
            if pw[s & ~(1 << v)] < best:
                best, bv = pw[s & ~(1 << v)], v
        pw[s] = max(best, boundary)
        choice[s] = bv
    return pw[size - 1], _unwind(choice, size - 1)

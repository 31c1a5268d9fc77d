"""Deterministic graph families and random corpora for tests and the CLI."""
from __future__ import annotations

import random
from typing import Optional

from .graph import Graph


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star(leaves: int) -> Graph:
    """``K_{1,leaves}`` with centre 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def grid(rows: int, cols: int) -> Graph:
    idx = lambda r, c: r * cols + c  # noqa: E731
    edges = [(idx(r, c), idx(r, c + 1)) for r in range(rows) for c in range(cols - 1)]
    edges += [(idx(r, c), idx(r + 1, c)) for r in range(rows - 1) for c in range(cols)]
    return Graph.from_edges(rows * cols, edges)


def complete_binary_tree(height: int) -> Graph:
    """Root 0, children of ``i`` are ``2i+1`` and ``2i+2``; leaves at depth ``height``."""
    n = 2 ** (height + 1) - 1
    return Graph.from_edges(n, [(i, (i - 1) // 2) for i in range(1, n)])


def caterpillar(spine: int, legs: int) -> Graph:
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for s in range(spine):
        for _ in range(legs):
            edges.append((s, nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges)


def random_tree(n: int, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(i, rng.randrange(i)) for i in range(1, n)])


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_partial_ktree(n: int, k: int, keep: float, rng: random.Random) -> Graph:
    """Random ``k``-tree on ``n`` vertices with each edge kept with probability ``keep``.

    Treewidth is at most ``k``; ``keep`` sweeps the density.
    """
    base = min(n, k + 1)
    edges = [(u, v) for u in range(base) for v in range(u + 1, base)]
    cliques = [tuple(range(base))] if n > k else []
    for v in range(base, n):
        host = rng.choice(cliques)
        drop = rng.randrange(len(host))
        face = host[:drop] + host[drop + 1:]
        edges += [(u, v) for u in face]
        cliques.append(face + (v,))
    return Graph.from_edges(n, [e for e in edges if rng.random() < keep])


def blow_up(h: Graph, rho: int, rng: Optional[random.Random] = None):
    """Replace each vertex of ``h`` by a cluster of radius ``rho`` around a hub.

    Hub ``i`` of the result is vertex ``i``; edges of ``h`` join hubs.
    Returns ``(g, phi)`` where ``phi`` collapses each cluster to its vertex
    of ``h``; ``phi`` is then a ``(2*rho + 1)``-quasi-isometry.
    """
    rng = rng or random.Random(0)
    edges = list(h.edges)
    phi = list(range(h.n))
    nxt = h.n
    for hub in range(h.n):
        frontier = [hub]
        for _ in range(rho):
            layer = []
            for u in frontier:
                for _ in range(rng.randint(1, 2)):
                    edges.append((u, nxt))
                    phi.append(hub)
                    layer.append(nxt)
                    nxt += 1
            frontier = layer
    return Graph.from_edges(nxt, edges), phi


def compression_corpus(count: int, seed: int, max_n: int = 60, widths=range(1, 7)):
    """Yield ``count`` random graphs whose min-fill decomposition has width in ``widths``.

    Mixes random trees, sparse G(n, p) and partial k-trees over a sweep of
    edge densities.
    """
    from .treedecomp import heuristic_td

    rng = random.Random(seed)
    made = 0
    attempt = 0
    lo, hi = min(widths), max(widths)
    while made < count:
        attempt += 1
        n = rng.randint(4, max_n)
        kind = attempt % 4
        if kind == 0:
            g = random_tree(n, rng)
        elif kind == 1:
            g = gnp(n, rng.uniform(0.5, 3.0) / n, rng)
        else:
            g = random_partial_ktree(n, rng.randint(lo, hi), rng.uniform(0.3, 1.0), rng)
        td = heuristic_td(g, "min-fill" if attempt % 2 else "min-degree")
        if lo <= td.width <= hi:
            made += 1
            yield g, td

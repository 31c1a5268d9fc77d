"""Simple undirected graphs and exact unweighted metric queries.

Vertices are the dense ids ``0..n-1``. Distances are hop counts; an
unreachable pair has distance :data:`INF`. Radii and thresholds are exact
rationals (:class:`fractions.Fraction`), and every comparison against a
distance is done in exact arithmetic: since distances are integers,
``d <= r`` is decided as ``d <= floor(r)``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import kernels

INF = math.inf
"""Distance between vertices in different components."""

Scalar = Union[int, Fraction]
Distance = Union[int, float]  # a natural, or INF

_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class GraphError(ValueError):
    """Malformed graph input or a vertex id out of range."""


def as_scalar(value) -> Fraction:
    """Coerce ``int``, ``Fraction`` or a ``"p/q"`` / integer string to an exact rational.

    Floats are rejected: thresholds must stay exact.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if not m:
            raise ValueError(f"not an exact rational: {value!r} (use p/q or an integer)")
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(num, den)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def format_scalar(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def floor_radius(radius: Scalar) -> int:
    """Largest integer distance ``d`` with ``d <= radius`` (negative if none)."""
    return math.floor(as_scalar(radius))


def scaled(c: Fraction, d: Distance) -> Union[Fraction, float]:
    """``c * d`` keeping exactness for finite ``d``."""
    return INF if d == INF else c * d


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on ``range(n)``.

    ``edges`` holds each edge once as ``(u, v)`` with ``u < v``.
    """

    n: int
    edges: frozenset = frozenset()
    labels: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative vertex count")
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise GraphError(f"bad edge {e!r} for n={self.n}")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels must cover every vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, labels=None) -> "Graph":
        """Build from any iterable of pairs; duplicates and orientation are normalised.

        Self-loops are rejected.
        """
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            norm.add((min(u, v), max(u, v)))
        return cls(n, frozenset(norm), tuple(labels) if labels is not None else None)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple:
        nbrs = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def adj_sets(self) -> tuple:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def csr(self) -> tuple:
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        for v, a in enumerate(self.adj):
            indptr[v + 1] = indptr[v] + len(a)
        indices = np.fromiter((w for a in self.adj for w in a), dtype=np.int32, count=int(indptr[-1]))
        return indptr, indices

    @cached_property
    def dist_matrix(self) -> np.ndarray:
        """All-pairs hop distances, ``-1`` for unreachable. Read-only."""
        indptr, indices = self.csr
        d = kernels.all_pairs_bfs(indptr, indices, self.n)
        d.setflags(write=False)
        return d

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def dist(self, u: int, v: int) -> Distance:
        d = int(self.dist_matrix[u, v])
        return INF if d < 0 else d

    def check_vertices(self, vs: Iterable[int]) -> frozenset:
        out = frozenset(int(v) for v in vs)
        for v in out:
            if not 0 <= v < self.n:
                raise GraphError(f"vertex {v} out of range for n={self.n}")
        return out

    def ball_mask(self, x: int, radius: Scalar) -> np.ndarray:
        """Boolean mask of ``N^radius(x)``."""
        r = floor_radius(radius)
        row = self.dist_matrix[x]
        if r < 0:
            return np.zeros(self.n, dtype=bool)
        return (row >= 0) & (row <= r)

    def subgraph(self, keep: Sequence[int]) -> "Graph":
        """Induced subgraph on ``keep``; new vertex ``i`` is ``keep[i]``."""
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        labels = None
        if self.labels is not None:
            labels = [self.labels[v] for v in keep]
        return Graph.from_edges(len(keep), edges, labels)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def mask_to_set(mask: np.ndarray) -> frozenset:
    return frozenset(int(v) for v in np.flatnonzero(mask))


def set_to_mask(n: int, vs: Iterable[int]) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    idx = list(vs)
    if idx:
        mask[idx] = True
    return mask


def multi_source_distances(g: Graph, sources: Iterable[int]) -> list:
    """Distance from the nearest source to every vertex (``INF`` where unreachable)."""
    src = g.check_vertices(sources)
    indptr, indices = g.csr
    raw = kernels.multi_source_bfs(indptr, indices, g.n, src)
    return [INF if d < 0 else int(d) for d in raw]


def neighbourhood(g: Graph, s: Iterable[int], radius: Scalar) -> frozenset:
    """``{v : dist(s, v) <= radius}``; empty for negative radius."""
    src = g.check_vertices(s)
    r = floor_radius(radius)
    if r < 0 or not src:
        return frozenset()
    d = g.dist_matrix[sorted(src)]
    hit = ((d >= 0) & (d <= r)).any(axis=0)
    return mask_to_set(hit)


def graph_power(g: Graph, ell: Scalar) -> Graph:
    """Same vertices; ``uv`` an edge iff ``u != v`` and ``dist(u, v) <= ell``."""
    r = floor_radius(ell)
    if r < 1:
        return Graph(g.n, frozenset(), g.labels)
    d = g.dist_matrix
    us, vs = np.nonzero(np.triu((d >= 1) & (d <= r), k=1))
    return Graph(g.n, frozenset(zip(us.tolist(), vs.tolist())), g.labels)


def weak_diameter(g: Graph, s: Iterable[int]) -> Distance:
    """Largest distance in ``g`` (not ``g[s]``) between vertices of ``s``."""
    vs = sorted(g.check_vertices(s))
    if not vs:
        raise GraphError("weak diameter of the empty set is undefined")
    block = g.dist_matrix[np.ix_(vs, vs)]
    if (block < 0).any():
        return INF
    return int(block.max())


def set_distance(g: Graph, a: Iterable[int], b: Iterable[int]) -> Distance:
    """Minimum distance between the sets; ``INF`` if either is empty."""
    av, bv = sorted(g.check_vertices(a)), sorted(g.check_vertices(b))
    if not av or not bv:
        return INF
    block = g.dist_matrix[np.ix_(av, bv)]
    finite = block[block >= 0]
    return int(finite.min()) if finite.size else INF


def is_separator(g: Graph, s: Iterable[int], a: Iterable[int], b: Iterable[int]) -> bool:
    """True iff every path from ``a`` to ``b`` (including trivial ones) meets ``s``."""
    sep = g.check_vertices(s)
    starts = g.check_vertices(a) - sep
    targets = g.check_vertices(b) - sep
    if not starts or not targets:
        return True
    seen = set(starts)
    stack = list(starts)
    while stack:
        u = stack.pop()
        if u in targets:
            return False
        for w in g.adj[u]:
            if w not in seen and w not in sep:
                seen.add(w)
                stack.append(w)
    return True

"""Compressing partitions of graphs with a tree-decomposition.

Given a rooted tree-decomposition ``(J_t)`` of width ``k`` and a scale
``ell``, :func:`build_compressing` picks a set of centres ``B_t`` for every
tree node, walking down from the root. ``(B_t)`` is then a decomposition of
width ``<= k`` of the graph ``H`` on all centres (two centres adjacent iff
they share some ``B_t``), and each vertex joins the part of an "old"
centre whose coverage reaches it. The resulting ``H``-indexed partition is
``ell``-compressing and every part lies within ``(k+1)*ell`` of its centre.

Per-centre zones at a centre set ``B``: a centre ``x`` with penalty
``p`` (number of higher-priority centres in ``B``) has security radius
``(|B|-1-p)*ell`` and coverage radius ``(|B|-p)*ell``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from .graph import INF, Graph, as_scalar, floor_radius, is_separator, mask_to_set
from .treedecomp import (
    DecompositionError,
    PriorityOrder,
    RootedTreeDecomposition,
    TreeDecomposition,
    priority_order,
)


class PreconditionError(ValueError):
    """A hypothesis of :func:`change_providers` does not hold."""

    def __init__(self, condition: str, message: str, witness=()):
        super().__init__(f"precondition {condition} violated: {message}")
        self.condition = condition
        self.witness = witness


class ClaimError(AssertionError):
    """An invariant of the construction failed; always an implementation bug."""

    def __init__(self, claim: str, message: str, node: Optional[int] = None):
        where = f" at tree node {node}" if node is not None else ""
        super().__init__(f"{claim}{where}: {message}")
        self.claim = claim
        self.node = node


def penalty_map(order: PriorityOrder, b: Iterable[int]) -> dict:
    """Penalty of each centre: how many centres in ``b`` outrank it."""
    return {x: i for i, x in enumerate(order.sort(b))}


class CentreContext:
    """Zones of a fixed centre set ``centres`` at scale ``ell``."""

    def __init__(self, g: Graph, order: PriorityOrder, centres: Iterable[int], ell):
        self.g = g
        self.order = order
        self.centres = frozenset(centres)
        self.ell = as_scalar(ell)
        self.penalty = penalty_map(order, self.centres)

    def _radius(self, x: int, extra: int) -> Fraction:
        return (len(self.centres) - extra - self.penalty[x]) * self.ell

    def security_radius(self, x: int) -> Fraction:
        return self._radius(x, 1)

    def coverage_radius(self, x: int) -> Fraction:
        return self._radius(x, 0)

    def _check_sub(self, sub) -> frozenset:
        sub = frozenset(sub)
        if not sub <= self.centres:
            raise ValueError(f"{sorted(sub - self.centres)} are not centres")
        return sub

    def _union(self, sub, extra: int) -> np.ndarray:
        mask = np.zeros(self.g.n, dtype=bool)
        for x in self._check_sub(sub):
            mask |= self.g.ball_mask(x, self._radius(x, extra))
        return mask

    def security_mask(self, sub) -> np.ndarray:
        return self._union(sub, 1)

    def coverage_mask(self, sub) -> np.ndarray:
        return self._union(sub, 0)

    def security(self, sub) -> frozenset:
        return mask_to_set(self.security_mask(sub))

    def coverage(self, sub) -> frozenset:
        return mask_to_set(self.coverage_mask(sub))

    def in_coverage(self, x: int, v: int) -> bool:
        d = self.g.dist(x, v)
        return d != INF and d <= self.coverage_radius(x)

    def in_security(self, x: int, v: int) -> bool:
        d = self.g.dist(x, v)
        return d != INF and d <= self.security_radius(x)

    def leak_mask(self, x: int, j: Iterable[int]) -> np.ndarray:
        if x not in self.centres:
            raise ValueError(f"{x} is not a centre")
        d = self.g.dist_matrix
        budget = self.coverage_radius(x)
        mask = np.zeros(self.g.n, dtype=bool)
        for z in j:
            dxz = int(d[x, z])
            if dxz < 0:
                continue
            r = floor_radius(budget - dxz)
            if r >= 0:
                col = d[:, z]
                mask |= (col >= 0) & (col <= r)
        for y in self.centres:
            if self.order.higher(y, x):
                mask &= ~self.g.ball_mask(y, self.coverage_radius(y))
        return mask

    def leak(self, x: int, j: Iterable[int]) -> frozenset:
        """Vertices within ``x``'s coverage budget measured through ``j``,
        minus anything a higher-priority centre already covers."""
        return mask_to_set(self.leak_mask(x, j))

    def local_assign(self, v: int) -> int:
        """Centre minimising ``dist(x, v) + penalty(x) * ell``; ties go to higher priority."""
        best = None
        for x in self.order.sort(self.centres):
            d = self.g.dist(x, v)
            if d == INF:
                continue
            score = d + self.penalty[x] * self.ell
            if best is None or score < best[0]:
                best = (score, x)
        if best is None:
            raise ValueError(f"no centre reaches vertex {v}")
        return best[1]


def security(ctx: CentreContext, sub) -> frozenset:
    return ctx.security(sub)


def coverage(ctx: CentreContext, sub) -> frozenset:
    return ctx.coverage(sub)


def leak(ctx: CentreContext, x: int, j) -> frozenset:
    return ctx.leak(x, j)


def local_assign(ctx: CentreContext, v: int) -> int:
    return ctx.local_assign(v)


def check_change_preconditions(ctx: CentreContext, j: frozenset) -> None:
    """Raise :class:`PreconditionError` unless ``j`` meets both hypotheses."""
    b = ctx.centres
    secure = ctx.security(b)
    if not is_separator(ctx.g, j & secure, b, j):
        raise PreconditionError("separation", "J ∩ S(B) does not separate B from J",
                                (sorted(j & secure),))
    for v in sorted(j - secure):
        for u in b:
            if not ctx.order.higher(u, v):
                raise PreconditionError("priority", f"centre {u} does not outrank unsecured {v}", (u, v))


def check_change_postconditions(g, order, ell, b, j, b_new, node=None) -> None:
    """Assert the four guarantees of :func:`change_providers` for ``b -> b_new``."""
    old = CentreContext(g, order, b, ell)
    new = CentreContext(g, order, b_new, ell)
    if not len(b) <= len(b_new) <= max(len(b), len(j)):
        raise ClaimError("change-providers/size",
                         f"|B|={len(b)}, |B'|={len(b_new)}, |J|={len(j)}", node)
    new_secure = new.security_mask(b_new)
    missed = [v for v in j if not new_secure[v]]
    if missed:
        raise ClaimError("change-providers/secure", f"J vertices {sorted(missed)} unsecured", node)
    fresh = j - old.security(b)
    if b_new - b != fresh:
        raise ClaimError("change-providers/new-centres",
                         f"B'∖B={sorted(b_new - b)} but J∖S(B)={sorted(fresh)}", node)
    kept_secure = new.security_mask(b & b_new) if b & b_new else np.zeros(g.n, dtype=bool)
    for x in b - b_new:
        escaped = old.leak_mask(x, j) & ~kept_secure
        if escaped.any():
            raise ClaimError("change-providers/leak",
                             f"leak of discarded {x} not secured: {mask_to_set(escaped)}", node)


def change_providers(g: Graph, order: PriorityOrder, ell, b: Iterable[int], j: Iterable[int],
                     node: Optional[int] = None) -> frozenset:
    """Replace the centre set ``b`` by one that secures the new bag ``j``.

    Vertices of ``j`` are assigned to their penalty-adjusted nearest centre;
    centres that secure nobody in ``j`` are dropped (lowest priority first)
    to make room for the unsecured vertices of ``j``, which become centres.
    """
    b, j = frozenset(b), frozenset(j)
    ell = as_scalar(ell)
    if not b:
        b_new = j
    else:
        ctx = CentreContext(g, order, b, ell)
        check_change_preconditions(ctx, j)
        secure = ctx.security_mask(b)
        owned = {}
        for v in j:
            if not secure[v]:
                # outside S(B) no centre can secure v, whichever it belongs to
                continue
            x = ctx.local_assign(v)
            if ctx.in_security(x, v):
                owned.setdefault(x, set()).add(v)
        secured = frozenset().union(*owned.values()) if owned else frozenset()
        if secured == j:
            b_new = b
        else:
            fresh = j - secured
            idle = b - owned.keys()
            m = min(len(fresh), len(idle))
            dropped = set(order.sort(idle)[len(idle) - m:]) if m else set()
            b_new = (b - dropped) | fresh
    check_change_postconditions(g, order, ell, b, j, b_new, node)
    return frozenset(b_new)


@dataclass
class CompressionResult:
    """Centre graph ``H``, its decomposition ``bags`` over the input tree, and the parts.

    ``H`` has vertex ``i`` for centre ``centres[i]``; ``parts`` and
    ``witness`` are keyed by original vertex ids.
    """

    graph: Graph
    rtd: RootedTreeDecomposition
    ell: Fraction
    k: int
    centres: tuple
    H: Graph
    bags: tuple
    parts: dict
    centre_of: tuple
    witness: tuple
    penalties: tuple = field(repr=False, default=())

    @cached_property
    def index_of(self) -> dict:
        return {x: i for i, x in enumerate(self.centres)}

    def h_decomposition(self) -> TreeDecomposition:
        """``(B_t)`` as a decomposition of ``H`` (in ``H``'s vertex ids)."""
        idx = self.index_of
        return TreeDecomposition(self.rtd.tree, tuple(frozenset(idx[x] for x in b) for b in self.bags),
                                 n=self.H.n)

    def part_list(self) -> tuple:
        """Parts in ``H``-index order."""
        return tuple(self.parts[x] for x in self.centres)

    @property
    def bound(self) -> Fraction:
        """Weak-diameter bound ``2(k+1)*ell`` met by every part."""
        return 2 * (self.k + 1) * self.ell


def _assign_parts(g, rtd, order, bags, contexts):
    centre_of = [None] * g.n
    witness = [None] * g.n
    for v in range(g.n):
        rv = rtd.root_bag[v]
        best = None
        for t in rtd.ancestors(rv):
            ctx = contexts[t]
            for x in bags[t]:
                if not rtd.is_ancestor(rtd.root_bag[x], rv):
                    continue
                if not ctx.in_coverage(x, v):
                    continue
                if best is None or order.higher(x, best[0]):
                    best = (x, t)
        if best is None:
            raise ClaimError("assignment", f"vertex {v} is covered by no eligible centre")
        centre_of[v], witness[v] = best
    return centre_of, witness


def build_compressing(g: Graph, rtd: RootedTreeDecomposition, ell) -> CompressionResult:
    ell = as_scalar(ell)
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if rtd.base.vertex_count != g.n:
        raise DecompositionError(f"decomposition covers {rtd.base.vertex_count} vertices, graph has {g.n}")
    k = rtd.base.width
    order = priority_order(g, rtd)
    bags = [None] * rtd.tree.n
    contexts = [None] * rtd.tree.n
    for t in rtd.order:
        j = rtd.bags[t]
        p = rtd.parent[t]
        if p is None:
            bags[t] = frozenset(j)
        else:
            bags[t] = change_providers(g, order, ell, bags[p], j, node=t)
            parent_ctx = contexts[p]
            if bags[t] - bags[p] != j - parent_ctx.security(bags[p]):
                raise ClaimError("new-centres", "new centres are not the unsecured bag vertices", t)
            if not len(bags[p]) <= len(bags[t]) <= max(len(bags[p]), len(j)):
                raise ClaimError("bag-sizes", f"|B_parent|={len(bags[p])}, |B_t|={len(bags[t])}", t)
        ctx = contexts[t] = CentreContext(g, order, bags[t], ell)
        sec = ctx.security_mask(bags[t])
        if not all(sec[v] for v in j):
            raise ClaimError("bag-secured", "J_t is not inside S_t(B_t)", t)
        for x in bags[t]:
            if not rtd.is_ancestor(rtd.root_bag[x], t):
                raise ClaimError("centre-root", f"root bag of centre {x} is not an ancestor", t)

    centres = tuple(sorted(set().union(*bags)))
    index = {x: i for i, x in enumerate(centres)}
    h_edges = set()
    for b in bags:
        ids = sorted(index[x] for x in b)
        h_edges.update((u, v) for i, u in enumerate(ids) for v in ids[i + 1:])
    H = Graph(len(centres), frozenset(h_edges))

    centre_of, witness = _assign_parts(g, rtd, order, bags, contexts)
    parts = {x: set() for x in centres}
    for v, x in enumerate(centre_of):
        parts[x].add(v)
    limit = (k + 1) * ell
    for x, part in parts.items():
        for v in part:
            if g.dist(x, v) > limit:
                raise ClaimError("weak-radius", f"vertex {v} is {g.dist(x, v)} from centre {x}")

    return CompressionResult(
        graph=g, rtd=rtd, ell=ell, k=k, centres=centres, H=H, bags=tuple(bags),
        parts={x: frozenset(p) for x, p in parts.items()},
        centre_of=tuple(centre_of), witness=tuple(witness),
        penalties=tuple(c.penalty for c in contexts),
    )

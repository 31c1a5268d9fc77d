"""Ground-truth oracles for small graphs.

Everything here is deliberately separate from the main code paths: the
brute-force evaluators run their own breadth-first searches over a plain
adjacency dict and recompute every zone straight from its definition.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from . import kernels
from .generators import complete_binary_tree
from .graph import Graph, as_scalar
from .treedecomp import TreeDecomposition, pd_from_layout, td_from_elimination, validate


class BudgetExceeded(ValueError):
    """The instance is larger than the oracle is willing to solve exactly."""


@dataclass(frozen=True)
class SmallGraphBudget:
    max_vertices: int = 15

    def check(self, n: int, what: str) -> None:
        if n > self.max_vertices:
            raise BudgetExceeded(f"{what}: {n} vertices exceeds budget of {self.max_vertices}")


WIDTH_BUDGET = SmallGraphBudget(15)
PARTITION_BUDGET = SmallGraphBudget(8)
_HARD_CAP = 24  # DP tables hold 2**n bytes


@dataclass(frozen=True)
class ExactWidth:
    width: int
    decomposition: TreeDecomposition


def _masks(g: Graph) -> list:
    return [sum(1 << w for w in g.adj[v]) for v in range(g.n)]


def exact_treewidth(g: Graph, budget: SmallGraphBudget = WIDTH_BUDGET) -> ExactWidth:
    """Treewidth by dynamic programming over vertex subsets, with a witness decomposition."""
    budget.check(g.n, "exact treewidth")
    SmallGraphBudget(_HARD_CAP).check(g.n, "exact treewidth")
    width, order = kernels.treewidth_dp(_masks(g), g.n)
    td = td_from_elimination(g, order)
    report = validate(g, td)
    if not report.ok or report.width != width:
        raise AssertionError(f"treewidth witness invalid: {report}")
    return ExactWidth(width, td)


def exact_pathwidth(g: Graph, budget: SmallGraphBudget = WIDTH_BUDGET) -> ExactWidth:
    """Pathwidth as the vertex separation number, with a witness path-decomposition."""
    budget.check(g.n, "exact pathwidth")
    SmallGraphBudget(_HARD_CAP).check(g.n, "exact pathwidth")
    width, layout = kernels.pathwidth_dp(_masks(g), g.n)
    td = pd_from_layout(g, layout)
    report = validate(g, td)
    if not report.ok or report.width != width:
        raise AssertionError(f"pathwidth witness invalid: {report}")
    return ExactWidth(width, td)


def _neighbours(g: Graph) -> dict:
    nb = {v: set() for v in range(g.n)}
    for u, v in g.edges:
        nb[u].add(v)
        nb[v].add(u)
    return nb


def brute_force_treewidth(g: Graph) -> int:
    """Minimum over all elimination orderings; only for tiny graphs."""
    SmallGraphBudget(8).check(g.n, "brute-force treewidth")
    if g.n == 0:
        return -1
    base = _neighbours(g)
    best = g.n - 1
    for perm in itertools.permutations(range(g.n)):
        nb = {v: set(s) for v, s in base.items()}
        worst = 0
        for v in perm:
            worst = max(worst, len(nb[v]))
            if worst >= best:
                break
            for u in nb[v]:
                nb[u] |= nb[v]
                nb[u].discard(u)
                nb[u].discard(v)
        best = min(best, worst)
    return best


def brute_force_pathwidth(g: Graph) -> int:
    """Minimum vertex separation over all layouts; only for tiny graphs."""
    SmallGraphBudget(8).check(g.n, "brute-force pathwidth")
    if g.n == 0:
        return -1
    nb = _neighbours(g)
    best = g.n
    for perm in itertools.permutations(range(g.n)):
        placed = set()
        worst = 0
        for v in perm:
            placed.add(v)
            worst = max(worst, sum(1 for u in placed if nb[u] - placed))
        best = min(best, worst)
    return best


class BruteMetric:
    """All-pairs distances by independent BFS; ``None`` means unreachable."""

    def __init__(self, g: Graph):
        self.n = g.n
        nb = _neighbours(g)
        self.nb = nb
        self.d = []
        for s in range(g.n):
            row = [None] * g.n
            row[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in nb[u]:
                    if row[w] is None:
                        row[w] = row[u] + 1
                        queue.append(w)
            self.d.append(row)

    def within(self, u: int, v: int, bound) -> bool:
        d = self.d[u][v]
        return d is not None and d <= bound

    def set_distance(self, a, b):
        ds = [self.d[u][v] for u in a for v in b if self.d[u][v] is not None]
        return min(ds) if ds else None

    # zone definitions, evaluated vertex by vertex
    @staticmethod
    def penalty(rank, b, x) -> int:
        return sum(1 for y in b if rank[y] < rank[x])

    def security(self, rank, b, sub, ell) -> set:
        return {v for v in range(self.n) for x in sub
                if self.within(x, v, (len(b) - 1 - self.penalty(rank, b, x)) * ell)}

    def coverage(self, rank, b, sub, ell) -> set:
        return {v for v in range(self.n) for x in sub
                if self.within(x, v, (len(b) - self.penalty(rank, b, x)) * ell)}

    def leak(self, rank, b, x, j, ell) -> set:
        budget = (len(b) - self.penalty(rank, b, x)) * ell
        higher = [y for y in b if rank[y] < rank[x]]
        covered = self.coverage(rank, b, higher, ell)
        out = set()
        for v in range(self.n):
            if v in covered:
                continue
            for z in j:
                dvz, dxz = self.d[v][z], self.d[x][z]
                if dvz is not None and dxz is not None and dvz <= budget - dxz:
                    out.add(v)
                    break
        return out

    def postcondition_failures(self, rank, ell, b, j, b_new) -> list:
        """Names of the centre-replacement guarantees that ``b -> b_new`` breaks."""
        ell = as_scalar(ell)
        b, j, b_new = set(b), set(j), set(b_new)
        failures = []
        if not len(b) <= len(b_new) <= max(len(b), len(j)):
            failures.append("size")
        if not j <= self.security(rank, b_new, b_new, ell):
            failures.append("secured")
        if b_new - b != j - self.security(rank, b, b, ell):
            failures.append("new-centres")
        kept = self.security(rank, b_new, b & b_new, ell)
        for x in b - b_new:
            if not self.leak(rank, b, x, j, ell) <= kept:
                failures.append(f"leak:{x}")
        return failures


def independent_compression_check(g: Graph, index: Graph, parts, ell) -> bool:
    """Whether distinct parts within ``ell`` always carry adjacent labels in ``index``."""
    ell = as_scalar(ell)
    metric = BruteMetric(g)
    parts = [set(p) for p in parts]
    for a, b in itertools.combinations(range(len(parts)), 2):
        if not parts[a] or not parts[b]:
            continue
        d = metric.set_distance(parts[a], parts[b])
        if d is not None and d <= ell and not index.has_edge(a, b):
            return False
    return True


def connected_sets(metric: BruteMetric, anchor: int, allowed: frozenset, max_wd: int) -> Iterator[frozenset]:
    """Every connected set containing ``anchor`` inside ``allowed`` with weak diameter <= ``max_wd``, once each."""
    nb = metric.nb

    def ok(s, w):
        return all(metric.within(w, u, max_wd) for u in s)

    def extend(s, cand, banned):
        yield frozenset(s)
        cand = sorted(cand)
        for i, w in enumerate(cand):
            ban = banned | set(cand[:i])
            if not ok(s, w):
                continue
            s2 = s | {w}
            cand2 = (set(cand[i + 1:]) | (nb[w] & allowed)) - s2 - ban
            yield from extend(s2, cand2, ban)

    yield from extend({anchor}, nb[anchor] & allowed, frozenset())


def connected_partitions(g: Graph, max_wd: int, metric: Optional[BruteMetric] = None) -> Iterator[list]:
    """Every partition of ``g`` into connected parts of weak diameter <= ``max_wd``.

    Parts are generated in order of their least vertex, so each partition
    appears exactly once.
    """
    metric = metric or BruteMetric(g)

    def rec(uncovered, parts):
        if not uncovered:
            yield list(parts)
            return
        anchor = min(uncovered)
        for s in connected_sets(metric, anchor, uncovered, max_wd):
            parts.append(s)
            yield from rec(uncovered - s, parts)
            parts.pop()

    yield from rec(frozenset(range(g.n)), [])


def _quotient_compressing(g: Graph, metric: BruteMetric, parts, ell) -> bool:
    owner = {v: i for i, p in enumerate(parts) for v in p}
    adjacent = {(min(owner[u], owner[v]), max(owner[u], owner[v])) for u, v in g.edges if owner[u] != owner[v]}
    for a, b in itertools.combinations(range(len(parts)), 2):
        d = metric.set_distance(parts[a], parts[b])
        if d is not None and d <= ell and (a, b) not in adjacent:
            return False
    return True


@dataclass(frozen=True)
class PartitionSearch:
    found: bool
    examined: int
    witness: Optional[tuple] = None


def find_connected_compressing_partition(g: Graph, max_wd: int, ell=2,
                                         budget: SmallGraphBudget = PARTITION_BUDGET) -> PartitionSearch:
    """Search all connected partitions with parts of weak diameter <= ``max_wd`` for an
    ``ell``-compressing one (indexed by its own quotient)."""
    budget.check(g.n, "connected partition search")
    ell = as_scalar(ell)
    metric = BruteMetric(g)
    examined = 0
    for parts in connected_partitions(g, max_wd, metric):
        examined += 1
        if _quotient_compressing(g, metric, parts, ell):
            return PartitionSearch(True, examined, tuple(sorted(tuple(sorted(p)) for p in parts)))
    return PartitionSearch(False, examined)


def counterexample_check(d: int, budget: SmallGraphBudget = PARTITION_BUDGET) -> PartitionSearch:
    """Exhaustive search on the complete binary tree of height ``d + 1``.

    ``found`` is expected to be False: no connected partition into parts of
    weak diameter at most ``d`` is 2-compressing there.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    tree = complete_binary_tree(d + 1)
    return find_connected_compressing_partition(tree, d, Fraction(2), budget)

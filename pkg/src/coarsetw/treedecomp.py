"""Tree- and path-decompositions: validation, rooting, priority orders, heuristics."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Sequence

from .graph import Graph


class DecompositionError(ValueError):
    """The decomposition is not a valid tree-decomposition."""


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed by the vertices of ``tree``.

    ``n`` is the number of vertices of the decomposed graph when known
    (it is written into ``.td`` headers and sizes ``root_bag``).
    """

    tree: Graph
    bags: tuple
    n: Optional[int] = None

    def __post_init__(self):
        if len(self.bags) != self.tree.n:
            raise DecompositionError(f"{len(self.bags)} bags for a tree on {self.tree.n} nodes")
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def vertex_count(self) -> int:
        if self.n is not None:
            return self.n
        return max((v + 1 for b in self.bags for v in b), default=0)

    def restrict(self, keep: Sequence[int]) -> "TreeDecomposition":
        """Same tree, bags intersected with ``keep`` and relabelled to ``range(len(keep))``."""
        index = {v: i for i, v in enumerate(keep)}
        bags = tuple(frozenset(index[v] for v in b if v in index) for b in self.bags)
        return TreeDecomposition(self.tree, bags, n=len(keep))


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    witness: tuple = ()

    def __str__(self):
        return f"{self.kind}: {self.message}"


@dataclass
class ValidationReport:
    width: Optional[int]
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _tree_violations(tree: Graph) -> list:
    if tree.n == 0:
        return [Violation("not-a-tree", "decomposition has no bags")]
    out = []
    if tree.m != tree.n - 1:
        out.append(Violation("not-a-tree", f"{tree.n} nodes but {tree.m} edges"))
    seen = _component(tree, 0, lambda t: True)
    if len(seen) != tree.n:
        missing = min(set(range(tree.n)) - seen)
        out.append(Violation("not-a-tree", f"tree node {missing} unreachable from node 0", (missing,)))
    return out


def _component(tree: Graph, start: int, allowed) -> set:
    seen = {start}
    stack = [start]
    while stack:
        t = stack.pop()
        for s in tree.adj[t]:
            if s not in seen and allowed(s):
                seen.add(s)
                stack.append(s)
    return seen


def _trace_violations(td: TreeDecomposition, n: int) -> list:
    out = []
    traces = [[] for _ in range(n)]
    for t, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < n:
                out.append(Violation("bad-vertex", f"bag {t} holds vertex {v} outside 0..{n - 1}", (t, v)))
            else:
                traces[v].append(t)
    for v, trace in enumerate(traces):
        if not trace:
            out.append(Violation("vertex-missing", f"vertex {v} is in no bag", (v,)))
            continue
        members = set(trace)
        if len(_component(td.tree, trace[0], members.__contains__)) != len(members):
            out.append(Violation("disconnected-trace", f"bags holding vertex {v} are not connected",
                                 (v, tuple(sorted(members)))))
    return out


def validate(g: Graph, td: TreeDecomposition) -> ValidationReport:
    """Check the tree-decomposition conditions; returns the width or every violation found."""
    violations = _tree_violations(td.tree)
    violations += _trace_violations(td, g.n)
    bag_of = {}
    for t, bag in enumerate(td.bags):
        for v in bag:
            bag_of.setdefault(v, set()).add(t)
    for u, v in sorted(g.edges):
        if not bag_of.get(u, set()) & bag_of.get(v, set()):
            violations.append(Violation("uncovered-edge", f"no bag contains edge ({u}, {v})", (u, v)))
    if violations:
        return ValidationReport(None, violations)
    return ValidationReport(td.width)


@dataclass(frozen=True)
class RootedTreeDecomposition:
    base: TreeDecomposition
    root: int
    parent: tuple
    depth: tuple
    root_bag: tuple
    order: tuple  # tree nodes, parents before children

    @property
    def bags(self) -> tuple:
        return self.base.bags

    @property
    def tree(self) -> Graph:
        return self.base.tree

    @cached_property
    def children(self) -> tuple:
        kids = [[] for _ in self.parent]
        for t in self.order:
            p = self.parent[t]
            if p is not None:
                kids[p].append(t)
        return tuple(tuple(k) for k in kids)

    @cached_property
    def _euler(self) -> tuple:
        tin = [0] * len(self.parent)
        tout = [0] * len(self.parent)
        clock = 0
        stack = [(self.root, False)]
        while stack:
            t, done = stack.pop()
            if done:
                tout[t] = clock
                continue
            tin[t] = clock
            clock += 1
            stack.append((t, True))
            for c in reversed(self.children[t]):
                stack.append((c, False))
        return tuple(tin), tuple(tout)

    def is_ancestor(self, a: int, b: int) -> bool:
        """``a`` is an ancestor of ``b`` (every node is its own ancestor)."""
        tin, tout = self._euler
        return tin[a] <= tin[b] and tout[b] <= tout[a]

    def ancestors(self, t: int) -> Iterator[int]:
        """``t``, its parent, ..., the root."""
        while t is not None:
            yield t
            t = self.parent[t]


def root_at(td: TreeDecomposition, r: int = 0) -> RootedTreeDecomposition:
    if not 0 <= r < td.tree.n:
        raise DecompositionError(f"root {r} is not a tree node")
    problems = _tree_violations(td.tree) + _trace_violations(td, td.vertex_count)
    if problems:
        raise DecompositionError("; ".join(map(str, problems)))
    parent = [None] * td.tree.n
    depth = [0] * td.tree.n
    order = [r]
    queue = deque([r])
    seen = {r}
    while queue:
        t = queue.popleft()
        for s in td.tree.adj[t]:
            if s not in seen:
                seen.add(s)
                parent[s] = t
                depth[s] = depth[t] + 1
                order.append(s)
                queue.append(s)
    n = td.vertex_count
    root_bag = [None] * n
    for t in order:
        for v in td.bags[t]:
            if root_bag[v] is None:
                root_bag[v] = t
            elif depth[root_bag[v]] == depth[t]:
                raise DecompositionError(f"vertex {v} has two shallowest bags {root_bag[v]} and {t}")
    return RootedTreeDecomposition(td, r, tuple(parent), tuple(depth), tuple(root_bag), tuple(order))


@dataclass(frozen=True)
class PriorityOrder:
    """Total order on vertices; rank 0 is the highest priority."""

    rank: tuple

    @cached_property
    def by_priority(self) -> tuple:
        return tuple(sorted(range(len(self.rank)), key=self.rank.__getitem__))

    def higher(self, u: int, v: int) -> bool:
        """``u`` has strictly higher priority than ``v``."""
        return self.rank[u] < self.rank[v]

    def best(self, vs) -> int:
        """The vertex of maximum priority among ``vs``."""
        return min(vs, key=self.rank.__getitem__)

    def sort(self, vs) -> list:
        """``vs`` from highest to lowest priority."""
        return sorted(vs, key=self.rank.__getitem__)


def priority_order(g: Graph, rtd: RootedTreeDecomposition) -> PriorityOrder:
    """Order by depth of the root bag, then by vertex id.

    A vertex whose root bag is a strict ancestor of another's sits at
    strictly smaller depth and therefore gets higher priority.
    """
    key = [(rtd.depth[rtd.root_bag[v]], v) for v in range(g.n)]
    ranked = sorted(range(g.n), key=key.__getitem__)
    rank = [0] * g.n
    for i, v in enumerate(ranked):
        rank[v] = i
    return PriorityOrder(tuple(rank))


def _contract_nested(bags: list, edges: set) -> TreeDecomposition:
    """Merge adjacent bags where one contains the other, until none remain."""
    adj = {t: set() for t in range(len(bags))}
    for s, t in edges:
        adj[s].add(t)
        adj[t].add(s)
    alive = set(range(len(bags)))
    changed = True
    while changed:
        changed = False
        for s in sorted(alive):
            for t in sorted(adj[s]):
                if bags[s] <= bags[t]:
                    for w in adj[s] - {t}:
                        adj[w].discard(s)
                        adj[w].add(t)
                        adj[t].add(w)
                    adj[t].discard(s)
                    del adj[s]
                    alive.discard(s)
                    changed = True
                    break
    keep = sorted(alive)
    index = {t: i for i, t in enumerate(keep)}
    tree_edges = {(index[s], index[t]) for s in keep for t in adj[s] if s < t}
    return TreeDecomposition(Graph.from_edges(len(keep), tree_edges), tuple(bags[t] for t in keep))


def td_from_elimination(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Clique-tree of the elimination ordering ``order`` (first entry eliminated first)."""
    if g.n == 0:
        return TreeDecomposition(Graph(1), (frozenset(),), n=0)
    pos = {v: i for i, v in enumerate(order)}
    if sorted(pos) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    nbrs = [set(a) for a in g.adj]
    bags = []
    parent_of = []
    for v in order:
        later = nbrs[v]
        bags.append(frozenset(later | {v}))
        parent_of.append(min(later, key=pos.__getitem__) if later else None)
        for u in later:
            nbrs[u] |= later - {u}
            nbrs[u].discard(v)
    edges = set()
    roots = []
    for i, p in enumerate(parent_of):
        if p is None:
            roots.append(i)
        else:
            edges.add((i, pos[p]))
    edges |= set(zip(roots, roots[1:]))
    td = _contract_nested(bags, edges)
    return TreeDecomposition(td.tree, td.bags, n=g.n)


def _elimination_order(g: Graph, strategy: str) -> list:
    if strategy not in ("min-fill", "min-degree"):
        raise ValueError(f"unknown strategy {strategy!r}")
    nbrs = [set(a) for a in g.adj]
    remaining = set(range(g.n))
    order = []

    def fill(v):
        ns = sorted(nbrs[v])
        return sum(1 for i, a in enumerate(ns) for b in ns[i + 1:] if b not in nbrs[a])

    cost = fill if strategy == "min-fill" else (lambda v: len(nbrs[v]))
    while remaining:
        v = min(remaining, key=lambda u: (cost(u), len(nbrs[u]), u))
        order.append(v)
        remaining.discard(v)
        for u in nbrs[v]:
            nbrs[u] |= nbrs[v] - {u}
            nbrs[u].discard(v)
    return order


def heuristic_td(g: Graph, strategy: str = "min-fill") -> TreeDecomposition:
    """Tree-decomposition from a greedy min-fill or min-degree elimination ordering."""
    return td_from_elimination(g, _elimination_order(g, strategy))


def pd_from_layout(g: Graph, layout: Sequence[int]) -> TreeDecomposition:
    """Path-decomposition of a linear layout.

    Bag ``i`` holds ``layout[i]`` plus every earlier vertex with a neighbour
    at position ``i`` or later; its width is the layout's vertex separation.
    """
    if g.n == 0:
        return TreeDecomposition(Graph(1), (frozenset(),), n=0)
    pos = {v: i for i, v in enumerate(layout)}
    if sorted(pos) != list(range(g.n)):
        raise ValueError("layout must be a permutation of the vertices")
    last = [max([pos[w] for w in g.adj[v]] + [pos[v]]) for v in range(g.n)]
    bags = []
    active = set()
    for i, v in enumerate(layout):
        active = {u for u in active if last[u] >= i}
        bags.append(frozenset(active | {v}))
        active.add(v)
    edges = {(i, i + 1) for i in range(len(bags) - 1)}
    td = _contract_nested(bags, edges)
    return TreeDecomposition(td.tree, td.bags, n=g.n)


def bfs_layout(g: Graph) -> list:
    layout = []
    seen = set()
    for s in range(g.n):
        if s in seen:
            continue
        seen.add(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            layout.append(u)
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return layout


def heuristic_pd(g: Graph) -> TreeDecomposition:
    """Path-decomposition from the left-to-right interval sweep of a BFS layout."""
    return pd_from_layout(g, bfs_layout(g))


def is_path_decomposition(td: TreeDecomposition) -> bool:
    return all(len(a) <= 2 for a in td.tree.adj)

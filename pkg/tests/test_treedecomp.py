import random

import pytest

from coarsetw import generators
from coarsetw.graph import Graph
from coarsetw.oracles import exact_treewidth
from coarsetw.treedecomp import (DecompositionError, TreeDecomposition, bfs_layout, heuristic_pd,
                                 heuristic_td, is_path_decomposition, pd_from_layout, priority_order,
                                 root_at, td_from_elimination, validate)


def single_bag(g):
    return TreeDecomposition(Graph(1), (frozenset(g.vertices),))


def p3_pair():
    return TreeDecomposition(generators.path(2), (frozenset({0, 1}), frozenset({1, 2})))


class TestValidate:
    def test_single_bag(self, c6):
        assert validate(c6, single_bag(c6)).width == 5

    def test_complete_graph(self):
        k6 = generators.complete(6)
        report = validate(k6, single_bag(k6))
        assert report.ok and report.width == 5

    def test_p3_pair(self, p3):
        assert validate(p3, p3_pair()).width == 1

    def test_uncovered_edge(self, c6):
        td = TreeDecomposition(generators.path(2), (frozenset({0, 1, 2, 3}), frozenset({3, 4, 5})))
        kinds = {v.kind for v in validate(c6, td).violations}
        assert kinds == {"uncovered-edge"}

    def test_missing_vertex(self, p3):
        td = TreeDecomposition(Graph(1), (frozenset({0, 1}),))
        assert "vertex-missing" in {v.kind for v in validate(p3, td).violations}

    def test_disconnected_trace(self, p3):
        td = TreeDecomposition(generators.path(3), (frozenset({0, 1}), frozenset({1, 2}), frozenset({0})))
        assert "disconnected-trace" in {v.kind for v in validate(p3, td).violations}

    def test_cyclic_tree(self, p3):
        td = TreeDecomposition(generators.cycle(3), tuple(frozenset({0, 1, 2}) for _ in range(3)))
        assert "not-a-tree" in {v.kind for v in validate(p3, td).violations}

    def test_forest_is_not_a_tree(self, p3):
        td = TreeDecomposition(Graph(2), (frozenset({0, 1}), frozenset({1, 2})))
        assert not validate(p3, td).ok

    def test_bag_count_must_match_tree(self):
        with pytest.raises(DecompositionError):
            TreeDecomposition(Graph(2), (frozenset({0}),))


class TestRooting:
    def test_single_node(self, c6):
        rtd = root_at(single_bag(c6))
        assert set(rtd.root_bag) == {0}

    def test_left_root(self):
        rtd = root_at(p3_pair(), 0)
        assert rtd.root_bag == (0, 0, 1)

    def test_right_root(self):
        rtd = root_at(p3_pair(), 1)
        assert rtd.root_bag[2] == rtd.root_bag[1] == 1
        assert rtd.root_bag[0] == 0

    def test_root_bag_dominates_trace(self, rng):
        for _ in range(20):
            g = generators.random_partial_ktree(25, 3, 0.7, rng)
            td = heuristic_td(g)
            rtd = root_at(td, rng.randrange(td.tree.n))
            for v in g.vertices:
                for t, b in enumerate(td.bags):
                    if v in b:
                        assert rtd.is_ancestor(rtd.root_bag[v], t)

    def test_ancestors_reach_root(self, rng):
        g = generators.random_tree(30, rng)
        rtd = root_at(heuristic_td(g), 3)
        for t in range(rtd.tree.n):
            chain = list(rtd.ancestors(t))
            assert chain[0] == t and chain[-1] == 3
            assert [rtd.depth[s] for s in chain] == list(range(rtd.depth[t], -1, -1))


class TestPriority:
    def test_root_bag_only_by_id(self, c6):
        order = priority_order(c6, root_at(single_bag(c6)))
        assert order.by_priority == tuple(range(6))

    def test_ancestor_rule(self, rng):
        for _ in range(20):
            g = generators.gnp(30, 0.1, rng)
            rtd = root_at(heuristic_td(g), 0)
            order = priority_order(g, rtd)
            assert sorted(order.rank) == list(range(g.n))
            for u in g.vertices:
                for v in g.vertices:
                    ru, rv = rtd.root_bag[u], rtd.root_bag[v]
                    if ru != rv and rtd.is_ancestor(ru, rv):
                        assert order.higher(u, v)


class TestHeuristics:
    @pytest.mark.parametrize("strategy", ["min-fill", "min-degree"])
    def test_tree_width_one(self, strategy, rng):
        for _ in range(10):
            g = generators.random_tree(rng.randint(2, 40), rng)
            td = heuristic_td(g, strategy)
            assert validate(g, td).ok
            assert td.width == 1

    def test_k5(self):
        assert heuristic_td(generators.complete(5)).width == 4

    def test_c6(self, c6):
        assert heuristic_td(c6).width == exact_treewidth(c6).width == 2

    def test_disconnected_input(self):
        g = Graph.from_edges(6, [(0, 1), (2, 3)])
        td = heuristic_td(g)
        report = validate(g, td)
        assert report.ok and report.width == 1

    def test_unknown_strategy(self, c6):
        with pytest.raises(ValueError):
            heuristic_td(c6, "random")

    def test_elimination_any_order_valid(self, rng):
        for _ in range(20):
            g = generators.gnp(12, 0.3, rng)
            order = list(range(g.n))
            rng.shuffle(order)
            assert validate(g, td_from_elimination(g, order)).ok


class TestPaths:
    def test_shapes(self):
        one = TreeDecomposition(Graph(1), (frozenset({0}),))
        line = TreeDecomposition(generators.path(3), tuple(frozenset({i}) for i in range(3)))
        star = TreeDecomposition(generators.star(3), tuple(frozenset({i}) for i in range(4)))
        assert is_path_decomposition(one)
        assert is_path_decomposition(line)
        assert not is_path_decomposition(star)

    def test_layout_gives_valid_path(self, rng):
        for _ in range(20):
            g = generators.gnp(rng.randint(1, 20), 0.2, rng)
            pd = pd_from_layout(g, bfs_layout(g))
            assert validate(g, pd).ok and is_path_decomposition(pd)
            assert validate(g, heuristic_pd(g)).ok

    def test_caterpillar_spine_layout(self):
        g = generators.caterpillar(5, 2)
        layout = [v for s in range(5) for v in (s, 5 + 2 * s, 6 + 2 * s)]
        pd = pd_from_layout(g, layout)
        assert is_path_decomposition(pd) and validate(g, pd).width == 1
        assert heuristic_pd(g).width >= 1

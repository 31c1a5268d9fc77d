"""Property-based checks of the construction and its independent verifiers."""
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from coarsetw.compress import build_compressing
from coarsetw.graph import Graph, graph_power, neighbourhood
from coarsetw.oracles import BruteMetric, independent_compression_check
from coarsetw.pace import dump_gr, parse_gr
from coarsetw.qi import check_qi, cluster_partition, qi_from_partition
from coarsetw.treedecomp import heuristic_td, priority_order, root_at, validate
from coarsetw.verify import verify_result

PROPS = settings(max_examples=120, deadline=None, suppress_health_check=[HealthCheck.too_slow])

ELL = st.fractions(min_value=0, max_value=4, max_denominator=3)


@st.composite
def graphs(draw, max_n=18):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), max_size=2 * n, unique=True)) if pairs else []
    return Graph.from_edges(n, edges)


@st.composite
def rooted(draw):
    g = draw(graphs())
    td = heuristic_td(g, draw(st.sampled_from(["min-fill", "min-degree"])))
    return g, root_at(td, draw(st.integers(0, td.tree.n - 1)))


@PROPS
@given(rooted(), ELL)
def test_build_verifies(inst, ell):
    g, rtd = inst
    res = build_compressing(g, rtd, ell)
    assert verify_result(g, rtd, res, rtd.base.width, ell).ok
    assert independent_compression_check(g, res.H, res.part_list(), ell)


@PROPS
@given(rooted(), ELL)
def test_change_postconditions(inst, ell):
    g, rtd = inst
    res = build_compressing(g, rtd, ell)
    rank = priority_order(g, rtd).rank
    bm = BruteMetric(g)
    for t in rtd.order:
        p = rtd.parent[t]
        if p is not None:
            assert bm.postcondition_failures(rank, ell, res.bags[p], rtd.bags[t], res.bags[t]) == []


@PROPS
@given(rooted(), ELL)
def test_centre_traces_are_subtrees(inst, ell):
    g, rtd = inst
    res = build_compressing(g, rtd, ell)
    for x in res.centres:
        holders = {t for t, b in enumerate(res.bags) if x in b}
        top = min(holders, key=rtd.depth.__getitem__)
        assert top == rtd.root_bag[x]
        assert all(rtd.parent[t] in holders for t in holders if t != top)


@PROPS
@given(graphs(), st.fractions(min_value=0, max_value=5, max_denominator=2))
def test_power_matches_distances(g, ell):
    p = graph_power(g, ell)
    for u in g.vertices:
        for v in g.vertices:
            if u < v:
                assert p.has_edge(u, v) == (g.dist(u, v) <= ell)


@PROPS
@given(graphs(), st.integers(0, 4), st.integers(0, 4))
def test_neighbourhood_monotone(g, r1, r2):
    lo, hi = sorted((r1, r2))
    assert neighbourhood(g, {0}, lo) <= neighbourhood(g, {0}, hi)


@PROPS
@given(graphs(max_n=25))
def test_heuristic_valid_and_roundtrip(g):
    td = heuristic_td(g)
    assert validate(g, td).ok
    assert parse_gr(dump_gr(g)) == g


@PROPS
@given(graphs(max_n=14), st.integers(0, 3))
def test_cluster_quotient_is_qi(g, d):
    if any(x < 0 for x in g.dist_matrix[0]):
        return
    m = qi_from_partition(g, cluster_partition(g, d), d)
    assert check_qi(m) == []
    assert m.c == Fraction(d + 1)

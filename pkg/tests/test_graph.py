import pytest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from biholes.graph import (
    GraphInputError,
    Bihole,
    build_graph,
    components,
    degree_profile,
    gen_extremal_paths,
    gen_random_bounded,
    gen_random_edges,
    induced_subgraph,
    is_bihole,
)


def complete(n):
    return build_graph(n, n, [(a, b) for a in range(n) for b in range(n)])


def matching(n):
    return build_graph(n, n, [(i, i) for i in range(n)])


class TestBuildGraph:
    def test_empty(self):
        g = build_graph(3, 3, [])
        assert g.m == 0
        assert g.n_a == g.n_b == 3
        assert g.balanced

    def test_complete_k33(self):
        g = complete(3)
        assert g.m == 9
        assert all(g.deg_a(u) == 3 for u in range(3))
        assert all(g.deg_b(v) == 3 for v in range(3))

    def test_duplicate_edges_dropped(self):
        g = build_graph(2, 1, [(0, 0), (1, 0), (0, 0)])
        assert g.m == 2

    def test_out_of_range(self):
        with pytest.raises(GraphInputError):
            build_graph(2, 2, [(2, 0)])
        with pytest.raises(GraphInputError):
            build_graph(2, 2, [(0, -1)])

    def test_negative_counts(self):
        with pytest.raises(GraphInputError):
            build_graph(-1, 2, [])

    def test_adjacency_sorted_and_mirrored(self):
        g = build_graph(2, 3, [(0, 2), (0, 0), (1, 1)])
        assert g.adj_a[0] == (0, 2)
        assert g.adj_b[0] == (0,)
        assert g.adj_b[1] == (1,)
        assert g.adj_b[2] == (0,)

    def test_swapped(self):
        g = build_graph(2, 3, [(0, 2), (1, 1)])
        h = g.swapped()
        assert (h.n_a, h.n_b) == (3, 2)
        assert set(h.edges()) == {(2, 0), (1, 1)}
        assert h.swapped() == g


class TestDegreeProfile:
    def test_k33(self):
        prof = degree_profile(complete(3), "A")
        assert prof.counts == {3: 3}
        assert prof.max_degree == prof.min_degree == 3

    def test_extremal_paths_profile(self):
        prof = degree_profile(gen_extremal_paths(2), "A")
        assert prof.counts == {0: 2, 2: 8}

    def test_matching(self):
        prof = degree_profile(matching(3), "A")
        assert prof.counts == {1: 3}

    def test_bad_side(self):
        with pytest.raises(GraphInputError):
            degree_profile(matching(2), "C")


class TestComponents:
    def test_three_disjoint_edges(self):
        comps = components(matching(3))
        assert len(comps) == 3
        assert all(c.a_size == c.b_size == 1 for c in comps)
        assert all(c.is_tree for c in comps)

    def test_extremal_paths(self):
        comps = components(gen_extremal_paths(2))
        singles = [c for c in comps if c.a_size == 1 and c.b_size == 0]
        paths = [c for c in comps if c.b_excess == 1]
        assert len(singles) == 2
        assert len(paths) == 2
        assert all(c.is_tree for c in paths)
        assert sum(c.b_excess for c in comps if c.b_excess > 0) == 2 == len(singles)

    def test_k33_single_component(self):
        comps = components(complete(3))
        assert len(comps) == 1
        assert comps[0].edge_count == 9
        assert not comps[0].is_tree

    def test_isolated_b_singleton(self):
        g = build_graph(1, 2, [(0, 0)])
        comps = components(g)
        assert len(comps) == 2
        lone = [c for c in comps if c.a_size == 0][0]
        assert lone.b_vertices == (1,)


class TestIsBihole:
    def test_empty_pair(self):
        assert is_bihole(matching(3), set(), set())

    def test_unbalanced_pair(self):
        g = matching(3)
        assert not is_bihole(g, {0}, {1, 2})
        assert not is_bihole(g, {0, 1}, {2})

    def test_valid_pair(self):
        assert is_bihole(matching(3), {0}, {2})

    def test_edge_blocks(self):
        assert not is_bihole(matching(3), {0}, {0})

    def test_range_check(self):
        with pytest.raises(GraphInputError):
            is_bihole(matching(2), {5}, {0})


class TestGenerators:
    def test_extremal_paths_i2(self):
        g = gen_extremal_paths(2)
        assert g.n_a == g.n_b == 10
        assert g.m == 16

    def test_extremal_paths_i4(self):
        g = gen_extremal_paths(4)
        assert g.n_a == g.n_b == 36
        assert degree_profile(g, "A").counts == {0: 4, 2: 32}

    def test_extremal_paths_rejects_odd(self):
        for bad in (1, 3, 0, -2):
            with pytest.raises(GraphInputError):
                gen_extremal_paths(bad)

    def test_bounded_zero_delta(self):
        g = gen_random_bounded(10, 0, Fraction(1, 2), 7)
        assert g.m == 0

    def test_bounded_saturation(self):
        g = gen_random_bounded(10, 3, 1, 7)
        assert all(g.deg_a(u) == 3 for u in range(10))

    def test_bounded_deterministic(self):
        a = gen_random_bounded(10, 3, Fraction(1, 2), 42)
        b = gen_random_bounded(10, 3, Fraction(1, 2), 42)
        c = gen_random_bounded(10, 3, Fraction(1, 2), 43)
        assert a == b
        assert a != c

    def test_bounded_respects_delta(self):
        g = gen_random_bounded(20, 3, Fraction(3, 4), 5)
        assert g.delta_a <= 3

    def test_random_edges_extremes(self):
        assert gen_random_edges(5, 0, 3).m == 0
        g = gen_random_edges(5, 25, 3)
        assert g == complete(5)

    def test_random_edges_average_degree(self):
        g = gen_random_edges(5, 10, 9)
        assert g.m == 10
        assert g.avg_degree == Fraction(2)

    def test_random_edges_too_many(self):
        with pytest.raises(GraphInputError):
            gen_random_edges(3, 10, 0)

    def test_random_edges_deterministic(self):
        assert gen_random_edges(8, 20, 1) == gen_random_edges(8, 20, 1)


class TestInducedSubgraph:
    def test_maps_back(self):
        g = gen_extremal_paths(2)
        sub, a_ids, b_ids = induced_subgraph(g, range(2, 6), range(0, 5))
        assert sub.n_a == 4 and sub.n_b == 5
        for lu, u in enumerate(a_ids):
            for lv in sub.adj_a[lu]:
                assert b_ids[lv] in g.adj_a[u]

    def test_edge_count_matches_manual(self):
        g = build_graph(3, 3, [(0, 0), (1, 1), (2, 2), (0, 1)])
        sub, _, _ = induced_subgraph(g, [0, 1], [0, 1])
        assert sub.m == 3


edge_lists = st.lists(
    st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=30
)


@given(edge_lists)
@settings(max_examples=60, deadline=None)
def test_profile_sums_reconcile_with_m(edges):
    g = build_graph(8, 8, edges)
    for side in ("A", "B"):
        prof = degree_profile(g, side)
        assert prof.total == 8
        assert prof.edge_sum == g.m


@given(edge_lists)
@settings(max_examples=60, deadline=None)
def test_components_partition(edges):
    g = build_graph(8, 8, edges)
    comps = components(g)
    all_a = [u for c in comps for u in c.a_vertices]
    all_b = [v for c in comps for v in c.b_vertices]
    assert sorted(all_a) == list(range(8))
    assert sorted(all_b) == list(range(8))
    assert sum(c.edge_count for c in comps) == g.m


@given(
    edge_lists,
    st.sets(st.integers(0, 7), max_size=8),
    st.sets(st.integers(0, 7), max_size=8),
)
@settings(max_examples=80, deadline=None)
def test_is_bihole_matches_naive_double_loop(edges, s, t):
    g = build_graph(8, 8, edges)
    naive = len(s) == len(t) and not any(
        (a in s and b in t) for a, b in g.edges()
    )
    assert is_bihole(g, s, t) == naive


def test_bihole_type_rejects_unbalanced():
    with pytest.raises(GraphInputError):
        Bihole(frozenset({1}), frozenset())


def test_bihole_order():
    bh = Bihole(frozenset({0, 1}), frozenset({3, 4}))
    assert bh.order == 2
    assert bh.sorted_pair() == ([0, 1], [3, 4])

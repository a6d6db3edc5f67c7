import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from gpwkit.errors import GrowthError, SizeBoundError
from gpwkit.graph import Graph, cycle_graph, path_graph, star_graph
from gpwkit.growth import (ALGORITHMS, GrowthSpec, Net, degree_stats, edge_coincide, fib, grow, planting_gap,
                           predicted_counts, r_seq, semigroup_check, split_similarity_check, vertex_coincide)


def random_tree(n: int, seed: int) -> Graph:
    return Graph.from_networkx(nx.random_labeled_tree(n, seed=seed))


@st.composite
def connected(draw, max_n=6):
    n = draw(st.integers(2, max_n))
    seed = draw(st.integers(0, 10 ** 6))
    g = nx.random_labeled_tree(n, seed=seed)
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=4))
    g.add_edges_from((a, b) for a, b in extra if a != b)
    return Graph.from_networkx(g)


@settings(max_examples=40, deadline=None)
@given(connected(), connected())
def test_vertex_coincide_sizes(x, y):
    # every host vertex absorbs one vertex of its copy
    out = vertex_coincide(Net.from_graph(x, x.vertices[0]), Net.from_graph(y, y.vertices[0]))
    assert out.n == y.p * x.p
    assert out.m == y.q + y.p * x.q


@settings(max_examples=40, deadline=None)
@given(connected(), connected(), st.sampled_from(["lex", "reverse"]))
def test_edge_coincide_sizes(x, y, orientation):
    out = edge_coincide(Net.from_graph(x, active_edge=x.edges[0]), Net.from_graph(y, active_edge=y.edges[0]),
                        orientation)
    assert out.n == y.p + y.q * (x.p - 2)
    assert out.m == y.q * x.q


def test_edge_coincide_random_orientation_keeps_counts():
    x = Net.from_graph(path_graph(4), active_edge=("v0", "v1"))
    y = Net.from_graph(cycle_graph(5), active_edge=("v0", "v1"))
    a = edge_coincide(x, y, rng=random.Random(1))
    b = edge_coincide(x, y, "lex")
    assert (a.n, a.m) == (b.n, b.m)


@pytest.mark.parametrize("algo", ALGORITHMS)
@pytest.mark.parametrize("seed", [path_graph(3), star_graph(3), path_graph(4)], ids=["P3", "S3", "P4"])
def test_closed_forms_match_simulation(algo, seed):
    tr = grow(GrowthSpec(algo, seed, 3))
    assert all(s.matches for s in tr.steps), tr.to_text()
    assert tr.final.n_v == predicted_counts(GrowthSpec(algo, seed, 3), 3)[0]


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_trees_stay_trees(algo):
    for s in grow(GrowthSpec(algo, random_tree(5, 7), 2)).steps:
        h = s.graph.to_networkx()
        assert nx.is_tree(h)


def test_leaf_a_adds_one_vertex_per_step():
    # replacing a leaf pair by the seed through one internal vertex
    tr = grow(GrowthSpec("leaf_A", path_graph(3), 4))
    assert [s.n_v for s in tr.steps] == [3, 4, 5, 6, 7]


def test_vertex_coincide_matches_networkx_rooted_product():
    x, y = path_graph(3), cycle_graph(4)
    out = vertex_coincide(Net.from_graph(x, "v0"), Net.from_graph(y, "v0"))
    ref = nx.rooted_product(y.to_networkx(), x.to_networkx(), "v0")
    h = nx.Graph()
    h.add_nodes_from(range(out.n))
    h.add_edges_from(out.edges)
    assert nx.is_isomorphic(h, ref)


def test_r_sequence_is_fibonacci_like():
    assert [r_seq(t) for t in range(6)] == [1, 2, 3, 5, 8, 13]
    assert [fib(k) for k in range(1, 8)] == [1, 1, 2, 3, 5, 8, 13]


def test_size_bound():
    with pytest.raises(SizeBoundError):
        grow(GrowthSpec("vcoin_III", path_graph(4), 6))


def test_bad_spec():
    with pytest.raises(GrowthError):
        GrowthSpec("nope", path_graph(3), 1)
    with pytest.raises(GrowthError):
        GrowthSpec("leaf_A", path_graph(3), -1)
    with pytest.raises(GrowthError):
        GrowthSpec("leaf_A", path_graph(3), 1, active_vertex="zz")


def test_degree_stats_cycle():
    st_ = degree_stats(cycle_graph(6))
    assert st_.histogram == {2: 6}
    assert st_.P(2) == 1.0
    assert st_.P_cum(1) == 1.0 and st_.P_cum(2) == 0.0


def test_degree_stats_star_cumulative():
    st_ = degree_stats(star_graph(5))
    assert st_.histogram == {1: 5, 5: 1}
    assert st_.P_cum(1) == pytest.approx(1 / 6)


def test_degree_fit_on_exact_power_law():
    # a graph realising degree counts 1600 / k^2 exactly; the sequence sum is even
    counts = {1: 1600, 2: 400, 4: 100, 5: 64}
    seq = [k for k, c in counts.items() for _ in range(c)]
    g = nx.havel_hakimi_graph(seq)
    st_ = degree_stats(Graph.from_networkx(g), (1, 5))
    assert st_.histogram == counts
    assert st_.alpha == pytest.approx(2.0, abs=1e-9)


def test_degree_fit_needs_points():
    with pytest.raises(GrowthError):
        degree_stats(cycle_graph(5), (2, 2))


def test_semigroup_paths():
    v = semigroup_check([path_graph(2), path_graph(3)])
    assert v.associative
    assert not v.commutative
    assert v.counterexamples


def test_semigroup_single_graph_commutes():
    assert semigroup_check([path_graph(3)]).ok


def test_split_similarity_vertex_mode():
    # C6 decomposes into three edge-disjoint paths of length two
    w = split_similarity_check(cycle_graph(6), path_graph(3), "vertex")
    assert w is not None and w.m == 3
    cover = set().union(*w.pieces)
    assert cover == set(cycle_graph(6).edges)


def test_split_similarity_impossible():
    assert split_similarity_check(cycle_graph(5), path_graph(3), "vertex") is None


def test_planting_gap_returns_values():
    gap = planting_gap(path_graph(3), 1)
    assert set(gap) == {"lhs", "dot_vertex_levels", "dot_edge_levels"}
    with pytest.raises(GrowthError):
        planting_gap(path_graph(3), 0)

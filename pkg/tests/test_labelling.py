import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from gpwkit.errors import LabellingError
from gpwkit.graph import Graph, cycle_graph, path_graph
from gpwkit.labelling import (TRANSFORM_TARGETS, Labelling, dual, enumerate_labellings, format_labelling,
                              inverse_transform, parse_labelling, search, source_shape, transform, verify)


def small_connected():
    return [h for h in nx.graph_atlas_g()[1:] if 2 <= h.number_of_nodes() <= 5 and nx.is_connected(h)]


def brute_difference(h, hi, target):
    """Is there an injection V -> [0, hi] whose edge differences are exactly target?"""
    nodes = list(h.nodes)
    for vals in itertools.permutations(range(hi + 1), len(nodes)):
        f = dict(zip(nodes, vals))
        d = sorted(abs(f[a] - f[b]) for a, b in h.edges)
        if d == target:
            return True
    return False


@pytest.mark.parametrize("h", small_connected(), ids=lambda h: f"n{h.number_of_nodes()}m{h.number_of_edges()}")
def test_graceful_search_agrees_with_brute_force(h):
    g = Graph.from_networkx(h)
    q = g.q
    r = search(g, "graceful")
    assert r.found == brute_difference(h, q, list(range(1, q + 1)))
    if r.found:
        assert verify(g, r.labelling).ok


@pytest.mark.parametrize("h", [h for h in small_connected() if nx.is_bipartite(h)],
                         ids=lambda h: f"n{h.number_of_nodes()}m{h.number_of_edges()}")
def test_odd_graceful_search_agrees_with_brute_force(h):
    g = Graph.from_networkx(h)
    q = g.q
    r = search(g, "odd_graceful")
    assert r.found == brute_difference(h, 2 * q - 1, list(range(1, 2 * q, 2)))


def test_cycle_graceful_condition():
    # C_n is graceful exactly when n is 0 or 3 mod 4
    for n in range(3, 10):
        assert search(cycle_graph(n), "graceful").found == (n % 4 in (0, 3))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 9), st.integers(0, 10 ** 6))
def test_search_results_verify_and_dual_is_involution(n, seed):
    g = Graph.from_networkx(nx.random_labeled_tree(n, seed=seed))
    r = search(g, "graceful")
    assert r.found and verify(g, r.labelling).ok
    d = dual(r.labelling)
    assert verify(g, d).ok
    assert dual(d) == r.labelling


def _sogl_trees(max_n):
    for n in range(2, max_n + 1):
        for h in nx.nonisomorphic_trees(n):
            g = Graph.from_networkx(h)
            r = search(g, "set_ordered_graceful")
            if r.found:
                yield g, r.labelling


@pytest.mark.parametrize("target", TRANSFORM_TARGETS)
def test_transforms_verify_and_invert(target):
    # (1,1) has no arithmetic labelling even on P4; see the test below
    params = (2, 3) if target == "kd_arithmetic" else None
    for g, lab in _sogl_trees(7):
        out = transform(g, lab, target, params)
        v = verify(g, out)
        assert v.ok, (target, g.edges, v.to_text())
        back = inverse_transform(g, out, source_shape(g, lab), params)
        assert back.vertex_values == lab.vertex_values


def test_p4_has_no_unit_arithmetic_labelling():
    # sums 1 and 2 put label 0 between labels 1 and 2; sum 3 then needs a
    # repeated label or a third neighbour of 0
    r = search(path_graph(4), "kd_arithmetic", (1, 1))
    assert not r.found and r.status == "exhausted"
    assert search(path_graph(4), "kd_arithmetic", (2, 3)).found


def test_enumerate_graceful_p3():
    # P3: the middle vertex is 0 or 2 with one end at the other extreme
    labs = enumerate_labellings(path_graph(3), "graceful")
    assert len(labs) == 4
    assert all(verify(path_graph(3), x).ok for x in labs)


def test_format_parse_round_trip():
    lab = Labelling.make("kd_graceful", {"a": 0, "b": 3}, params=(2, 1))
    assert parse_labelling(format_labelling(lab)) == lab


def test_verify_reports_clauses():
    g = path_graph(3)
    bad = Labelling.make("graceful", {"v0": 0, "v1": 1, "v2": 2})
    v = verify(g, bad)
    assert not v.ok and "edge-set" in v.clauses


def test_kind_errors():
    with pytest.raises(LabellingError):
        Labelling.make("not_a_kind", {})
    with pytest.raises(LabellingError):
        Labelling.make("graceful", {"a": 0}, params=(1, 1))
    with pytest.raises(LabellingError):
        search(cycle_graph(5), "set_ordered_graceful")


def test_stored_flawed_labelling_verifies(t4476):
    g, lab = t4476
    v = verify(g, lab)
    assert v.ok
    assert v.constants["missing"] == [3]

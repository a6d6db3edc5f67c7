import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from gpwkit.corpus import seed_corpus
from gpwkit.errors import DirectedError
from gpwkit.graph import Graph
from gpwkit.directed import (DirectedGraph, DirectedLabelling, directed_matrix, directed_serialize,
                             orient_by_labels, orient_from_sogl, parse_arcs, verify_directed)
from gpwkit.labelling import parse_labelling, search
from gpwkit.matrix import TopsnutMatrix

# printed matrices for the half-directed and fully directed T4476
HALF_ROWS = ((6, 6, 7, 7, 2, 9, 10, 10, 10), (1, 2, 4, 5, -6, 7, 8, 9, 10), (5, 4, 3, 2, 8, 2, 2, 1, 0))
FULL_ROWS = ((6, 4, 7, 2, 2, 9, 10, 1, 10), (1, -2, 4, -5, -6, 7, 8, -9, 10), (5, 6, 3, 7, 8, 2, 2, 10, 0))
HALF_O1_PRINTED = "66772910101010987x65421543282"


def _load(code):
    c = seed_corpus()
    g = c.get(code)
    lab = parse_labelling(c.labellings[code][0])
    return DirectedGraph.from_graph(g), lab.vertex_values


@pytest.mark.parametrize("code,kind,rows", [("4476d1", "flawed_half_directed_graceful", HALF_ROWS),
                                            ("4476d2", "flawed_directed_graceful", FULL_ROWS)])
def test_printed_matrices(code, kind, rows):
    dg, f = _load(code)
    dl = DirectedLabelling(kind, f)
    assert verify_directed(dg, dl).ok
    assert directed_matrix(dg, dl).rows() == rows


def test_half_directed_string_starts_with_printed_one():
    # the printed string stops three symbols early; the matrix itself agrees
    dg, f = _load("4476d1")
    m = directed_matrix(dg, DirectedLabelling("flawed_half_directed_graceful", f))
    text = directed_serialize(m, "O1").text
    assert text.startswith(HALF_O1_PRINTED)
    assert "x6" in text


def test_full_digraph_not_uniform():
    dg, f = _load("4476d2")
    v = verify_directed(dg, DirectedLabelling("flawed_directed_graceful", f))
    assert v.constants["uniform"] == "none"
    assert v.constants["f_minus"] == [-9, -6, -5, -2]
    bad = verify_directed(dg, DirectedLabelling("flawed_directed_graceful", f, uniform="+"))
    assert "uniform" in bad.clauses


def test_single_arc_column():
    dg = DirectedGraph(("a", "b"), (("a", "b"),))
    dl = DirectedLabelling("directed_graceful", {"a": 1, "b": 0})
    assert directed_matrix(dg, dl).columns == ((1, 1, 0),)


def test_negative_entry_escape():
    m = TopsnutMatrix.from_rows([0], [-1], [1])
    assert "x1" in directed_serialize(m, "O1").text


def test_positive_matrix_serializes_like_undirected():
    from gpwkit.matrix import serialize_o
    m = TopsnutMatrix.from_rows([3, 3], [1, 2], [2, 1])
    for algo in ("O1", "O2", "O3", "O4"):
        assert directed_serialize(m, algo).text == serialize_o(m, algo).text


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 9), st.integers(0, 10 ** 6), st.data())
def test_rows_identity_for_any_orientation(n, seed, data):
    t = Graph.from_networkx(nx.random_labeled_tree(n, seed=seed))
    r = search(t, "graceful")
    assert r.found
    f = r.labelling.vertex_values
    flips = data.draw(st.lists(st.booleans(), min_size=t.q, max_size=t.q))
    arcs = tuple((b, a) if fl else (a, b) for (a, b), fl in zip(t.edges, flips))
    dg = DirectedGraph(t.vertices, arcs)
    v = verify_directed(dg, DirectedLabelling("directed_graceful", f))
    assert v.ok
    assert len(v.constants["f_plus"]) + len(v.constants["f_minus"]) == t.q
    x, w, y = directed_matrix(dg, DirectedLabelling("directed_graceful", f)).rows()
    assert all(a - c == b for a, b, c in zip(x, w, y))


def _sogl_trees(max_n):
    for n in range(2, max_n + 1):
        for h in nx.nonisomorphic_trees(n):
            g = Graph.from_networkx(h)
            r = search(g, "set_ordered_graceful")
            yield g, r


def test_sogl_orientation_is_uniform_on_small_trees():
    count = 0
    for g, r in _sogl_trees(8):
        if not r.found:
            continue
        dg, dl = orient_from_sogl(g, r.labelling)
        v = verify_directed(dg, dl)
        assert v.ok and v.constants["uniform"] == "+"
        f = r.labelling.vertex_values
        assert sorted(v.constants["edge_labels"]) == sorted(abs(f[a] - f[b]) for a, b in g.edges)
        count += 1
    assert count > 30


def test_uniform_orientation_without_sogl():
    # trees whose set-ordered search fails still get a uniform directed graceful labelling
    found = 0
    for g, r in _sogl_trees(8):
        if r.found:
            continue
        grace = search(g, "graceful")
        assert grace.found
        dg, dl = orient_by_labels(g, grace.labelling.vertex_values)
        v = verify_directed(dg, dl)
        assert v.ok and v.constants["uniform"] == "+"
        found += 1
    assert found >= 1


def test_flawed_needs_witness():
    # two disjoint arcs labelled over [0,3]: labels 3 and 1 present, 2 missing
    dg = DirectedGraph(("a", "b", "c", "d"), (("a", "b"), ("c", "d")))
    v = verify_directed(dg, DirectedLabelling("flawed_directed_graceful", {"a": 3, "b": 0, "c": 2, "d": 1}))
    assert v.ok
    assert v.constants["missing"] == [2]
    assert v.constants["E*"]


def test_flawed_on_connected_graph_fails():
    dg = DirectedGraph(("a", "b"), (("a", "b"),))
    v = verify_directed(dg, DirectedLabelling("flawed_directed_graceful", {"a": 1, "b": 0}))
    assert not v.ok


def test_domain_errors():
    with pytest.raises(DirectedError):
        DirectedLabelling("nonsense", {})
    with pytest.raises(DirectedError):
        DirectedGraph(("a", "b"), (("a", "b"), ("b", "a")))
    dg, f = _load("4476d1")
    with pytest.raises(DirectedError):
        verify_directed(dg, DirectedLabelling("directed_graceful", f))
    with pytest.raises(DirectedError):
        verify_directed(dg, DirectedLabelling("half_directed_graceful", {}))


def test_parse_arcs():
    assert parse_arcs("(a->b),(c->d)") == [("a", "b"), ("c", "d")]
    with pytest.raises(DirectedError):
        parse_arcs("(a,b)")

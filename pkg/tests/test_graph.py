import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from gpwkit.errors import GraphError
from gpwkit.graph import (Graph, apply_graph_op, classify, complete_bipartite, complete_graph, cycle_graph,
                          disjoint_union, divided_connectivity, euler_circuit, isomorphic, path_graph,
                          spanning_tree_count, star_graph, two_coloring)


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    h = nx.Graph()
    h.add_nodes_from(range(n))
    h.add_edges_from(chosen)
    return h


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_classify_agrees_with_networkx(h):
    g = Graph.from_networkx(h)
    s = classify(g)
    connected = nx.is_connected(h)
    assert s.tree == nx.is_tree(h)
    assert s.forest == nx.is_forest(h)
    assert s.bipartite == nx.is_bipartite(h)
    assert s.euler == (connected and h.number_of_edges() > 0 and nx.is_eulerian(h))


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_two_colouring_is_proper(h):
    g = Graph.from_networkx(h)
    col = two_coloring(g)
    if col is None:
        assert not nx.is_bipartite(h)
        return
    x, y = col
    assert x | y == set(g.vertices) and not x & y
    assert all((a in x) != (b in x) for a, b in g.edges)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_spanning_trees_match_networkx(h):
    g = Graph.from_networkx(h)
    expected = round(nx.number_of_spanning_trees(h)) if nx.is_connected(h) else 0
    assert spanning_tree_count(g) == expected


def test_spanning_tree_families():
    # Cayley for K_n, n for C_n, a^(b-1) b^(a-1) for K_{a,b}
    assert spanning_tree_count(complete_graph(6)) == 6 ** 4
    assert spanning_tree_count(cycle_graph(7)) == 7
    assert spanning_tree_count(complete_bipartite(3, 4)) == 3 ** 3 * 4 ** 2


def test_euler_circuit_uses_each_edge_once():
    g = complete_graph(5)
    walk = euler_circuit(g)
    assert walk[0] == walk[-1]
    used = [frozenset(p) for p in zip(walk, walk[1:])]
    assert len(used) == g.q and set(used) == {frozenset(e) for e in g.edges}
    with pytest.raises(GraphError):
        euler_circuit(path_graph(3))


def test_caterpillar_and_lobster_flags():
    assert classify(path_graph(5)).caterpillar
    assert classify(star_graph(4)).caterpillar
    spider = Graph.from_networkx(nx.Graph([(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]))
    s = classify(spider)
    assert s.tree and not s.caterpillar and s.lobster


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7), st.data())
def test_contract_then_subdivide(h, data):
    g = Graph.from_networkx(h)
    if not g.edges:
        return
    x, y = data.draw(st.sampled_from(list(g.edges)))
    if set(g.neighbors(x)) & set(g.neighbors(y)):
        return  # contraction would merge parallel edges
    contracted = apply_graph_op(g, "edge_contract", x=x, y=y)
    ref = nx.contracted_edge(h, (int(x[1:]), int(y[1:])), self_loops=False)
    assert isomorphic(contracted.graph, Graph.from_networkx(ref))
    (w,) = contracted.vertex_map[x]
    back = apply_graph_op(contracted.graph, "edge_subdivide", w=w, part=sorted(set(g.neighbors(x)) - {y}))
    assert isomorphic(back.graph, g)


def test_vertex_split_round_trip():
    g = cycle_graph(5)
    res = apply_graph_op(g, "vertex_split", x="v0", part=["v1"])
    assert res.graph.p == 6 and res.graph.q == 5
    assert nx.is_tree(res.graph.to_networkx())
    a, b = res.vertex_map["v0"]
    assert isomorphic(apply_graph_op(res.graph, "vertex_coincide", a=a, b=b).graph, g)


def test_unknown_op():
    with pytest.raises(GraphError):
        apply_graph_op(path_graph(3), "explode")


def test_disjoint_union_sizes():
    u = disjoint_union([path_graph(3), cycle_graph(4)], ["a", "b"])
    assert (u.p, u.q) == (7, 6)
    assert not classify(u).tree


@pytest.mark.parametrize("h", [nx.petersen_graph(), nx.cycle_graph(6), nx.complete_graph(5),
                               nx.path_graph(5), nx.complete_bipartite_graph(2, 3)])
def test_divided_connectivity_equals_node_connectivity(h):
    assert divided_connectivity(Graph.from_networkx(h), "v") == nx.node_connectivity(h)


def test_bad_graph_rejected():
    with pytest.raises(GraphError):
        Graph.make(["a", "b"], [("a", "c")])
    with pytest.raises(GraphError):
        Graph.make(["a"], [("a", "a")])

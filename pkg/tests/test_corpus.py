import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from gpwkit.corpus import ENV_CORPUS, default_corpus, format_graph, load_corpus, parse_corpus, read_corpus
from gpwkit.errors import CorpusParseError, GraphError
from gpwkit.graph import Graph, classify
from gpwkit.labelling import parse_labelling


def test_seed_corpus_contents(corpus):
    assert list(corpus.graphs) == ["4476", "4043", "4476d1", "4476d2"]
    t = corpus.get("4476")
    assert (t.p, t.q) == (11, 9)
    s = classify(t)
    assert s.forest and not s.tree and s.bipartite
    assert classify(corpus.get("4043")).caterpillar
    assert len(corpus.get("4476d2").arcs) == 9


def test_seed_labellings_parse(corpus):
    for code, blocks in corpus.labellings.items():
        g = corpus.get(code)
        for b in blocks:
            lab = parse_labelling(b)
            assert set(lab.vertex_values) == set(g.vertices)


def test_every_seed_graph_round_trips(corpus):
    for g in corpus:
        back = parse_corpus(format_graph(g)).get(g.code)
        assert back == g


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9), st.integers(0, 10 ** 6))
def test_random_graph_round_trip(n, seed):
    h = nx.gnp_random_graph(n, 0.4, seed=seed)
    g = Graph.make([f"v{i}" for i in range(n)], [(f"v{a}", f"v{b}") for a, b in h.edges], code="R")
    assert parse_corpus(format_graph(g)).get("R") == g


@pytest.mark.parametrize("text,line", [
    ("graph A {\n  vertices: a,b;\n  edges: (a,c);\n}\n", None),
    ("graph A {\n  vertices: a,b;\n", 1),
    ("junk\ngraph A { vertices: a; }\n", 1),
    ("graph A { vertices: a; }\ngraph A { vertices: b; }\n", 2),
    ("labelling graceful { a=0; }\n", 1),
])
def test_parse_errors(text, line):
    with pytest.raises((CorpusParseError, GraphError)) as exc:
        parse_corpus(text)
    if line is not None and isinstance(exc.value, CorpusParseError):
        assert exc.value.line == line


def test_comments_ignored():
    c = parse_corpus("# header\ngraph A { vertices: a,b; edges: (a,b); }\n# trailer\n")
    assert c.get("A").q == 1


def test_missing_code():
    with pytest.raises(GraphError):
        parse_corpus("graph A { vertices: a; }").get("B")


def test_files_and_environment(tmp_path, monkeypatch):
    p = tmp_path / "mini.corpus"
    p.write_text("graph Z { vertices: a,b,c; edges: (a,b),(b,c); }\n")
    assert [g.code for g in load_corpus(p)] == ["Z"]
    monkeypatch.setenv(ENV_CORPUS, str(p))
    assert list(default_corpus().graphs) == ["Z"]
    with pytest.raises(GraphError):
        read_corpus(tmp_path / "absent.corpus")

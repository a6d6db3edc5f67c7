import itertools
from importlib import resources

import networkx as nx
import pytest

from gpwkit.corpus import seed_corpus
from gpwkit.graph import disjoint_union
from gpwkit.labelling import parse_labelling

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def corpus():
    return seed_corpus()


@pytest.fixture(scope="session")
def t4476(corpus):
    g = corpus.get("4476")
    return g, parse_labelling(corpus.labellings["4476"][0])


@pytest.fixture(scope="session")
def h1h2(corpus):
    g = disjoint_union([corpus.get("4476"), corpus.get("4043")], ["4476", "4043"])
    text = resources.files("gpwkit.data").joinpath("h1h2.labelling").read_text(encoding="utf-8")
    return g, parse_labelling(text)


def all_trees(max_n: int):
    for n in range(2, max_n + 1):
        yield from nx.nonisomorphic_trees(n)


def connected_graphs(n: int):
    """Every connected graph on n vertices, up to isomorphism.

    n <= 7 comes from the graph atlas.  For n = 8 each connected 7-vertex
    graph is extended by a vertex joined to a non-empty subset; a connected
    graph always has a vertex whose removal keeps it connected, so nothing
    is missed.
    """
    if n <= 7:
        return [h for h in nx.graph_atlas_g() if h.number_of_nodes() == n and nx.is_connected(h)]
    if n != 8:
        raise ValueError("only n <= 8 is supported")
    buckets: dict = {}
    out = []
    for h in connected_graphs(7):
        for r in range(1, 8):
            for S in itertools.combinations(range(7), r):
                g = h.copy()
                g.add_edges_from((7, s) for s in S)
                key = (tuple(sorted(d for _, d in g.degree())), nx.weisfeiler_lehman_graph_hash(g, iterations=3))
                lst = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(g, x) for x in lst):
                    lst.append(g)
                    out.append(g)
    return out


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")

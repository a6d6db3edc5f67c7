"""Acceptance criteria 1-10.

Each criterion is a function returning (passed, detail).  The pytest
wrappers assert on the outcome and record it so the terminal summary
prints one PASS/FAIL line per criterion.  Running this file directly
prints the same lines without pytest.
"""

from __future__ import annotations

import math
import random
import time

import networkx as nx
import pytest

from gpwkit.corpus import seed_corpus
from gpwkit.graph import Graph, apply_graph_op, complete_graph, cycle_graph, divided_connectivity, \
    disjoint_union, isomorphic, spanning_tree_count
from gpwkit.errors import GroupError
from gpwkit.group import (build_group, check_axioms, closed_total_set, encrypt_graph, greedy_total_gg_coloring,
                          index_set, solve_zero,
                          verify_gg_coloring)
from gpwkit.growth import GrowthSpec, grow
from gpwkit.labelling import Labelling, dual, parse_labelling, search, transform, verify
from gpwkit.matrix import (TopsnutMatrix, build_avev, build_code_matrix, column_exchange, serialize_o,
                           serialize_rows, serialize_vo, strong_rank, tbpaw_count, xy_exchange,
                           zero_permutation_count)

try:
    from conftest import ACCEPTANCE_RESULTS, all_trees, connected_graphs
except ImportError:  # pragma: no cover - direct execution from another directory
    from tests.conftest import ACCEPTANCE_RESULTS, all_trees, connected_graphs


# ------------------------------------------------------------ printed data
GB_CODES = ["4043", "4043", "2635", "2511", "5282", "4476", "4734", "4411", "3829"]
HEX_CODES = ["4EBA", "4EBA", "597D", "516C", "5219", "5929", "4E0B", "591A", "5E73"]
D_STRINGS = {
    "Vo1": "442254443847425600443187312914621533",
    "Vo2": "404334042635115252826744473411443829",
    "Vo3": "343540403121642586472254319174442843",
    "Vo4": "404340432635251152824476473444113829",
}
C_STRINGS = {
    "Vo1": "445555455E9E9219EEBB76120173AB99CDAA",
    "Vo2": "4EBAABE4597DC615521992954E0BA1955E73",
    "Vo3": "ABADBE4E7C96945119B225590A31E5497E55",
    "Vo4": "4EBA4EBA597D516C521959294E0B591A5E73",
}
T1 = "5758292928606061625487888885848382813635343332313028273030596060272626268686443"
T3 = ["57582929286060616254878888", "2728303132333435368182838485", "3030596060272626268686443"]
TD = "57273058283029305929316028" "32606033276034266135266236265" "818648386878348884488853"

A_H2 = ((5, 4, 87, 88, 88), (81, 82, 83, 84, 85), (86, 86, 4, 4, 3))
C14 = ((88, 4, 87, 5, 88), (84, 82, 83, 81, 85), (4, 86, 4, 86, 3))
L3 = ((5, 4, 4, 88, 88), (81, 82, 83, 84, 85), (86, 86, 87, 4, 3))
L3C14 = ((88, 4, 4, 5, 88), (84, 82, 83, 81, 85), (4, 86, 87, 86, 3))

# the element-index matrix assigned to T4476: (vertex, edge, vertex) per column
NETWORK_MATRIX = ((1, 1, 1, 3, 9, 9, 4, 5, 7), (4, 3, 2, 2, 4, 5, 4, 4, 5), (11, 10, 9, 9, 3, 4, 8, 7, 6))


def _h1h2():
    from importlib import resources
    c = seed_corpus()
    g = disjoint_union([c.get("4476"), c.get("4043")], ["4476", "4043"])
    lab = parse_labelling(resources.files("gpwkit.data").joinpath("h1h2.labelling").read_text())
    return g, lab


def _t4476():
    c = seed_corpus()
    return c.get("4476"), parse_labelling(c.labellings["4476"][0])


# ------------------------------------------------------------ criteria
def criterion_1():
    dm = build_code_matrix(GB_CODES, "decimal")
    hm = build_code_matrix(HEX_CODES, "hex")
    bad = [f"D{i}" for i, (ln, s) in enumerate(D_STRINGS.items(), 1) if serialize_vo(dm, ln).text != s]
    bad += [f"C{i}" for i, (ln, s) in enumerate(C_STRINGS.items(), 1) if serialize_vo(hm, ln).text != s]
    return not bad, "8 Vo strings exact" if not bad else f"mismatch in {bad}"


def criterion_2():
    g, lab = _h1h2()
    m = build_avev(g, lab)
    ok1 = serialize_o(m, "O1").text == T1
    ok3 = [p.text for p in serialize_rows(m)] == T3
    o4 = serialize_o(m, "O4").text
    diffs = [i for i, (a, b) in enumerate(zip(o4, TD)) if a != b]
    okd = len(o4) == len(TD) and len(diffs) == 1
    detail = f"T1 {'exact' if ok1 else 'differs'}, T3 segments {'exact' if ok3 else 'differ'}, " \
             f"O4 vs printed T(d): {len(diffs)} mismatch at {diffs}"
    return ok1 and ok3 and okd, detail


def criterion_3():
    m = TopsnutMatrix.from_rows(*A_H2)
    c = column_exchange(m, 1, 4)
    l3 = xy_exchange(m, 3)
    both = xy_exchange(c, 3)
    ok = c.rows() == C14 and l3.rows() == L3 and both.rows() == L3C14
    return ok, "c(1,4), l(3) and l(3)c(1,4) exact" if ok else "matrix operation mismatch"


def criterion_4():
    g, lab = _t4476()
    v = verify(g, lab)
    ok = v.ok and v.constants.get("missing") == [3] and lab.kind.value == "flawed_set_ordered_graceful"
    grp = build_group(g, lab)
    shifts_ok = True
    for k in range(1, grp.n + 1):
        ev = grp.element_verdict(k, rotation=k - 1)
        shifts_ok &= ev.ok and ev.constants.get("missing") == [3]
    return ok and shifts_ok and grp.n == 11, \
        f"f1 missing={v.constants.get('missing')}, {grp.n} shifts verify={shifts_ok}"


def criterion_5():
    g, lab = _t4476()
    grp = build_group(g, lab)
    ax = check_axioms(grp)
    cols_ok = True
    for i, s, j in zip(*NETWORK_MATRIX):
        k = solve_zero(grp, i, j, s)
        cols_ok &= (i + j - k - s) % grp.n == 0
    return all(ax.values()) and cols_ok, f"axioms {ax}, every column has a zero: {cols_ok}"


def criterion_6():
    t0 = time.perf_counter()
    ok = tbpaw_count(9) == (362898, math.factorial(27))
    ok &= math.factorial(9) == 362880 and zero_permutation_count(11) == 439084800
    sr = strong_rank(500, 10)
    ok &= 1660.9 <= sr <= 1661.0
    ok &= all(spanning_tree_count(complete_graph(n)) == n ** (n - 2) for n in range(2, 9))
    dt = time.perf_counter() - t0
    return ok and dt < 1.0, f"strong_rank={sr:.4f}, runtime {dt:.3f}s"


def criterion_7():
    t0 = time.perf_counter()
    seed = seed_corpus().get("4043")  # a (6,5) tree
    v = grow(GrowthSpec("vcoin_I", seed, 3))
    e = grow(GrowthSpec("ecoin_I", seed, 3))
    f = grow(GrowthSpec("fib_vertex", nx_path(3), 3))
    ok = [s.n_v for s in v.steps] == [6, 36, 216, 6 ** 5] and all(s.matches for s in v.steps)
    ok &= [s.n_e for s in e.steps] == [5, 25, 125, 5 ** 5] and all(s.matches for s in e.steps)
    # m_v follows m_v(t+1) = m_v(host) + m_e(host)(m_v(copy) - 2)
    ok &= [s.n_v for s in e.steps] == [6, 26, 126, 3126]
    ok &= all(s.matches for s in f.steps)
    dt = time.perf_counter() - t0
    return ok and dt < 10, f"vcoin_I n_v={[s.n_v for s in v.steps]}, ecoin_I m_e={[s.n_e for s in e.steps]}, " \
        f"fib_vertex P3={[(s.n_v, s.n_e) for s in f.steps]}, {dt:.2f}s"


def nx_path(n: int) -> Graph:
    from gpwkit.graph import path_graph
    return path_graph(n)


def criterion_8():
    t0 = time.perf_counter()
    got = {n: search(cycle_graph(n), "graceful").status for n in (3, 4, 5, 6, 7, 8, 9, 10, 11, 12)}
    want = {n: ("found" if n % 4 in (0, 3) else "exhausted") for n in got}
    dt = time.perf_counter() - t0
    return got == want and dt < 60, f"{got}, {dt:.1f}s"


TARGETS = [("felicitous", None), ("kd_graceful", (1, 1)), ("kd_graceful", (2, 3)), ("edge_magic_total", None),
           ("kd_edge_antimagic_total", None), ("odd_elegant", None), ("kd_arithmetic", (1, 1)),
           ("kd_arithmetic", (2, 3)), ("harmonious", None), ("odd_graceful", None)]


def criterion_9():
    t0 = time.perf_counter()
    trees = 0
    fails: dict[str, int] = {}
    for t in all_trees(8):
        g = Graph.from_networkx(t)
        r = search(g, "set_ordered_graceful")
        if not r.found:
            continue
        trees += 1
        for name, prm in TARGETS:
            if not verify(g, transform(g, r.labelling, name, prm)).ok:
                key = name + ("" if prm is None else str(prm))
                fails[key] = fails.get(key, 0) + 1
    dt = time.perf_counter() - t0
    p4_none = search(nx_path(4), "kd_arithmetic", (1, 1)).status
    detail = f"{trees} set-ordered trees, failing targets {fails or 'none'}; " \
             f"P4 (1,1)-arithmetic search: {p4_none}; {dt:.1f}s"
    return not fails and dt < 300, detail


def criterion_10():
    notes = []
    ok = True
    # split/coincide round trips on small connected graphs
    rt = 0
    for h in connected_graphs(5):
        g = Graph.from_networkx(h)
        for x in g.vertices:
            nb = sorted(g.neighbors(x))
            if len(nb) < 2:
                continue
            res = apply_graph_op(g, "vertex_split", x=x, part=nb[:1])
            a, b = res.vertex_map[x]
            back = apply_graph_op(res.graph, "vertex_coincide", a=a, b=b).graph
            ok &= isomorphic(back, g)
            rt += 1
    notes.append(f"{rt} split/coincide round trips")
    # dual involution on every graceful labelling found for trees up to 7
    dl = 0
    for t in all_trees(7):
        g = Graph.from_networkx(t)
        r = search(g, "graceful")
        if r.found:
            ok &= dual(dual(r.labelling)) == r.labelling
            dl += 1
    notes.append(f"{dl} dual involutions")
    # 500 random tree encryptions
    g0, lab = _t4476()
    grp = build_group(g0, lab)
    rng = random.Random(2024)
    enc = 0
    while enc < 500:
        n = rng.randint(2, 30)
        tree = Graph.from_networkx(nx.random_labeled_tree(n, seed=rng.randrange(2 ** 31)))
        if tree.max_degree + 1 > grp.n:
            continue
        net = encrypt_graph(tree, grp)
        ok &= net.ok and net.adjacent_distinct()
        enc += 1
    notes.append(f"{enc} encryptions")
    # greedy gg-colourings whenever the size bound holds; each strengthening is
    # checked against the property it promises (closed sets C'(x) = theta(x)
    # plus incident edge colours, or index sets)
    col = 0
    for t in all_trees(8):
        tree = Graph.from_networkx(t)
        for strengthen, extra in (("none", 1), ("neighbor_sets", 2), ("index_sets", 1)):
            if grp.n < tree.max_degree + extra:
                continue
            if strengthen == "index_sets" and tree.p == 2:
                # both ends of K2 see the same single index, so no colouring exists
                with pytest.raises(GroupError):
                    greedy_total_gg_coloring(tree, grp, strengthen)
                continue
            theta = greedy_total_gg_coloring(tree, grp, strengthen)
            ok &= verify_gg_coloring(tree, grp, theta, "proper_total").ok
            if strengthen == "neighbor_sets":
                ok &= all(closed_total_set(tree, theta, a) != closed_total_set(tree, theta, b)
                          for a, b in tree.edges)
            elif strengthen == "index_sets":
                ok &= all(index_set(tree, grp, theta, a) != index_set(tree, grp, theta, b)
                          for a, b in tree.edges)
            col += 1
    notes.append(f"{col} greedy colourings")
    # divided connectivity against a max-flow connectivity oracle
    kc = 0
    mism = 0
    for n in range(2, 9):
        for h in connected_graphs(n):
            kc += 1
            if divided_connectivity(Graph.from_networkx(h), "v") != nx.node_connectivity(h):
                mism += 1
    ok &= mism == 0
    notes.append(f"kappa_d=kappa on {kc} connected graphs ({mism} mismatches)")
    return ok, "; ".join(notes)


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 11)}


@pytest.mark.parametrize("n", list(CRITERIA))
def test_acceptance(n):
    ok, detail = CRITERIA[n]()
    ACCEPTANCE_RESULTS[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


if __name__ == "__main__":
    for n, fn in CRITERIA.items():
        ok, detail = fn()
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")

"""Sum extremes, paired labellings, set-labellings and Euler v-set labellings."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

import networkx as nx

from ..errors import GraphError, LabellingError, SizeBoundError
from ..graph import Edge, Graph, components, cycle_graph, ekey, euler_circuit
from .model import Labelling, Verdict, base_name
from .search import search
from .verify import edge_labels, odd_set, s_kd, verify, verify_base


# ------------------------------------------------------------------- sums
class SumFunctional(str, Enum):
    DIFFERENCE_SUM = "difference_sum"
    FELICITOUS_SUM = "felicitous_sum"
    VE_SUM_DIFFERENCE = "ve_sum_difference"
    VE_DIFFERENCE = "ve_difference"
    K_EDGE_AVERAGE = "k_edge_average"


EXTREMUM_VERTEX_CAP = 9
EXTREMUM_CANDIDATE_CAP = 4_000_000


def evaluate_sum(g: Graph, fn: SumFunctional | str, f: Mapping[str, int],
                 w: Mapping[Edge, int] | None = None) -> int:
    fn = SumFunctional(fn)
    q = g.q
    if fn is SumFunctional.DIFFERENCE_SUM:
        return sum(abs(f[a] - f[b]) for a, b in g.edges)
    if fn is SumFunctional.FELICITOUS_SUM:
        return sum((f[a] + f[b]) % (q + 1) for a, b in g.edges)
    if w is None:
        raise LabellingError(f"{fn.value} needs edge values")
    if fn is SumFunctional.VE_SUM_DIFFERENCE:
        return sum(w[e] + abs(f[e[0]] - f[e[1]]) for e in g.edges)
    if fn is SumFunctional.VE_DIFFERENCE:
        return sum(abs(f[e[0]] + f[e[1]] - w[e]) for e in g.edges)
    return sum(f[e[0]] + w[e] + f[e[1]] for e in g.edges)


def extremum_sum(g: Graph, fn: SumFunctional | str, mode: str = "max") -> tuple[int, Labelling]:
    """Exact optimum of a sum functional by exhaustive enumeration.

    Vertex functionals range over injections V -> [0,q]; total ones over
    bijections V u E -> [1,p+q].  For ``k_edge_average`` only labellings
    whose total is a multiple of q are admissible.
    """
    fn = SumFunctional(fn)
    if mode not in ("min", "max"):
        raise LabellingError("mode must be 'min' or 'max'")
    if g.p > EXTREMUM_VERTEX_CAP:
        raise SizeBoundError(f"{g.p} vertices exceeds the exhaustive cap of {EXTREMUM_VERTEX_CAP}")
    verts, edges = list(g.vertices), list(g.edges)
    better = (lambda a, b: a > b) if mode == "max" else (lambda a, b: a < b)
    best: tuple[int, dict, dict | None] | None = None
    if fn in (SumFunctional.DIFFERENCE_SUM, SumFunctional.FELICITOUS_SUM):
        if math.perm(g.q + 1, g.p) > EXTREMUM_CANDIDATE_CAP:
            raise SizeBoundError("too many vertex labellings to enumerate")
        for combo in itertools.permutations(range(g.q + 1), g.p):
            f = dict(zip(verts, combo))
            val = evaluate_sum(g, fn, f)
            if best is None or better(val, best[0]):
                best = (val, f, None)
    else:
        n = g.p + g.q
        if math.factorial(n) > EXTREMUM_CANDIDATE_CAP:
            raise SizeBoundError("too many total labellings to enumerate")
        for combo in itertools.permutations(range(1, n + 1)):
            f = dict(zip(verts, combo[:g.p]))
            w = dict(zip(edges, combo[g.p:]))
            val = evaluate_sum(g, fn, f, w)
            if fn is SumFunctional.K_EDGE_AVERAGE and g.q and val % g.q:
                continue
            if best is None or better(val, best[0]):
                best = (val, f, w)
    if best is None:
        raise LabellingError("no admissible labelling exists")
    return best[0], Labelling.make("free", best[1], best[2])


# ------------------------------------------------------------------ pairs
PAIR_KINDS = ("image", "kd_harmonious_image", "twin_kd", "twin_odd_graceful")


def _diff_labels(g: Graph, f: Mapping[str, int]) -> dict[Edge, int]:
    return {e: abs(f[e[0]] - f[e[1]]) for e in g.edges}


def _all_labels(g: Graph, lab: Labelling) -> set[int]:
    vals = set(lab.vertex_values.values())
    if base_name(lab.kind) == "free" and lab.edge_values is None:
        return vals | set(_diff_labels(g, lab.vertex_values).values())
    return vals | set(edge_labels(g, lab).values())


def verify_pair(g: Graph, f1: Labelling, h: Graph, f2: Labelling, kind: str) -> Verdict:
    """Check a matched pair of labellings (``f1`` on ``g``, ``f2`` on ``h``)."""
    if kind not in PAIR_KINDS:
        raise LabellingError(f"unknown pair kind {kind!r}; expected one of {', '.join(PAIR_KINDS)}")
    v = Verdict(kind)
    if kind in ("image", "kd_harmonious_image"):
        if set(g.vertices) != set(h.vertices) or set(g.edges) != set(h.edges):
            raise GraphError("image labellings need the same graph on both sides")
        if kind == "image":
            e1, e2 = _diff_labels(g, f1.vertex_values), _diff_labels(g, f2.vertex_values)
            sums = {e: e1[e] + e2[e] for e in g.edges}
            first = g.edges[0] if g.edges else None
            for e in g.edges:
                if sums[e] != sums[first]:
                    v.fail("image-sum", f"edges ({first[0]},{first[1]}) and ({e[0]},{e[1]}) "
                                        f"sum to {sums[first]} and {sums[e]}")
                    break
            else:
                if first is not None:
                    v.constants["k"] = sums[first]
            return v
        prm = f1.params or (1, 1)
        for i, lab in enumerate((f1, f2), 1):
            if base_name(lab.kind) != "kd_harmonious":
                v.fail("kind", f"f{i} must be a (k,d)-harmonious labelling")
                return v
            vi = verify(g, lab)
            if not vi.ok:
                v.fail(f"f{i}-harmonious", ",".join(dict.fromkeys(vi.clauses)))
        if f2.params != f1.params:
            v.fail("params", "both labellings must share (k,d)")
        k, d = prm
        l1, l2 = edge_labels(g, f1), edge_labels(g, f2)
        target = 2 * k + (g.q - 1) * d
        bad = [e for e in g.edges if l1[e] + l2[e] != target]
        if bad:
            v.fail("image-sum", f"edge ({bad[0][0]},{bad[0][1]}) sums to {l1[bad[0]] + l2[bad[0]]}, not {target}")
        else:
            v.constants["k"] = target
        return v
    if kind == "twin_kd":
        prm = f1.params or f2.params or (1, 1)
        k, d = prm
        q = g.q
        universe = {i * d for i in range(q)} | s_kd(k, d, q)
        used1, used2 = _all_labels(g, f1), _all_labels(h, f2)
        if not used1 <= universe:
            v.fail("f-range", f"f uses {sorted(used1 - universe)} outside X0 u Xkd")
        if used2 != universe - used1:
            v.fail("complement", f"g uses {sorted(used2)}, complement is {sorted(universe - used1)}")
        return v
    # twin odd-graceful
    vi = verify_base(g, "odd_graceful", f1.vertex_values, None, None)
    if not vi.ok:
        v.fail("f-odd-graceful", ",".join(dict.fromkeys(vi.clauses)))
    q = g.q
    vals = list(f2.vertex_values.values())
    if any(not 1 <= x <= 2 * q for x in vals):
        v.fail("g-range", f"g must map into [1,{2 * q}]")
    got = set(_diff_labels(h, f2.vertex_values).values())
    if got != odd_set(q):
        v.fail("g-edge-set", f"edge labels of H are {sorted(got)}, expected {sorted(odd_set(q))}")
    return v


# -------------------------------------------------------- set labellings
@dataclass
class SetLabellingResult:
    verdict: Verdict
    representatives: dict[Edge, int] = field(default_factory=dict)


def verify_set_labelling(g: Graph, F: Mapping[str, Iterable[int]], kind: str) -> SetLabellingResult:
    """Intersection set-labelling check through a bipartite matching of
    edges against the required labels."""
    if kind not in ("graceful_intersection", "odd_graceful_intersection"):
        raise LabellingError(f"unknown set-labelling kind {kind!r}")
    v = Verdict(kind)
    sets = {x: frozenset(F[x]) for x in g.vertices} if set(F) >= set(g.vertices) else None
    if sets is None or set(F) != set(g.vertices):
        raise LabellingError("F must assign a set to exactly the graph's vertices")
    if len(set(sets.values())) != len(sets):
        v.fail("vertex-injective", "two vertices carry the same set")
    q = g.q
    target = set(range(1, q + 1)) if kind == "graceful_intersection" else odd_set(q)
    B = nx.Graph()
    for e in g.edges:
        cand = (sets[e[0]] & sets[e[1]]) & target
        if not cand:
            v.fail("intersection", f"edge ({e[0]},{e[1]}) has no usable common label")
        B.add_node(("e", e))
        for a in cand:
            B.add_edge(("e", e), ("l", a))
    if not v.ok:
        return SetLabellingResult(v)
    left = [("e", e) for e in g.edges]
    match = nx.bipartite.hopcroft_karp_matching(B, top_nodes=left) if B.number_of_edges() else {}
    reps = {e: match[("e", e)][1] for e in g.edges if ("e", e) in match}
    if len(reps) != q or set(reps.values()) != target:
        v.fail("representatives", f"at most {len(reps)} of {len(target)} labels can be represented")
        return SetLabellingResult(v)
    v.constants["representatives"] = [reps[e] for e in g.edges]
    return SetLabellingResult(v, reps)


# ---------------------------------------------------------- Euler v-sets
@dataclass
class EulerVSet:
    kind: str
    sets: dict[str, frozenset[int]]
    edge_values: dict[Edge, int]
    cycle: list[str]
    cycle_labels: list[int]
    source: str
    verdict: Verdict


def cycle_4m_graceful(n: int) -> dict[int, int] | None:
    """Positions 1..n of C_4m labelled by the closed-form construction, or
    None when its index ranges leave some position unlabelled."""
    if n % 4:
        return None
    m = n // 4
    f = {1: 0, 2: 2 * m}
    for j in range(1, 2 * m - 1):
        f[2 * j + 1] = 2 * m - j - 1
    for i in range(1, m + 1):
        f[4 * m - 2 * i + 2] = 4 * m - i + 1
    if set(f) != set(range(1, n + 1)):
        return None
    return f


def _cycle_sogl(n: int, kind: str, budget: int | None) -> tuple[list[int], str]:
    c = cycle_graph(n)
    order = list(c.vertices)
    built = cycle_4m_graceful(n)
    if built is not None:
        f = {order[i - 1]: built[i] for i in built}
        if verify_base(c, "set_ordered_graceful", f, None, None).ok:
            return [f[v] for v in order], "construction"
    name = "graceful" if n % 2 else "set_ordered_graceful"
    res = search(c, name, budget=budget)
    if not res.found:
        raise LabellingError(f"no {name} labelling of C_{n} found ({res.status})")
    return [res.labelling[v] for v in order], "search"


def _emt_cycle(n: int, magic: int) -> list[int] | None:
    """Vertex labels in [0,n] around C_n whose edge complements
    magic - a - b run over exactly [1,n]."""
    vals = [0] * n
    used_e: set[int] = set()
    used_v: set[int] = set()

    def rec(i: int) -> bool:
        if i == n:
            last = magic - vals[-1] - vals[0]
            if 1 <= last <= n and last not in used_e:
                return True
            return False
        for x in range(0, n + 1):
            if x in used_v:
                continue
            if i:
                e = magic - vals[i - 1] - x
                if not 1 <= e <= n or e in used_e:
                    continue
                used_e.add(e)
            used_v.add(x)
            vals[i] = x
            if rec(i + 1):
                return True
            used_v.discard(x)
            if i:
                used_e.discard(magic - vals[i - 1] - x)
        return False

    return list(vals) if rec(0) else None


def euler_vset_labelling(g: Graph, kind: str = "graceful", t: int = 1, budget: int | None = None) -> EulerVSet:
    """v-set e-proper labelling of a connected Euler graph.

    An Euler circuit unrolls g into C_n; the cycle is labelled; positions
    that coincide in g pool their labels into one set.
    """
    if kind not in ("graceful", "odd_graceful", "edge_magic_total", "four_c"):
        raise LabellingError(f"unsupported v-set kind {kind!r}")
    if len(components(g)) != 1 or any(g.degree(v) % 2 for v in g.vertices) or g.q < 3:
        raise GraphError("input must be a connected Euler graph")
    n = g.q
    if kind == "graceful" and n % 4 not in (0, 3):
        raise LabellingError(f"{n} edges: a v-set e-proper graceful labelling needs n = 0 or 3 mod 4")
    if kind != "graceful" and n % 4:
        raise LabellingError(f"{n} edges: the {kind} construction needs n divisible by 4")
    closed = euler_circuit(g)
    walk = closed[:-1]
    circuit = list(zip(closed, closed[1:]))
    m = n // 4
    base, source = _cycle_sogl(n, kind, budget)
    cyc = cycle_graph(n)
    cv = list(cyc.vertices)
    v = Verdict("v_set_" + kind)
    if kind == "graceful":
        labels = base
        ev = [abs(labels[i] - labels[(i + 1) % n]) for i in range(n)]
    elif kind == "odd_graceful":
        low = {i for i in range(n) if i % 2 == 0}
        if max(base[i] for i in low) > min(base[i] for i in range(n) if i not in low):
            low = set(range(n)) - low
        labels = [2 * base[i] if i in low else 2 * base[i] - 1 for i in range(n)]
        ev = [abs(labels[i] - labels[(i + 1) % n]) for i in range(n)]
    elif kind == "edge_magic_total":
        labels = _emt_cycle(n, 6 * m)
        source = "search"
        if labels is None:
            raise LabellingError(f"no magic-{6 * m} labelling of C_{n}")
        ev = [6 * m - labels[i] - labels[(i + 1) % n] for i in range(n)]
    else:
        labels = base
        ev = [8 * m + t - abs(labels[i] - labels[(i + 1) % n]) for i in range(n)]
    f = {cv[i]: labels[i] for i in range(n)}
    w = {ekey(cv[i], cv[(i + 1) % n]): ev[i] for i in range(n)}
    # clause checks run on the unrolled cycle
    if kind == "graceful":
        cv_name = "set_ordered_graceful" if n % 2 == 0 else "graceful"
        cvd = verify_base(cyc, cv_name, f, None, None)
    elif kind == "odd_graceful":
        cvd = verify_base(cyc, "set_ordered_odd_graceful", f, None, None)
    elif kind == "four_c":
        cvd = verify_base(cyc, "four_c", f, w, None)
    else:
        cvd = Verdict("edge_magic_total")
        if sorted(ev) != list(range(1, n + 1)):
            cvd.fail("edge-set", f"edge labels are not [1,{n}]")
        if len(set(labels)) != n:
            cvd.fail("vertex-injective", "cycle labels repeat")
        cvd.constants["magic"] = 6 * m
    for c, d in cvd.failures:
        v.fail(c, d)
    v.constants.update(cvd.constants)
    sets: dict[str, set[int]] = {x: set() for x in g.vertices}
    for i, x in enumerate(walk):
        sets[x].add(labels[i])
    edge_values: dict[Edge, int] = {}
    for i, (a, b) in enumerate(circuit):
        edge_values[ekey(a, b)] = ev[i]
    if kind == "graceful":
        vs = Labelling.make("v_set_e_proper_graceful", {}, edge_values, vertex_sets=sets)
        gv = verify_base(g, "v_set_e_proper_graceful", {}, edge_values, None, vs.vertex_sets)
        for c, d in gv.failures:
            v.fail(c, d)
    return EulerVSet(kind, {x: frozenset(s) for x, s in sets.items()}, edge_values, walk, labels, source, v)


__all__ = [
    "SumFunctional", "evaluate_sum", "extremum_sum", "PAIR_KINDS", "verify_pair",
    "SetLabellingResult", "verify_set_labelling", "EulerVSet", "euler_vset_labelling",
    "cycle_4m_graceful",
]

"""Clause-level verification of every labelling kind, flawed ones included."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import networkx as nx

from ..errors import LabellingError, SizeBoundError
from ..graph import Edge, Graph, classify, components, ekey, two_coloring
from .model import (DEFAULT_PARAMS, Labelling, LabellingKind, Verdict, base_name,
                    check_domain, is_flawed)

#: Upper bound on phantom-edge candidate sets examined by flawed verification.
FLAW_SEARCH_CAP = 2_000_000


def odd_set(q: int) -> set[int]:
    return set(range(1, 2 * q, 2))


def s_kd(k: int, d: int, q: int) -> set[int]:
    return {k + i * d for i in range(q)}


# ------------------------------------------------------------ induced edges
def _diff(a: int, b: int, q: int, prm) -> int:
    return abs(a - b)


def _sum_mod_q(a, b, q, prm):
    return (a + b) % q if q else 0


def _sum_mod_q1(a, b, q, prm):
    return (a + b) % (q + 1)


def _sum_mod_2q(a, b, q, prm):
    return (a + b) % (2 * q) if q else 0


def _plain_sum(a, b, q, prm):
    return a + b


def _kd_harm(a, b, q, prm):
    k, d = prm
    return k + (a + b - k) % (q * d) if q else k


Rule = Callable[[int, int, int, tuple[int, int] | None], int]


@dataclass(frozen=True)
class KindSpec:
    name: str
    rule: Rule | None          # induced edge rule; None means edge values are stored
    check: Callable[["Ctx"], None]
    bipartite: bool = False
    distinct_edges: bool = True
    universe: Callable[[int, int, tuple[int, int] | None], range] | None = None
    shared_pool: bool = False  # vertex and edge labels come from one injective pool


class Ctx:
    """Working state for one verification run."""

    def __init__(self, g: Graph, f: Mapping[str, int], w: Mapping[Edge, int], params, verdict: Verdict,
                 sets: Mapping[str, frozenset[int]] | None = None):
        self.g, self.f, self.w, self.params, self.v = g, f, w, params, verdict
        self.sets = sets
        self.p, self.q = g.p, g.q
        self.V = [f[x] for x in g.vertices] if sets is None else []
        self.E = [w[e] for e in g.edges]

    # basic clauses -----------------------------------------------------
    def fail(self, clause: str, detail: str = "") -> None:
        self.v.fail(clause, detail)

    def injective(self, clause: str = "vertex-injective") -> None:
        seen: dict[int, str] = {}
        for x in self.g.vertices:
            val = self.f[x]
            if val in seen:
                self.fail(clause, f"{seen[val]} and {x} share {val}")
                return
            seen[val] = x

    def vrange(self, lo: int, hi: int, clause: str = "vertex-range") -> None:
        bad = [x for x in self.g.vertices if not lo <= self.f[x] <= hi]
        if bad:
            self.fail(clause, f"{bad[0]}={self.f[bad[0]]} outside [{lo},{hi}]")

    def min_zero(self, clause: str = "vertex-min") -> None:
        if self.V and min(self.V) != 0:
            self.fail(clause, f"smallest vertex label is {min(self.V)}, not 0")

    def edge_set(self, target: set[int], clause: str = "edge-set") -> None:
        labs = self.E
        if len(set(labs)) != len(labs):
            dup = sorted({x for x in labs if labs.count(x) > 1})
            self.fail(clause, f"repeated edge labels {dup}")
        elif set(labs) != target:
            miss = sorted(target - set(labs))
            extra = sorted(set(labs) - target)
            self.fail(clause, f"missing {miss} unexpected {extra}")
        self.v.constants.setdefault("edge_labels", sorted(set(labs)))

    def edge_range(self, lo: int, hi: int, clause: str = "edge-range") -> None:
        bad = [e for e in self.g.edges if not lo <= self.w[e] <= hi]
        if bad:
            self.fail(clause, f"edge {bad[0]}={self.w[bad[0]]} outside [{lo},{hi}]")

    def total_injective(self, clause: str = "total-injective") -> None:
        vals = self.V + self.E
        if len(set(vals)) != len(vals):
            dup = sorted({x for x in vals if vals.count(x) > 1})
            self.fail(clause, f"values repeated across vertices/edges: {dup}")

    def total_onto(self, lo: int, hi: int, clause: str = "total-bijection") -> None:
        vals = self.V + self.E
        if sorted(vals) != list(range(lo, hi + 1)):
            self.fail(clause, f"vertex and edge labels are not a bijection onto [{lo},{hi}]")

    def set_ordered(self, clause: str = "set-ordered") -> None:
        if not self.g.edges:
            return
        lo = max(min(self.f[a], self.f[b]) for a, b in self.g.edges)
        hi = min(max(self.f[a], self.f[b]) for a, b in self.g.edges)
        if lo >= hi:
            self.fail(clause, f"no threshold separates the sides (max low end {lo} >= min high end {hi})")
            return
        self.v.constants["threshold"] = lo
        xs = sorted(x for x in self.g.vertices if self.f[x] <= lo)
        self.v.constants["X"] = xs

    def constant(self, values: dict[Edge, int], name: str, clause: str) -> int | None:
        distinct = set(values.values())
        if len(distinct) > 1:
            self.fail(clause, f"{name} is not constant: {sorted(distinct)}")
            return None
        if distinct:
            c = distinct.pop()
            self.v.constants[name] = c
            return c
        return None

    def ee_balanced(self, s: list[int], clause: str = "ee-balanced", name: str = "k_prime") -> None:
        if not s:
            return
        k = min(s) + max(s)
        pool = set(s)
        if any(k - a not in pool for a in s):
            self.fail(clause, f"no constant pairs every s-value (tried {k})")
        else:
            self.v.constants[name] = k

    def ve_matching(self, singular: int | None, clause: str = "ve-matching", name: str = "k_dprime") -> None:
        if not self.E:
            return
        vset = set(self.V)
        first = self.E[0]
        for cand in sorted({first + x for x in vset}):
            edges_ok = all(cand - e in vset for e in self.E)
            eset = set(self.E)
            verts_ok = all(cand - x in eset for x in self.V if x != singular)
            if edges_ok and verts_ok:
                self.v.constants[name] = cand
                return
        self.fail(clause, "no constant matches every edge with a vertex and vice versa")


def _induced(rule: Rule, g: Graph, f: Mapping[str, int], q: int, params) -> dict[Edge, int]:
    return {e: rule(f[e[0]], f[e[1]], q, params) for e in g.edges}


def _diffs(c: Ctx) -> dict[Edge, int]:
    return {e: abs(c.f[e[0]] - c.f[e[1]]) for e in c.g.edges}


def _vertex_diff_set(c: Ctx) -> set[int]:
    return {abs(a - b) for a, b in itertools.combinations(c.V, 2)}


def _is_tree(g: Graph) -> bool:
    return classify(g).tree


# ------------------------------------------------------------------ kinds
def _graceful(c: Ctx):
    c.injective()
    c.vrange(0, c.q)
    c.min_zero()
    c.edge_set(set(range(1, c.q + 1)))


def _odd_graceful(c: Ctx):
    c.injective()
    c.vrange(0, max(2 * c.q - 1, 0))
    c.min_zero()
    c.edge_set(odd_set(c.q))


def _matching(c: Ctx, total: int, clause: str):
    if not _is_tree(c.g):
        c.fail(clause, "the strong variant is defined for trees only")
        return
    covered = set()
    for a, b in c.g.edges:
        if c.f[a] + c.f[b] == total:
            covered |= {a, b}
    if covered != set(c.g.vertices):
        c.fail(clause, f"edges with label sum {total} do not form a perfect matching")


def _set_ordered_graceful(c):
    _graceful(c)
    c.set_ordered()


def _strongly_graceful(c):
    _graceful(c)
    _matching(c, c.q, "perfect-matching")


def _set_ordered_odd(c):
    _odd_graceful(c)
    c.set_ordered()


def _strongly_odd(c):
    _odd_graceful(c)
    _matching(c, 2 * c.q - 1, "perfect-matching")


def _super_flag(c: Ctx):
    if c.V and c.E:
        c.v.constants["super"] = max(c.E) < min(c.V) or max(c.V) < min(c.E)


def _total_graceful(c):
    c.vrange(1, c.p + c.q)
    c.total_injective()
    _super_flag(c)


def _emt_graceful(c):
    c.vrange(1, c.p + c.q)
    c.edge_range(1, c.p + c.q)
    c.total_injective()
    d = _diffs(c)
    c.constant({e: c.w[e] + d[e] for e in c.g.edges}, "k", "e-magic")
    _super_flag(c)


def _felicitous(c):
    c.injective()
    c.vrange(0, c.q)
    c.edge_set(set(range(c.q)))
    c.v.constants["super"] = sorted(c.V) == list(range(c.p))


def _so_felicitous(c):
    _felicitous(c)
    c.set_ordered()
    if c.v.ok and c.g.edges:
        b = min(c.f[x] for x in c.g.vertices if c.f[x] > c.v.constants["threshold"])
        sums = sorted(c.f[x] + c.f[y] for x, y in c.g.edges)
        c.v.constants["optimal"] = sums == list(range(b, b + c.q))


def _kd_graceful(c):
    k, d = c.params
    c.injective()
    c.vrange(0, k + (c.q - 1) * d)
    c.edge_set(s_kd(k, d, c.q))


def _emt(c):
    c.total_onto(1, c.p + c.q)
    c.constant({e: c.f[e[0]] + c.w[e] + c.f[e[1]] for e in c.g.edges}, "magic", "e-magic")
    c.v.constants["super"] = sorted(c.V) == list(range(1, c.p + 1))


def _kd_eat(c):
    k, d = c.params
    c.total_onto(1, c.p + c.q)
    sums = [c.f[a] + c.w[(a, b)] + c.f[b] for a, b in c.g.edges]
    if len(set(sums)) != len(sums) or set(sums) != s_kd(k, d, c.q):
        c.fail("antimagic-sums", f"edge sums {sorted(sums)} differ from S_(k,d)")
    c.v.constants["super"] = sorted(c.V) == list(range(1, c.p + 1))


def _odd_elegant(c):
    c.injective()
    c.vrange(0, max(2 * c.q - 1, 0))
    c.edge_set(odd_set(c.q))


def _elegant(c):
    c.injective()
    c.vrange(0, c.q)
    c.edge_set(set(range(1, c.q + 1)))


def _kd_arith(c):
    k, d = c.params
    c.injective()
    c.vrange(0, k + (c.q - 1) * d)
    c.edge_set(s_kd(k, d, c.q))


def _harmonious(c):
    c.vrange(0, max(c.q - 1, 0))
    c.min_zero()
    c.edge_set(set(range(c.q)))
    if _is_tree(c.g):
        counts: dict[int, int] = {}
        for x in c.V:
            counts[x] = counts.get(x, 0) + 1
        reps = [x for x, n in counts.items() if n > 1]
        if len(reps) != 1 or counts[reps[0]] != 2:
            c.fail("tree-repeat", "a tree needs exactly one label used by exactly two vertices")
    else:
        c.injective()


def _kd_harmonious(c):
    k, d = c.params
    c.injective()
    c.vrange(0, k + (c.q - 1) * d)
    c.edge_set(s_kd(k, d, c.q))


def _relaxed_emt(c):
    c.vrange(1, c.p + c.q)
    c.edge_range(1, c.p + c.q)
    c.total_injective()
    c.constant({e: c.f[e[0]] + c.w[e] + c.f[e[1]] for e in c.g.edges}, "magic", "e-magic")
    diffs = set(_diffs(c).values())
    bad = [e for e in c.g.edges if c.w[e] not in diffs]
    if bad:
        c.fail("ee-difference", f"edge {bad[0]} label {c.w[bad[0]]} is no edge's difference")


def _oemm(c):
    c.injective()
    c.vrange(0, max(2 * c.q - 1, 0))
    c.edge_set(odd_set(c.q))
    c.constant({e: c.f[e[0]] + c.w[e] + c.f[e[1]] for e in c.g.edges}, "magic", "e-magic")


def _eedoemm(c):
    c.injective()
    c.vrange(0, max(2 * c.q - 1, 0))
    bad = [e for e in c.g.edges if c.w[e] not in odd_set(c.q)]
    if bad:
        c.fail("edge-range", f"edge {bad[0]} label {c.w[bad[0]]} is not in the odd set")
    d = _diffs(c)
    dset = set(d.values())
    if any(c.w[e] not in dset for e in c.g.edges):
        c.fail("ee-difference", "some edge label is no edge's difference")
    c.ee_balanced([d[e] - c.w[e] for e in c.g.edges])
    c.constant({e: c.w[e] + d[e] for e in c.g.edges}, "k", "e-magic")


def _six_c(c):
    n = c.p + c.q
    c.total_onto(1, n)
    d = _diffs(c)
    c.constant({e: c.w[e] + d[e] for e in c.g.edges}, "k", "e-magic")
    dset = set(d.values())
    if any(c.w[e] not in dset and (2 * n - c.w[e]) not in dset for e in c.g.edges):
        c.fail("ee-difference", "some edge label matches no edge difference")
    c.ee_balanced([d[e] - c.w[e] for e in c.g.edges])
    _ev_ordered(c, parity_option=True)
    c.ve_matching((n + 1) // 2)
    c.set_ordered()


def _ev_ordered(c: Ctx, parity_option: bool) -> None:
    V, E = set(c.V), set(c.E)
    if not (V and E):
        return
    opts = [min(V) > max(E), max(V) < min(E)]
    if parity_option:
        opts += [V <= E, E <= V, all(x % 2 for x in V) and all(x % 2 == 0 for x in E)]
    if not any(opts):
        c.fail("ev-ordered", "vertex and edge label sets are not ordered")


def _odd_six_c(c):
    q = c.q
    c.vrange(1, 4 * q - 1)
    c.edge_range(1, 4 * q - 1)
    c.total_injective()
    d = _diffs(c)
    c.constant({e: c.w[e] + d[e] for e in c.g.edges}, "k", "e-magic")
    if any(c.w[e] % 2 == 0 for e in c.g.edges):
        c.fail("e-magic", "edge labels must be odd")
    dset = set(d.values())
    if any((c.w[e] - 2 * q) not in dset and (2 * q - c.w[e]) not in dset for e in c.g.edges):
        c.fail("ee-difference", "some edge label is not 2q plus or minus an edge difference")
    c.ee_balanced([d[e] - c.w[e] for e in c.g.edges])
    if c.V and c.E and not max(c.V) < min(c.E):
        c.fail("ev-ordered", "max vertex label must be below min edge label")
    if _vertex_diff_set(c) != set(range(1, 2 * q)):
        c.fail("ev-ordered", "pairwise vertex differences must be exactly [1,2q-1]")
    _two_constant_matching(c)
    c.set_ordered()


def _two_constant_matching(c: Ctx) -> None:
    vset = set(c.V)
    if not c.E:
        return
    for k1 in sorted({c.E[0] + x for x in vset}):
        left = [e for e in c.E if k1 - e not in vset]
        if not left:
            c.v.constants["k1"] = k1
            return
        for k2 in sorted({left[0] + x for x in vset}):
            if all(k2 - e in vset for e in left):
                c.v.constants["k1"], c.v.constants["k2"] = k1, k2
                return
    c.fail("ve-matching", "no two constants pair every edge with a vertex")


def _dgemm(c):
    c.injective()
    c.vrange(0, c.p - 1)
    c.edge_range(1, c.q)
    d = _diffs(c)
    dset = set(d.values())
    if any(c.w[e] not in dset and (c.p - c.w[e]) not in dset for e in c.g.edges):
        c.fail("ee-difference", "some edge label matches no edge difference")
    c.ee_balanced([d[e] - c.w[e] for e in c.g.edges], name="k_dprime")
    c.constant({e: c.w[e] + d[e] for e in c.g.edges}, "k", "e-magic")
    c.ve_matching(0, name="k_prime")


def _edge_odd_graceful_total(c):
    c.vrange(0, max(c.q - 1, 0))
    c.edge_set(odd_set(c.q), clause="edge-set")
    sums = [c.f[a] + c.w[(a, b)] + c.f[b] for a, b in c.g.edges]
    if sums and (len(set(sums)) != len(sums) or max(sums) - min(sums) + 1 != c.q):
        c.fail("consecutive-sums", f"edge sums {sorted(sums)} are not q consecutive integers")


def _consecutive(xs: list[int]) -> bool:
    return not xs or (len(set(xs)) == len(xs) and max(xs) - min(xs) + 1 == len(xs))


def _multiple_edge_meaning(c):
    c.injective()
    c.vrange(0, c.p - 1)
    sums = [c.f[a] + c.f[b] for a, b in c.g.edges]
    if not _consecutive(sums):
        c.fail("meaning-1", "no edge labels in [1,q] give a constant total")
        c.fail("meaning-2", "no edge labels in [p,p+q-1] give a constant total")
    else:
        c.v.constants["k"] = max(sums) + 1
        c.v.constants["k_prime"] = max(sums) + c.p
    if c.q and sorted(s % c.q for s in sums) != list(range(c.q)):
        c.fail("meaning-3", "sums modulo q do not cover [0,q-1]")
    if not _meaning4(sums, c.q):
        c.fail("meaning-4", "no edge labels in [1,q] keep |f(u)+f(v)-f(uv)| constant")
    if not _meaning5(sums, c.q):
        c.fail("meaning-5", "no odd edge labels give q consecutive totals")


def _meaning4(sums: list[int], q: int) -> bool:
    if not sums:
        return True
    for k in range(0, 2 * max(sums) + q + 1):
        g = nx.Graph()
        for i, s in enumerate(sums):
            for lab in {s - k, k - s}:
                if 1 <= lab <= q:
                    g.add_edge(("e", i), ("l", lab))
        if g.number_of_nodes() and len(nx.bipartite.maximum_matching(
                g, top_nodes=[n for n in g if n[0] == "e"])) // 2 == q:
            return True
    return False


def _meaning5(sums: list[int], q: int, cap: int = 200_000) -> bool:
    if not sums:
        return True
    odd = list(range(1, 2 * q, 2))
    order = sorted(range(q), key=lambda i: sums[i])
    budget = [cap]
    for a in range(min(sums) + 1, max(sums) + 2 * q):
        totals = set(range(a, a + q))

        def rec(i: int, used_lab: set[int], used_tot: set[int]) -> bool:
            budget[0] -= 1
            if budget[0] < 0:
                raise SizeBoundError("multiple edge-meaning clause 5 search exceeded its cap")
            if i == q:
                return True
            s = sums[order[i]]
            for lab in odd:
                t = s + lab
                if lab not in used_lab and t in totals and t not in used_tot:
                    used_lab.add(lab), used_tot.add(t)
                    if rec(i + 1, used_lab, used_tot):
                        return True
                    used_lab.discard(lab), used_tot.discard(t)
            return False

        if rec(0, set(), set()):
            return True
    return False


def _perfect_odd(c):
    _odd_graceful(c)
    if _vertex_diff_set(c) != set(range(1, c.p + 1)):
        c.fail("perfect", "pairwise vertex differences are not exactly [1,p]")


def _perfect_eps(c):
    c.injective()
    c.vrange(0, c.p + c.q)
    if _vertex_diff_set(c) != set(range(1, c.p + 1)):
        c.fail("perfect", "pairwise vertex differences are not exactly [1,p]")


def _four_c(c):
    c.injective()
    c.vrange(0, c.q)
    c.edge_range(1, 10 ** 18)
    d = _diffs(c)
    c.constant({e: c.w[e] + d[e] for e in c.g.edges}, "k", "e-magic")
    c.ee_balanced([d[e] - c.w[e] for e in c.g.edges])
    _ev_ordered(c, parity_option=False)
    c.set_ordered()


def _v_set(c):
    sets = c.sets or {}
    allv = [x for s in sets.values() for x in s]
    if any(not s for s in sets.values()):
        c.fail("vertex-sets", "every vertex needs a non-empty label set")
    if len(allv) != len(set(allv)):
        c.fail("vertex-sets", "label sets of distinct vertices overlap")
    if any(not 0 <= x <= c.q for x in allv):
        c.fail("vertex-range", "set labels must lie in [0,q]")
    for (a, b) in c.g.edges:
        lab = c.w[(a, b)]
        if not any(abs(x - y) == lab for x in sets.get(a, ()) for y in sets.get(b, ())):
            c.fail("e-proper", f"edge ({a},{b}) label {lab} is no difference of its end sets")
    c.edge_set(set(range(1, c.q + 1)))


def _odd_even_emt(c):
    c.vrange(1, 2 * c.q + 1)
    c.edge_range(1, 2 * c.q + 1)
    c.total_injective()
    if any(x % 2 == 0 for x in c.V):
        c.fail("parity", "vertex labels must be odd")
    if any(x % 2 for x in c.E):
        c.fail("parity", "edge labels must be even")
    c.constant({e: c.f[e[0]] + c.w[e] + c.f[e[1]] for e in c.g.edges}, "magic", "e-magic")
    c.set_ordered()


def _free(c):
    c.injective()
    c.vrange(0, 10 ** 18)


_u_total = lambda p, q, prm: range(1, p + q + 1)  # noqa: E731

SPECS: dict[str, KindSpec] = {s.name: s for s in [
    KindSpec("graceful", _diff, _graceful),
    KindSpec("set_ordered_graceful", _diff, _set_ordered_graceful, bipartite=True),
    KindSpec("strongly_graceful", _diff, _strongly_graceful),
    KindSpec("odd_graceful", _diff, _odd_graceful),
    KindSpec("set_ordered_odd_graceful", _diff, _set_ordered_odd, bipartite=True),
    KindSpec("strongly_odd_graceful", _diff, _strongly_odd),
    KindSpec("total_graceful", _diff, _total_graceful),
    KindSpec("edge_magic_total_graceful", None, _emt_graceful, universe=_u_total, shared_pool=True),
    KindSpec("felicitous", _sum_mod_q, _felicitous),
    KindSpec("set_ordered_felicitous", _sum_mod_q, _so_felicitous, bipartite=True),
    KindSpec("kd_graceful", _diff, _kd_graceful),
    KindSpec("edge_magic_total", None, _emt, universe=_u_total, shared_pool=True),
    KindSpec("kd_edge_antimagic_total", None, _kd_eat, universe=_u_total, shared_pool=True),
    KindSpec("odd_elegant", _sum_mod_2q, _odd_elegant),
    KindSpec("elegant", _sum_mod_q1, _elegant),
    KindSpec("kd_arithmetic", _plain_sum, _kd_arith),
    KindSpec("harmonious", _sum_mod_q, _harmonious),
    KindSpec("kd_harmonious", _kd_harm, _kd_harmonious),
    KindSpec("relaxed_emt", None, _relaxed_emt, universe=_u_total, shared_pool=True),
    KindSpec("oemm", None, _oemm, universe=lambda p, q, prm: range(1, 2 * q, 2)),
    KindSpec("eedoemm", None, _eedoemm, distinct_edges=False, universe=lambda p, q, prm: range(1, 2 * q, 2)),
    KindSpec("six_c", None, _six_c, bipartite=True, universe=_u_total, shared_pool=True),
    KindSpec("odd_six_c", None, _odd_six_c, bipartite=True, universe=lambda p, q, prm: range(1, 4 * q, 2),
             shared_pool=True),
    KindSpec("dgemm", None, _dgemm, distinct_edges=False, universe=lambda p, q, prm: range(1, q + 1)),
    KindSpec("edge_odd_graceful_total", None, _edge_odd_graceful_total,
             universe=lambda p, q, prm: range(1, 2 * q, 2)),
    KindSpec("multiple_edge_meaning", _diff, _multiple_edge_meaning),
    KindSpec("perfect_odd_graceful", _diff, _perfect_odd),
    KindSpec("perfect_epsilon", _diff, _perfect_eps),
    KindSpec("four_c", None, _four_c, bipartite=True, distinct_edges=False,
             universe=lambda p, q, prm: range(q + 1, 3 * q + 2)),
    KindSpec("v_set_e_proper_graceful", None, _v_set, universe=lambda p, q, prm: range(1, q + 1)),
    KindSpec("odd_even_separable_emt", None, _odd_even_emt, bipartite=True,
             universe=lambda p, q, prm: range(2, 2 * q + 2, 2), shared_pool=True),
    KindSpec("free", _diff, _free),
]}


# -------------------------------------------------------------- public API
def edge_labels(g: Graph, lab: Labelling, q: int | None = None) -> dict[Edge, int]:
    """Stored edge values, or the kind's induced rule applied to ``g``."""
    spec = SPECS[base_name(lab.kind)]
    if spec.rule is None:
        if lab.edge_values is None:
            raise LabellingError(f"kind {lab.kind.value} needs explicit edge values")
        return dict(lab.edge_values)
    return _induced(spec.rule, g, lab.vertex_values, g.q if q is None else q, lab.params or DEFAULT_PARAMS)


def verify_base(g: Graph, name: str, f: Mapping[str, int], w_stored: Mapping[Edge, int] | None,
                params: tuple[int, int] | None, sets=None) -> Verdict:
    spec = SPECS[name]
    verdict = Verdict(name)
    if spec.bipartite and two_coloring(g) is None:
        raise LabellingError(f"kind {name} needs a bipartite graph; this graph has an odd cycle")
    if spec.rule is None:
        if w_stored is None:
            raise LabellingError(f"kind {name} needs explicit edge values")
        w = dict(w_stored)
    else:
        w = _induced(spec.rule, g, f, g.q, params)
    spec.check(Ctx(g, f, w, params, verdict, sets))
    return verdict


def verify(g: Graph, lab: Labelling) -> Verdict:
    """Check every clause of ``lab.kind`` on ``g``."""
    check_domain(g, lab)
    if is_flawed(lab.kind):
        return verify_flawed(g, lab)
    return verify_base(g, lab.kind.value, lab.vertex_values, lab.edge_values, lab.params, lab.vertex_sets)


def _components_index(g: Graph) -> dict[str, int]:
    idx = {}
    for i, comp in enumerate(components(g)):
        for v in comp.vertices:
            idx[v] = i
    return idx


def _uf_connects(pairs: Iterable[Edge], comp: dict[str, int], m: int) -> bool:
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    joined = 0
    for a, b in pairs:
        ra, rb = find(comp[a]), find(comp[b])
        if ra != rb:
            parent[ra] = rb
            joined += 1
    return joined == m - 1


def verify_flawed(g: Graph, lab: Labelling) -> Verdict:
    """A flawed labelling passes when some set E* of exactly ``flaw_budget``
    cross-component edges turns it into a base labelling of G + E*.
    The first witness found is reported as ``E*``."""
    name = base_name(lab.kind)
    spec = SPECS[name]
    verdict = Verdict(lab.kind.value)
    budget = lab.flaw_budget
    comp = _components_index(g)
    m = len(set(comp.values()))
    if budget is None:
        budget = m - 1
    verdict.constants["flaw_budget"] = budget
    if m < 2:
        verdict.fail("disconnected", "a flawed labelling needs a disconnected graph")
        return verdict
    if budget < m - 1:
        verdict.fail("flaw-budget", f"{budget} phantom edges cannot join {m} components")
        return verdict
    if spec.bipartite and two_coloring(g) is None:
        raise LabellingError(f"kind {name} needs a bipartite graph")

    f = lab.vertex_values
    sets = lab.vertex_sets
    cross = [ekey(a, b) for a, b in itertools.combinations(g.vertices, 2) if comp[a] != comp[b]]
    q_total = g.q + budget
    existing: set[int] = set()
    if spec.rule is not None:
        base_w = _induced(spec.rule, g, f, q_total, lab.params)
        existing = set(base_w.values()) if spec.distinct_edges else set()
        lab_of = {e: spec.rule(f[e[0]], f[e[1]], q_total, lab.params) for e in cross}
        if spec.distinct_edges:
            cross = [e for e in cross if lab_of[e] not in existing]
    elif lab.edge_values is None:
        raise LabellingError(f"kind {name} needs explicit edge values")

    checked = 0
    last: Verdict | None = None
    for combo in itertools.combinations(cross, budget):
        if spec.rule is not None and spec.distinct_edges:
            labs = [lab_of[e] for e in combo]
            if len(set(labs)) != len(labs):
                continue
        if not _uf_connects(combo, comp, m):
            continue
        h = Graph.make(g.vertices, list(g.edges) + list(combo), name=g.name)
        for extra in _phantom_labels(spec, g, lab, combo, q_total):
            checked += 1
            if checked > FLAW_SEARCH_CAP:
                raise SizeBoundError("flawed verification exceeded its candidate cap")
            w = None if extra is None else {**lab.edge_values, **extra}
            v = verify_base(h, name, f, w, lab.params, sets)
            if v.ok:
                verdict.constants.update(v.constants)
                verdict.constants["E*"] = [f"({a},{b})" for a, b in combo]
                labels_g = sorted(edge_labels_for(spec, g, lab, q_total).values())
                verdict.constants["edge_labels"] = labels_g
                full = v.constants.get("edge_labels")
                if full is not None:
                    verdict.constants["missing"] = sorted(set(full) - set(labels_g))
                return verdict
            last = v
    if last is None:
        verdict.fail("realizable", "no admissible set of joining edges exists")
    else:
        verdict.fail("realizable", "no joining edge set makes the labelling valid; last attempt failed "
                     + ",".join(dict.fromkeys(last.clauses)))
    return verdict


def edge_labels_for(spec: KindSpec, g: Graph, lab: Labelling, q: int) -> dict[Edge, int]:
    if spec.rule is None:
        return dict(lab.edge_values or {})
    return _induced(spec.rule, g, lab.vertex_values, q, lab.params)


def _phantom_labels(spec: KindSpec, g: Graph, lab: Labelling, combo, q_total: int):
    if spec.rule is not None:
        yield None
        return
    p = g.p
    used = set(lab.edge_values.values())
    if spec.shared_pool:
        used |= set(lab.vertex_values.values())
    pool = [x for x in spec.universe(p, q_total, lab.params) if x not in used]
    for chosen in itertools.permutations(pool, len(combo)):
        yield dict(zip(combo, chosen))


def dual(lab: Labelling) -> Labelling:
    """h'(z) = max h(S) + min h(S) - h(z) over the labelled elements."""
    vals = list(lab.vertex_values.values())
    if lab.edge_values is not None:
        vals += list(lab.edge_values.values())
    if not vals:
        return lab
    hi, lo = max(vals), min(vals)
    vv = {v: hi + lo - x for v, x in lab.vertex_values.items()}
    ev = None if lab.edge_values is None else {e: hi + lo - x for e, x in lab.edge_values.items()}
    return Labelling(lab.kind, vv, ev, lab.params, lab.flaw_budget, lab.vertex_sets)

"""Deterministic backtracking search for labellings.

Vertices are visited in lexicographic order and candidate values are tried
in ascending order, so the first labelling found is reproducible.  The
result distinguishes a certified absence (``exhausted``) from running out
of the node budget (``budget_exceeded``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from ..errors import LabellingError, SizeBoundError
from ..graph import Graph, classify, two_coloring
from .model import DEFAULT_PARAMS, Labelling, LabellingKind, is_flawed, kind_of
from .verify import SPECS, odd_set, s_kd, verify_base

#: Largest graph searched without an explicit budget.
SEARCH_VERTEX_CAP = 16
DEFAULT_BUDGET = 50_000_000


@dataclass(frozen=True)
class SearchResult:
    status: str  # "found" | "exhausted" | "budget_exceeded"
    labelling: Labelling | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"


class _Budget(Exception):
    pass


def _vertex_plan(name: str, p: int, q: int, params) -> tuple[range, set[int] | None, bool]:
    """Value domain, target edge-label set (None: no pruning) and whether the
    induced edge labels must be pairwise distinct."""
    k, d = params or DEFAULT_PARAMS
    plans = {
        "graceful": (range(0, q + 1), set(range(1, q + 1))),
        "set_ordered_graceful": (range(0, q + 1), set(range(1, q + 1))),
        "strongly_graceful": (range(0, q + 1), set(range(1, q + 1))),
        "odd_graceful": (range(0, 2 * q), odd_set(q)),
        "set_ordered_odd_graceful": (range(0, 2 * q), odd_set(q)),
        "strongly_odd_graceful": (range(0, 2 * q), odd_set(q)),
        "perfect_odd_graceful": (range(0, 2 * q), odd_set(q)),
        "total_graceful": (range(1, p + q + 1), None),
        "felicitous": (range(0, q + 1), set(range(q))),
        "set_ordered_felicitous": (range(0, q + 1), set(range(q))),
        "kd_graceful": (range(0, k + (q - 1) * d + 1), s_kd(k, d, q)),
        "odd_elegant": (range(0, 2 * q), odd_set(q)),
        "elegant": (range(0, q + 1), set(range(1, q + 1))),
        "kd_arithmetic": (range(0, k + (q - 1) * d + 1), s_kd(k, d, q)),
        "harmonious": (range(0, max(q, 1)), set(range(q))),
        "kd_harmonious": (range(0, k + (q - 1) * d + 1), s_kd(k, d, q)),
        "multiple_edge_meaning": (range(0, p), None),
        "perfect_epsilon": (range(0, p + q + 1), None),
        "free": (range(0, p), None),
    }
    if name not in plans:
        raise LabellingError(f"search does not support kind {name}")
    dom, target = plans[name]
    return dom, target, target is not None


def search(g: Graph, kind, params: tuple[int, int] | None = None, budget: int | None = None,
           fixed: Mapping[str, int] | None = None) -> SearchResult:
    """First labelling of ``kind`` on ``g`` in deterministic order.

    ``fixed`` pins chosen vertices to given values (vertex kinds only).
    """
    k = kind_of(kind)
    if is_flawed(k):
        raise LabellingError("search covers base kinds; flawed labellings come from the constructions")
    name = k.value
    if name in ("kd_graceful", "kd_arithmetic", "kd_harmonious", "kd_edge_antimagic_total"):
        params = tuple(params) if params else DEFAULT_PARAMS
    if budget is None:
        if g.p > SEARCH_VERTEX_CAP:
            raise SizeBoundError(f"search is exhaustive; {g.p} vertices exceeds {SEARCH_VERTEX_CAP} "
                                 "without an explicit budget")
        budget = DEFAULT_BUDGET
    if SPECS[name].bipartite and two_coloring(g) is None:
        raise LabellingError(f"kind {name} needs a bipartite graph; this graph has an odd cycle")
    if fixed and set(fixed) - set(g.vertices):
        raise LabellingError(f"fixed vertices not in graph: {sorted(set(fixed) - set(g.vertices))}")
    if name in ("edge_magic_total", "edge_magic_total_graceful", "kd_edge_antimagic_total"):
        if fixed:
            raise LabellingError("fixed values are supported for vertex kinds only")
        return _search_total(g, name, params, budget)
    return _search_vertex(g, name, params, budget, dict(fixed or {}))


def _search_vertex(g: Graph, name: str, params, budget: int, fixed: dict[str, int] | None = None) -> SearchResult:
    spec = SPECS[name]
    p, q = g.p, g.q
    dom, target, distinct = _vertex_plan(name, p, q, params)
    rule = spec.rule
    prm = params or DEFAULT_PARAMS
    order = sorted(g.vertices)
    pos = {v: i for i, v in enumerate(order)}
    back = [[pos[u] for u in g.adjacency[v] if pos[u] < i] for i, v in enumerate(order)]
    nbrs = [[pos[u] for u in g.adjacency[v]] for v in order]
    tree = name == "harmonious" and classify(g).tree
    is_diff = rule is not None and rule.__name__ == "_diff" and target is not None
    targets_desc = sorted(target, reverse=True) if target else []
    fixed = fixed or {}
    reserved = {val: v for v, val in fixed.items()}
    doms = [(fixed[v],) if v in fixed else dom for v in order]
    vals = [-1] * p
    used_val: dict[int, int] = {}
    used_edge: set[int] = set()
    nodes = [0]
    repeat_used = [False]

    def feasible(i_next: int) -> bool:
        if not is_diff:
            return True
        L = next((t for t in targets_desc if t not in used_edge), None)
        if L is None:
            return True
        free_slots = p - i_next
        for a in range(dom.start, dom.stop - L):
            b = a + L
            ok = True
            need = 0
            for val in (a, b):
                owner = used_val.get(val)
                if owner is None:
                    need += 1
                elif not any(j >= i_next for j in nbrs[owner]):
                    ok = False
                    break
            if ok and 0 < need <= free_slots:
                return True
        return False

    def rec(i: int) -> bool:
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Budget
        if i == p:
            f = {order[j]: vals[j] for j in range(p)}
            return verify_base(g, name, f, None, params).ok
        for x in doms[i]:
            if reserved.get(x, order[i]) != order[i] and not tree:
                continue
            dup = x in used_val
            if dup and not (tree and not repeat_used[0]):
                continue
            new_labels = []
            ok = True
            for j in back[i]:
                lab = rule(x, vals[j], q, prm) if rule else 0
                if target is not None:
                    if lab not in target or (distinct and (lab in used_edge or lab in new_labels)):
                        ok = False
                        break
                new_labels.append(lab)
            if not ok:
                continue
            vals[i] = x
            prev_owner = used_val.get(x)
            used_val[x] = i
            if dup:
                repeat_used[0] = True
            used_edge.update(new_labels)
            if feasible(i + 1) and rec(i + 1):
                return True
            used_edge.difference_update(new_labels)
            if dup:
                repeat_used[0] = False
                used_val[x] = prev_owner  # type: ignore[assignment]
            else:
                del used_val[x]
            vals[i] = -1
        return False

    try:
        found = rec(0)
    except _Budget:
        return SearchResult("budget_exceeded", None, nodes[0])
    if not found:
        return SearchResult("exhausted", None, nodes[0])
    f = {order[j]: vals[j] for j in range(p)}
    return SearchResult("found", Labelling.make(name, f, None, params), nodes[0])


def _search_total(g: Graph, name: str, params, budget: int) -> SearchResult:
    """Vertex backtracking; edge values follow from the constant (magic
    kinds) or are filled by a second backtracking pass (antimagic)."""
    p, q = g.p, g.q
    n = p + q
    order = sorted(g.vertices)
    pos = {v: i for i, v in enumerate(order)}
    back = [[pos[u] for u in g.adjacency[v] if pos[u] < i] for i, v in enumerate(order)]
    edge_of = {}
    for a, b in g.edges:
        edge_of[(pos[a], pos[b])] = (a, b)
        edge_of[(pos[b], pos[a])] = (a, b)
    nodes = [0]

    def tick():
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Budget

    if name == "kd_edge_antimagic_total":
        k, d = params
        target = s_kd(k, d, q)

    def run(const: int | None) -> dict | None:
        vals = [0] * p
        used: set[int] = set()
        edges: dict = {}

        def edge_value(x: int, y: int) -> int:
            if name == "edge_magic_total":
                return const - x - y
            return const - abs(x - y)

        def rec(i: int):
            tick()
            if i == p:
                if name == "kd_edge_antimagic_total":
                    return fill_antimagic(vals, used)
                f = {order[j]: vals[j] for j in range(p)}
                return (f, dict(edges)) if verify_base(g, name, f, edges, params).ok else None
            for x in range(1, n + 1):
                if x in used:
                    continue
                added = []
                ok = True
                used.add(x)
                if const is not None:
                    for j in back[i]:
                        lab = edge_value(x, vals[j])
                        if not 1 <= lab <= n or lab in used:
                            ok = False
                            break
                        used.add(lab)
                        added.append(lab)
                        edges[edge_of[(i, j)]] = lab
                if ok:
                    vals[i] = x
                    r = rec(i + 1)
                    if r:
                        return r
                for lab in added:
                    used.discard(lab)
                for j in back[i][:len(added)]:
                    edges.pop(edge_of[(i, j)], None)
                used.discard(x)
            return None

        return rec(0)

    def fill_antimagic(vals, used):
        free = [x for x in range(1, n + 1) if x not in used]
        elist = list(g.edges)
        sums_used: set[int] = set()
        chosen: dict = {}

        def rec(t: int):
            tick()
            if t == len(elist):
                f = {order[j]: vals[j] for j in range(p)}
                return (f, dict(chosen)) if verify_base(g, name, f, chosen, params).ok else None
            a, b = elist[t]
            base = vals[pos[a]] + vals[pos[b]]
            for lab in list(free):
                s = base + lab
                if s in target and s not in sums_used:
                    free.remove(lab)
                    sums_used.add(s)
                    chosen[(a, b)] = lab
                    r = rec(t + 1)
                    if r:
                        return r
                    del chosen[(a, b)]
                    sums_used.discard(s)
                    free.append(lab)
                    free.sort()
            return None

        return rec(0)

    try:
        if name == "kd_edge_antimagic_total":
            res = run(None)
        else:
            res = None
            consts = range(1, 3 * n + 1) if name == "edge_magic_total" else range(1, 2 * n + 1)
            for c in consts:
                res = run(c)
                if res:
                    break
    except _Budget:
        return SearchResult("budget_exceeded", None, nodes[0])
    if not res:
        return SearchResult("exhausted", None, nodes[0])
    f, e = res
    return SearchResult("found", Labelling.make(name, f, e, params), nodes[0])


def enumerate_labellings(g: Graph, kind, params=None, limit: int | None = None,
                         predicate: Callable[[Labelling], bool] | None = None) -> list[Labelling]:
    """All labellings of a vertex kind (brute force over the value domain).

    Meant as an independent oracle for small graphs: no pruning beyond the
    final clause check.
    """
    import itertools

    k = kind_of(kind)
    name = k.value
    prm = params if params else (DEFAULT_PARAMS if name.startswith("kd_") else None)
    dom, _, _ = _vertex_plan(name, g.p, g.q, prm)
    out = []
    verts = list(g.vertices)
    for combo in itertools.product(dom, repeat=g.p):
        f = dict(zip(verts, combo))
        if verify_base(g, name, f, None, prm).ok:
            lab = Labelling.make(name, f, None, prm)
            if predicate is None or predicate(lab):
                out.append(lab)
                if limit is not None and len(out) >= limit:
                    break
    return out

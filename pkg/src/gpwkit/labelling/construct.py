"""Explicit labelling constructions on forests, caterpillars and trees.

Every builder here hands its output to the verifier before returning it.
A labelling that fails that gate raises instead of being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import networkx as nx

from ..errors import GraphError, LabellingError, SizeBoundError
from ..graph import Graph, classify, components, ekey
from .model import Labelling
from .search import search
from .verify import verify, verify_base


def _sides(comp: Graph, lab: Mapping[str, int]) -> tuple[list[str], list[str]]:
    """Low and high side of a set-ordered labelling of a connected graph."""
    v = verify_base(comp, "set_ordered_graceful", {x: lab[x] for x in comp.vertices}, None, None)
    if not v.ok:
        raise LabellingError(f"component {sorted(comp.vertices)[0]}...: not set-ordered graceful "
                             f"({','.join(dict.fromkeys(v.clauses))})")
    t = v.constants.get("threshold", -1)
    low = [x for x in comp.vertices if lab[x] <= t]
    high = [x for x in comp.vertices if lab[x] > t]
    return low, high


def _gate(g: Graph, lab: Labelling, step: str) -> Labelling:
    v = verify(g, lab)
    if not v.ok:
        raise LabellingError(f"{step}: constructed labelling failed verification "
                             f"({'; '.join(f'{c}: {d}' for c, d in v.failures)})")
    return lab


def construct_flawed_sogl_forest(g: Graph, labellings: Sequence[Labelling | Mapping[str, int]]) -> Labelling:
    """Stack per-component set-ordered graceful labellings into one flawed one.

    ``labellings[i]`` labels the i-th component in :func:`components` order
    (a single labelling covering the whole forest is also accepted).  Low
    sides are stacked in component order, high sides in reverse order, so
    component i's edge labels land on ``[c_i + 1, c_i + p_i - 1]`` with
    ``c_i`` the vertex count of the later components.
    """
    comps = components(g)
    if not classify(g).forest:
        raise GraphError("input must be a forest")
    if len(labellings) == 1 and len(comps) > 1:
        whole = labellings[0]
        whole_map = whole.vertex_values if isinstance(whole, Labelling) else whole
        maps = [{v: whole_map[v] for v in c.vertices} for c in comps]
    else:
        if len(labellings) != len(comps):
            raise LabellingError(f"{len(comps)} components but {len(labellings)} labellings")
        maps = [dict(l.vertex_values if isinstance(l, Labelling) else l) for l in labellings]
    if len(comps) == 1:
        return _gate(g, Labelling.make("set_ordered_graceful", maps[0]), "single component")
    sides = []
    for comp, f in zip(comps, maps):
        if set(f) != set(comp.vertices):
            raise LabellingError("a component labelling does not cover its component")
        sides.append(_sides(comp, f))
    s = [len(lo) for lo, _ in sides]
    t = [len(hi) for _, hi in sides]
    M = sum(s)
    out: dict[str, int] = {}
    for i, ((lo, hi), f) in enumerate(zip(sides, maps)):
        x_shift = sum(s[:i])
        y_shift = M - s[i] + sum(t[i + 1:])
        for x in lo:
            out[x] = f[x] + x_shift
        for y in hi:
            out[y] = f[y] + y_shift
    lab = Labelling.make("flawed_set_ordered_graceful", out, flaw_budget=len(comps) - 1)
    return _gate(g, lab, "forest stacking")


# ----------------------------------------------------------- caterpillars
def _spine(comp: Graph) -> list[str]:
    """A longest path; for a caterpillar every other vertex hangs off it."""
    if comp.p == 1:
        return [comp.vertices[0]]
    nxg = comp.to_networkx()
    start = min(comp.vertices)
    far = max(nx.single_source_shortest_path_length(nxg, start).items(), key=lambda kv: (kv[1], kv[0]))[0]
    dist = nx.single_source_shortest_path_length(nxg, far)
    end = max(dist.items(), key=lambda kv: (kv[1], kv[0]))[0]
    return nx.shortest_path(nxg, far, end)


def caterpillar_sweep(tree: Graph, spine: Sequence[str] | None = None) -> Labelling:
    """Set-ordered graceful labelling of a caterpillar.

    Edges are visited spine vertex by spine vertex (pendant leaves first,
    then the next spine edge).  Each visited edge shares an end with the
    previous one, so handing the low side 0,1,2,... and the high side
    q,q-1,... in order of first appearance makes the differences run
    q, q-1, ..., 1.
    """
    info = classify(tree)
    if not info.caterpillar:
        raise GraphError("graph is not a caterpillar")
    spine = list(spine) if spine is not None else _spine(tree)
    on_spine = set(spine)
    side = {spine[0]: 0}
    for a, b in zip(spine, spine[1:]):
        side[b] = 1 - side[a]
    seq: list[str] = [spine[0]]
    for i, v in enumerate(spine):
        leaves = sorted(u for u in tree.neighbors(v) if u not in on_spine)
        for u in leaves:
            side[u] = 1 - side[v]
        seq += leaves
        if i + 1 < len(spine):
            seq.append(spine[i + 1])
    if set(seq) != set(tree.vertices):
        raise GraphError("caterpillar spine does not dominate the tree")
    lo, hi = 0, tree.q
    out: dict[str, int] = {}
    for v in seq:
        if side[v] == 0:
            out[v] = lo
            lo += 1
        else:
            out[v] = hi
            hi -= 1
    return _gate(tree, Labelling.make("set_ordered_graceful", out), "caterpillar sweep")


def construct_caterpillar_chain(g: Graph, order: Sequence[int] | None = None) -> Labelling:
    """Join caterpillar components end to end, label the joined caterpillar,
    then forget the joining edges.

    ``order`` permutes the components (indices into :func:`components`).
    """
    comps = components(g)
    for c in comps:
        if not classify(c).caterpillar:
            raise GraphError(f"component containing {c.vertices[0]} is not a caterpillar")
    order = list(range(len(comps))) if order is None else list(order)
    if sorted(order) != list(range(len(comps))):
        raise LabellingError(f"order must be a permutation of 0..{len(comps) - 1}")
    spine: list[str] = []
    joins = []
    for idx in order:
        part = _spine(comps[idx])
        if spine:
            joins.append(ekey(spine[-1], part[0]))
        spine += part
    joined = Graph.make(g.vertices, list(g.edges) + joins)
    full = caterpillar_sweep(joined, spine)
    if len(comps) == 1:
        return full
    lab = Labelling.make("flawed_set_ordered_graceful", full.vertex_values, flaw_budget=len(comps) - 1)
    return _gate(g, lab, "joining-edge removal")


# --------------------------------------------------------- symmetric trees
def image_id(v: str) -> str:
    return v + "'"


def symmetric_tree(t: Graph, anchor: str) -> Graph:
    """T joined to a primed copy of itself by the edge anchor-anchor'."""
    if anchor not in t.vertices:
        raise GraphError(f"anchor {anchor!r} is not a vertex")
    if not classify(t).tree:
        raise GraphError("symmetric_tree needs a tree")
    verts = list(t.vertices) + [image_id(v) for v in t.vertices]
    edges = list(t.edges) + [(image_id(a), image_id(b)) for a, b in t.edges] + [(anchor, image_id(anchor))]
    return Graph.make(verts, edges, name=f"{t.name or t.code or 'T'} sym {anchor}")


def symmetric_sogl(t: Graph, lab: Labelling | Mapping[str, int], anchor: str) -> Labelling:
    """Set-ordered graceful labelling of the symmetric tree from one of T.

    Low side x and high side y of T: x keeps f(x), y gets f(y)+p, the
    image y' gets f(y) and the image x' gets f(x)+p.  Edges of T then
    carry p+1..2p-1, edges of the copy 1..p-1, and the joining edge p.
    """
    f = lab.vertex_values if isinstance(lab, Labelling) else lab
    low, high = _sides(t, f)
    p = t.p
    out = {}
    for x in low:
        out[x] = f[x]
        out[image_id(x)] = f[x] + p
    for y in high:
        out[y] = f[y] + p
        out[image_id(y)] = f[y]
    sym = symmetric_tree(t, anchor)
    return _gate(sym, Labelling.make("set_ordered_graceful", out), "symmetric tree")


# --------------------------------------------------------------- rotation
@dataclass
class RotationReport:
    kind: str
    set_ordered: bool
    flags: dict[str, bool]
    witnesses: dict[str, Labelling]

    @property
    def ok(self) -> bool:
        return all(self.flags.values())


ROTATION_VERTEX_CAP = 12


def zero_rotatable_check(g: Graph, kind: str = "graceful", set_ordered: bool = False,
                         budget: int | None = None) -> RotationReport:
    """For each vertex, whether some labelling of the kind puts 0 on it."""
    if kind not in ("graceful", "odd_graceful"):
        raise LabellingError("zero rotation is defined for graceful and odd_graceful")
    if g.p > ROTATION_VERTEX_CAP:
        raise SizeBoundError(f"{g.p} vertices exceeds the rotation cap of {ROTATION_VERTEX_CAP}")
    info = classify(g)
    if g.p > 1 and not info.bipartite or not (g.p == 1 or len(components(g)) == 1):
        raise GraphError("zero rotation needs a connected bipartite graph")
    name = ("set_ordered_" + kind) if set_ordered else kind
    flags, wit = {}, {}
    for v in g.vertices:
        res = search(g, name, budget=budget, fixed={v: 0})
        if res.status == "budget_exceeded":
            raise SizeBoundError(f"search budget ran out at vertex {v}")
        flags[v] = res.found
        if res.found:
            wit[v] = res.labelling
    return RotationReport(kind, set_ordered, flags, wit)


__all__ = [
    "construct_flawed_sogl_forest", "caterpillar_sweep", "construct_caterpillar_chain",
    "symmetric_tree", "symmetric_sogl", "image_id", "zero_rotatable_check", "RotationReport",
]

"""Half-directed graphs and digraphs: directed labellings, orientations
obtained from set-ordered labellings, and signed Topsnut matrices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .errors import DirectedError
from .graph import Edge, Graph, components, ekey
from .labelling.model import Labelling, Verdict, base_name
from .labelling.verify import verify, verify_base
from .matrix import TBPaw, TopsnutMatrix, serialize_o

GRACEFUL_KINDS = ("directed_graceful", "directed_odd_graceful",
                  "half_directed_graceful", "half_directed_odd_graceful")
DIRECTED_KINDS = GRACEFUL_KINDS + tuple("flawed_" + k for k in GRACEFUL_KINDS) + ("directed_six_c",)


@dataclass(frozen=True)
class DirectedGraph:
    vertices: tuple[str, ...]
    arcs: tuple[Edge, ...]
    undirected_edges: tuple[Edge, ...] = ()
    edge_order: tuple[Edge, ...] | None = None
    name: str = ""

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise DirectedError("duplicate vertex id")
        seen: set[Edge] = set()
        for a, b in list(self.arcs) + list(self.undirected_edges):
            if a == b or a not in vs or b not in vs:
                raise DirectedError(f"bad pair ({a},{b})")
            k = ekey(a, b)
            if k in seen:
                raise DirectedError(f"pair {k} appears twice; the underlying graph must be simple")
            seen.add(k)

    @classmethod
    def from_graph(cls, g: Graph) -> "DirectedGraph":
        """Split a corpus graph into its arcs and its remaining edges."""
        arcset = {ekey(*a) for a in g.arcs}
        und = tuple(e for e in g.edges if e not in arcset)
        return cls(g.vertices, tuple(g.arcs), und, g.edge_order, g.code or g.name or "")

    @property
    def q(self) -> int:
        return len(self.arcs) + len(self.undirected_edges)

    @property
    def p(self) -> int:
        return len(self.vertices)

    @property
    def fully_directed(self) -> bool:
        return not self.undirected_edges

    def underlying(self) -> Graph:
        return Graph.make(self.vertices, list(self.undirected_edges) + list(self.arcs), name=self.name)

    def sequence(self) -> list[Edge]:
        """Column order for matrices: the recorded order, else arcs first."""
        if self.edge_order is not None:
            return list(self.edge_order)
        return list(self.arcs) + list(self.undirected_edges)


@dataclass(frozen=True)
class DirectedLabelling:
    kind: str
    vertex_values: Mapping[str, int]
    arc_values: Mapping[Edge, int] | None = None   # total labellings only, keyed canonically
    uniform: str | None = None                      # '+', '-' or None
    flaw_budget: int | None = None

    def __post_init__(self):
        if self.kind not in DIRECTED_KINDS:
            raise DirectedError(f"unknown directed kind {self.kind!r}")
        if self.uniform not in (None, "+", "-"):
            raise DirectedError("uniform flag must be '+', '-' or absent")

    @property
    def flawed(self) -> bool:
        return self.kind.startswith("flawed_")

    @property
    def base(self) -> str:
        return self.kind.removeprefix("flawed_")


def pair_values(dg: DirectedGraph, f: Mapping[str, int]) -> tuple[dict[Edge, int], dict[Edge, int]]:
    """(signed arc values keyed (tail, head), edge values keyed canonically)."""
    arcs = {(a, b): f[a] - f[b] for a, b in dg.arcs}
    edges = {ekey(a, b): abs(f[a] - f[b]) for a, b in dg.undirected_edges}
    return arcs, edges


def _phantom_witness(f: Mapping[str, int], comps: list[set[str]], missing: list[int]) -> list[Edge] | None:
    """One joining edge per missing label, together connecting all parts."""
    where = {v: i for i, c in enumerate(comps) for v in c}
    by_label: list[list[Edge]] = []
    for lab in missing:
        cands = [ekey(a, b) for a, b in itertools.combinations(sorted(where), 2)
                 if where[a] != where[b] and abs(f[a] - f[b]) == lab]
        if not cands:
            return None
        by_label.append(cands)
    for combo in itertools.product(*by_label):
        parent = list(range(len(comps)))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x
        for a, b in combo:
            ra, rb = find(where[a]), find(where[b])
            if ra != rb:
                parent[ra] = rb
        if len({find(i) for i in range(len(comps))}) == 1:
            return list(combo)
    return None


def verify_directed(dg: DirectedGraph, lab: DirectedLabelling) -> Verdict:
    """Clause check; the verdict records ``f_plus``, ``f_minus`` and
    ``uniform`` (``+``, ``-`` or ``none``)."""
    missing_v = [v for v in dg.vertices if v not in lab.vertex_values]
    if missing_v:
        raise DirectedError(f"vertex {missing_v[0]} has no label")
    base = lab.base
    if base.startswith("directed_") and not dg.fully_directed:
        raise DirectedError(f"{lab.kind} needs a digraph; this graph has undirected edges")
    if base.startswith("half_directed_") and dg.fully_directed and not dg.arcs:
        raise DirectedError(f"{lab.kind} needs at least one arc")
    und = dg.underlying()
    comps = [set(c.vertices) for c in components(und)]
    if not lab.flawed and len(comps) > 1:
        raise DirectedError(f"{lab.kind} needs a connected underlying graph")
    f = lab.vertex_values
    v = Verdict(lab.kind)
    arcs, edges = pair_values(dg, f)
    v.constants["f_plus"] = sorted(x for x in arcs.values() if x > 0)
    v.constants["f_minus"] = sorted(x for x in arcs.values() if x < 0)
    signs = {x > 0 for x in arcs.values()}
    v.constants["uniform"] = "none" if len(signs) != 1 else ("+" if True in signs else "-")
    if lab.uniform is not None and v.constants["uniform"] != lab.uniform:
        v.fail("uniform", f"arc values are not all {'positive' if lab.uniform == '+' else 'negative'}")

    if base == "directed_six_c":
        if lab.flawed:
            raise DirectedError("flawed directed 6C labellings are not supported")
        if lab.arc_values is None:
            raise DirectedError("directed_six_c needs arc values")
        inner = verify_base(und, "six_c", f, {ekey(*k): x for k, x in lab.arc_values.items()}, None)
        for clause, detail in inner.failures:
            v.fail(clause, detail)
        v.constants.update({k: c for k, c in inner.constants.items() if k not in v.constants})
        return v

    if len(set(f[x] for x in dg.vertices)) != dg.p:
        v.fail("vertex-injective", "two vertices share a label")
    budget = 0
    if lab.flawed:
        if len(comps) < 2:
            v.fail("disconnected", "a flawed labelling needs a disconnected underlying graph")
            return v
        budget = lab.flaw_budget if lab.flaw_budget is not None else len(comps) - 1
        v.constants["flaw_budget"] = budget
    Q = dg.q + budget
    odd = base.endswith("odd_graceful")
    hi = 2 * Q - 1 if odd else Q
    target = set(range(1, 2 * Q, 2)) if odd else set(range(1, Q + 1))
    bad = [x for x in dg.vertices if not 0 <= f[x] <= hi]
    if bad:
        v.fail("vertex-range", f"{bad[0]}={f[bad[0]]} outside [0,{hi}]")
    mags = [abs(x) for x in arcs.values()] + list(edges.values())
    v.constants["edge_labels"] = sorted(mags)
    if len(set(mags)) != len(mags):
        v.fail("edge-set", "two pairs share a label magnitude")
    elif not set(mags) <= target:
        v.fail("edge-set", f"magnitudes outside the target set: {sorted(set(mags) - target)}")
    elif not lab.flawed and set(mags) != target:
        v.fail("edge-set", f"missing {sorted(target - set(mags))}")
    if lab.flawed and v.ok:
        missing = sorted(target - set(mags))
        v.constants["missing"] = missing
        wit = _phantom_witness(f, comps, missing)
        if wit is None:
            v.fail("realizable", "no joining edges realise the missing labels")
        else:
            v.constants["E*"] = [f"({a},{b})" for a, b in wit]
    return v


def orient_by_labels(g: Graph, f: Mapping[str, int], kind: str = "directed_graceful",
                     flaw_budget: int | None = None) -> tuple[DirectedGraph, DirectedLabelling]:
    """Point every edge from its larger-labelled end to its smaller one."""
    arcs = tuple((a, b) if f[a] > f[b] else (b, a) for a, b in g.edges)
    order = None
    if g.edge_order is not None:
        order = tuple((a, b) if f[a] > f[b] else (b, a) for a, b in g.edge_order)
    dg = DirectedGraph(g.vertices, arcs, (), order, g.code or g.name or "")
    return dg, DirectedLabelling(kind, dict(f), None, "+", flaw_budget)


def orient_from_sogl(g: Graph, lab: Labelling) -> tuple[DirectedGraph, DirectedLabelling]:
    """Orientation from a (flawed) set-ordered graceful labelling: Y to X."""
    if base_name(lab.kind) != "set_ordered_graceful":
        raise DirectedError(f"expected a set-ordered graceful labelling, got {lab.kind.value}")
    verdict = verify(g, lab)
    if not verdict.ok:
        raise DirectedError("labelling does not verify: " + ",".join(dict.fromkeys(verdict.clauses)))
    flawed = lab.kind.value.startswith("flawed_")
    kind = "flawed_directed_graceful" if flawed else "directed_graceful"
    budget = lab.flaw_budget if flawed else None
    return orient_by_labels(g, lab.vertex_values, kind, budget)


def directed_matrix(dg: DirectedGraph, lab: DirectedLabelling, check: bool = True) -> TopsnutMatrix:
    """Columns (f(tail), f(tail)-f(head), f(head)) for arcs and
    (f(x), |f(x)-f(y)|, f(y)) for edges, in the graph's column order."""
    if check:
        v = verify_directed(dg, lab)
        if not v.ok:
            raise DirectedError("labelling does not verify: " + ",".join(dict.fromkeys(v.clauses)))
    f = lab.vertex_values
    arc_by_key = {ekey(*a): a for a in dg.arcs}
    cols, binding = [], []
    for a, b in dg.sequence():
        k = ekey(a, b)
        if k in arc_by_key:
            t, h = arc_by_key[k]
            mid = f[t] - f[h] if lab.arc_values is None else lab.arc_values[(t, h)]
            cols.append((f[t], mid, f[h]))
            binding.append((t, h))
        else:
            cols.append((f[a], abs(f[a] - f[b]), f[b]))
            binding.append((a, b))
    return TopsnutMatrix(tuple(cols), tuple(binding), dg.name)


def directed_serialize(m: TopsnutMatrix, algo: str = "O1", variant: str = "plain") -> TBPaw:
    """O-k serialisation; negative entries come out as ``x`` followed by
    the magnitude."""
    return serialize_o(m, algo, variant)


def parse_arcs(text: str) -> list[Edge]:
    """``(a->b),(c->d)`` to a list of pairs."""
    out = []
    for chunk in text.replace(" ", "").split("),"):
        chunk = chunk.strip("()")
        if not chunk:
            continue
        if "->" not in chunk:
            raise DirectedError(f"arc {chunk!r} lacks '->'")
        a, b = chunk.split("->")
        out.append((a, b))
    return out


__all__ = [
    "DirectedGraph", "DirectedLabelling", "DIRECTED_KINDS", "verify_directed", "orient_from_sogl",
    "orient_by_labels", "directed_matrix", "directed_serialize", "pair_values", "parse_arcs",
]

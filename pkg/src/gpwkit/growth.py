"""Self-similar network growth: leaf algorithms, vertex- and edge-coincided
products, Fibonacci planting, closed-form counts and degree statistics."""

from __future__ import annotations

import itertools
import math
import random
import statistics
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx

from .errors import GrowthError, SizeBoundError
from .graph import Graph, classify, is_connected

MAX_VERTICES = 10 ** 6
SEMIGROUP_VERTEX_CAP = 6
SPLIT_EDGE_CAP = 24

LEAF_ALGOS = ("leaf_A", "leaf_B", "leaf_C")
VCOIN = ("vcoin_I", "vcoin_II", "vcoin_III", "vcoin_IV")
ECOIN = ("ecoin_I", "ecoin_II", "ecoin_III", "ecoin_IV")
FIB = ("fib_vertex", "fib_edge")
ALGORITHMS = LEAF_ALGOS + VCOIN + ECOIN + FIB


# ------------------------------------------------------------ internal net
@dataclass
class Net:
    """Integer-indexed working graph with an active vertex or edge."""

    n: int
    edges: list[tuple[int, int]]
    active_vertex: int | None = None
    active_edge: tuple[int, int] | None = None
    level: list[int] | None = None
    names: list[str] | None = None

    @classmethod
    def from_graph(cls, g: Graph, active_vertex: str | None = None,
                   active_edge: tuple[str, str] | None = None) -> "Net":
        idx = {v: i for i, v in enumerate(g.vertices)}
        av = None if active_vertex is None else idx[active_vertex]
        ae = None if active_edge is None else (idx[active_edge[0]], idx[active_edge[1]])
        return cls(g.p, [(idx[a], idx[b]) for a, b in g.edges], av, ae, None, list(g.vertices))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        d = [0] * self.n
        for a, b in self.edges:
            d[a] += 1
            d[b] += 1
        return d

    def to_graph(self, name: str | None = None) -> Graph:
        if self.level is not None:
            counters: dict[int, int] = {}
            ids = []
            for lv in self.level:
                counters[lv] = counters.get(lv, 0) + 1
                ids.append(f"{lv}.{counters[lv]}")
        elif self.names is not None and len(self.names) == self.n:
            ids = list(self.names)
        else:
            ids = [f"v{i}" for i in range(self.n)]
        return Graph.make(ids, [(ids[a], ids[b]) for a, b in self.edges], name=name)


def _copy_into(out_edges: list, base: int, x: Net, fixed: dict[int, int]) -> int:
    """Append a copy of x; vertices in ``fixed`` map onto existing ids.
    Returns the number of fresh vertices used."""
    mp: dict[int, int] = dict(fixed)
    nxt = base
    for v in range(x.n):
        if v not in mp:
            mp[v] = nxt
            nxt += 1
    for a, b in x.edges:
        out_edges.append((mp[a], mp[b]))
    return nxt - base


def vertex_coincide(x: Net, host: Net) -> Net:
    """A copy of x on every vertex of host, x's active vertex coinciding
    with that vertex.  The host's active vertex stays active."""
    if x.active_vertex is None:
        raise GrowthError("the copied network has no active vertex")
    edges = list(host.edges)
    n = host.n
    for w in range(host.n):
        n += _copy_into(edges, n, x, {x.active_vertex: w})
    return Net(n, edges, host.active_vertex)


def _orient(a: int, b: int, orientation: str, rng: random.Random | None) -> tuple[int, int]:
    lo, hi = min(a, b), max(a, b)
    if rng is not None:
        return (lo, hi) if rng.random() < 0.5 else (hi, lo)
    return (lo, hi) if orientation == "lex" else (hi, lo)


def edge_coincide(x: Net, host: Net, orientation: str = "lex", rng: random.Random | None = None) -> Net:
    """A copy of x on every edge of host, x's active edge overlapping it.

    The first end of x's active edge lands on the smaller host endpoint
    (``lex``) or the larger one (``reverse``); an rng picks at random.
    """
    if x.active_edge is None:
        raise GrowthError("the copied network has no active edge")
    xa, xb = x.active_edge
    skip = {frozenset(x.active_edge)}
    xe = Net(x.n, [e for e in x.edges if frozenset(e) not in skip])
    edges = list(host.edges)
    n = host.n
    for a, b in host.edges:
        p, q = _orient(a, b, orientation, rng)
        n += _copy_into(edges, n, xe, {xa: p, xb: q})
    return Net(n, edges, None, host.active_edge)


def _plant(net: Net, seed: Net, copies_at: list[int], edge_mode: bool, new_level: int) -> Net:
    """Plant copies_at[x] copies of seed on each vertex x."""
    edges = list(net.edges)
    level = list(net.level or [0] * net.n)
    n = net.n
    u = seed.active_vertex
    for x, c in enumerate(copies_at):
        for _ in range(c):
            if edge_mode:
                used = _copy_into(edges, n, seed, {})
                edges.append((x, n + u))
            else:
                used = _copy_into(edges, n, seed, {u: x})
            level += [new_level] * used
            n += used
    return Net(n, edges, net.active_vertex, None, level)


# ------------------------------------------------------------ leaf algorithms
def _leaf_pairs(net: Net, exclude: int | None = None) -> list[tuple[int, int]]:
    """(leaf, neighbour) for every leaf other than ``exclude``."""
    adj: list[list[int]] = [[] for _ in range(net.n)]
    for a, b in net.edges:
        adj[a].append(b)
        adj[b].append(a)
    return [(v, adj[v][0]) for v in range(net.n) if len(adj[v]) == 1 and v != exclude]


def _delete_vertices(net: Net, dead: set[int]) -> tuple[Net, dict[int, int]]:
    keep = [v for v in range(net.n) if v not in dead]
    mp = {v: i for i, v in enumerate(keep)}
    edges = [(mp[a], mp[b]) for a, b in net.edges if a in mp and b in mp]
    av = mp.get(net.active_vertex) if net.active_vertex is not None else None
    return Net(len(keep), edges, av), mp


def _leaf_step(core_src: Net, pairs: list[tuple[int, int]], copy: Net, attach: int) -> Net:
    """Delete the listed leaves of core_src and coincide ``attach`` of a copy
    with each leaf's neighbour."""
    core, mp = _delete_vertices(core_src, {l for l, _ in pairs})
    edges = list(core.edges)
    n = core.n
    for _, nb in pairs:
        n += _copy_into(edges, n, copy, {attach: mp[nb]})
    return Net(n, edges, core.active_vertex)


def _first_nonleaf(net: Net) -> int:
    d = net.degrees()
    for v in range(net.n):
        if d[v] > 1:
            return v
    raise GrowthError("seed tree has no internal vertex")


# --------------------------------------------------------------- spec/trace
@dataclass
class GrowthSpec:
    algorithm: str
    seed: Graph
    steps: int
    active_vertex: str | None = None
    active_edge: tuple[str, str] | None = None
    rng_seed: int | None = None
    orientation: str = "lex"

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise GrowthError(f"unknown algorithm {self.algorithm!r}")
        if self.steps < 0:
            raise GrowthError("steps must be non-negative")
        if self.orientation not in ("lex", "reverse"):
            raise GrowthError("orientation must be 'lex' or 'reverse'")
        if self.active_vertex is not None and self.active_vertex not in self.seed.vertices:
            raise GrowthError(f"active vertex {self.active_vertex!r} is not in the seed")
        if self.active_edge is not None and not self.seed.has_edge(*self.active_edge):
            raise GrowthError(f"active edge {self.active_edge!r} is not in the seed")

    def resolved_vertex(self) -> str:
        if self.active_vertex is not None:
            return self.active_vertex
        if not self.seed.vertices:
            raise GrowthError("seed graph is empty")
        return self.seed.vertices[0]

    def resolved_edge(self) -> tuple[str, str]:
        if self.active_edge is not None:
            return tuple(self.active_edge)  # type: ignore[return-value]
        if not self.seed.edges:
            raise GrowthError("seed graph has no edge to make active")
        return self.seed.edges[0]


@dataclass
class StepRecord:
    t: int
    net: Net
    n_v: int
    n_e: int
    predicted_n_v: int | None
    predicted_n_e: int | None

    @property
    def graph(self) -> Graph:
        return self.net.to_graph()

    @property
    def matches(self) -> bool:
        return (self.n_v, self.n_e) == (self.predicted_n_v, self.predicted_n_e)


@dataclass
class GrowthTrace:
    spec: GrowthSpec
    steps: list[StepRecord] = field(default_factory=list)

    @property
    def r_sequence(self) -> list[int]:
        return [r_seq(t) for t in range(len(self.steps))]

    @property
    def final(self) -> StepRecord:
        return self.steps[-1]

    def to_text(self) -> str:
        def fmt(x):
            return "-" if x is None else str(x)
        return "\n".join(f"step {s.t}: n_v={s.n_v} n_e={s.n_e} pred_v={fmt(s.predicted_n_v)} "
                         f"pred_e={fmt(s.predicted_n_e)}" for s in self.steps)


# ------------------------------------------------------------ closed forms
def r_seq(t: int) -> int:
    """Generalised Fibonacci numbers with r(0)=1, r(1)=2."""
    a, b = 1, 2
    for _ in range(t):
        a, b = b, a + b
    return a


def _triple_seq(t: int) -> int:
    """Exponents for the three-term product: s(0..2)=1,2,3 then the sum of
    the previous three."""
    s = [1, 2, 3]
    while len(s) <= t:
        s.append(s[-1] + s[-2] + s[-3])
    return s[t]


def fib(k: int) -> int:
    """F_1 = F_2 = 1."""
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def _geom(base: int, terms: int) -> int:
    return sum(base ** k for k in range(terms))


def _exponent(algo: str, t: int) -> int:
    if algo.endswith("_III"):
        return 2 ** t
    if algo.endswith("_IV"):
        return _triple_seq(t)
    return r_seq(t)


def fib_levels(alpha0: int, t: int, edge_mode: bool = False) -> list[int]:
    """|V_0|, ..., |V_t| for Fibonacci planting."""
    per_copy = alpha0 if edge_mode else alpha0 - 1
    sizes = [alpha0]
    for s in range(1, t + 1):
        sizes.append(per_copy * sum(fib(s - j) * sizes[j] for j in range(s)))
    return sizes


def predicted_counts(spec: GrowthSpec, t: int | None = None) -> tuple[int, int]:
    """(n_v, n_e) at step t from seed parameters only."""
    t = spec.steps if t is None else t
    algo = spec.algorithm
    g = spec.seed
    a0, b0 = g.p, g.q
    if t == 0:
        return a0, b0
    if algo in VCOIN:
        x = _exponent(algo, t)
        return a0 ** x, b0 * _geom(a0, x)
    if algo in ECOIN:
        x = _exponent(algo, t)
        return 2 + (a0 - 2) * _geom(b0, x), b0 ** x
    if algo in FIB:
        edge_mode = algo == "fib_edge"
        sizes = fib_levels(a0, t, edge_mode)
        nv, ne = a0, b0
        for s in range(1, t + 1):
            dot = sum(fib(s - j) * sizes[j] for j in range(s))
            nv += (a0 if edge_mode else a0 - 1) * dot
            ne += (b0 + 1 if edge_mode else b0) * dot
        return nv, ne
    net = Net.from_graph(g)
    if algo == "leaf_A":
        root = g.vertices.index(spec.resolved_vertex())
        m = len(_leaf_pairs(net, exclude=root))
        v = a0 * m ** t + (a0 - 2 * m) * _geom(m, t)
        return v, v - 1
    if algo == "leaf_B":
        m = len(_leaf_pairs(net))
        v = a0 * m ** t + (a0 - 2 * m) * _geom(m, t)
        return v, v - 1
    if algo == "leaf_C":
        m0 = len(_leaf_pairs(net))
        ms = [m0 ** (2 ** k) for k in range(t)]
        prod = math.prod(1 + mk for mk in ms)
        subsets = sum(math.prod(c) for r in range(1, t + 1) for c in itertools.combinations(ms, r))
        v = a0 * prod - 2 * subsets
        return v, v - 1
    raise GrowthError(f"no closed form for {algo}")


# ------------------------------------------------------------------ grow
def _check_seed(spec: GrowthSpec) -> None:
    algo = spec.algorithm
    if algo in LEAF_ALGOS:
        info = classify(spec.seed)
        if not info.tree or spec.seed.p < 3:
            raise GrowthError("leaf algorithms need a tree on at least 3 vertices")


def grow(spec: GrowthSpec) -> GrowthTrace:
    """Run ``spec.steps`` steps and record simulated and predicted counts."""
    _check_seed(spec)
    algo = spec.algorithm
    pv, _ = predicted_counts(spec, spec.steps)
    if pv > MAX_VERTICES:
        raise SizeBoundError(f"step {spec.steps} would hold {pv} vertices; limit is {MAX_VERTICES}")
    g = spec.seed
    av = spec.resolved_vertex() if (algo in VCOIN or algo in FIB or algo == "leaf_A") else None
    ae = spec.resolved_edge() if algo in ECOIN else None
    seed = Net.from_graph(g, av, ae)
    rng = random.Random(spec.rng_seed) if spec.rng_seed is not None else None
    trace = GrowthTrace(spec)
    nets: list[Net] = [seed]

    def record(t: int, net: Net):
        p = predicted_counts(spec, t)
        trace.steps.append(StepRecord(t, net, net.n, net.m, p[0], p[1]))

    record(0, seed)
    if algo in FIB:
        seed_fib = Net(seed.n, seed.edges, seed.active_vertex, None, [0] * seed.n, None)
        nets = [seed_fib]
    leaf_pairs0 = _leaf_pairs(seed)
    if algo in ("leaf_B", "leaf_C"):
        # copies attach at the image of the seed's first internal vertex
        seed.active_vertex = _first_nonleaf(seed)
    root = seed.active_vertex
    for t in range(1, spec.steps + 1):
        prev = nets[-1]
        older = nets[-2] if len(nets) > 1 else nets[-1]
        if algo in VCOIN:
            if t == 1:
                new = vertex_coincide(seed, seed)
            elif algo == "vcoin_I":
                new = vertex_coincide(prev, older)
            elif algo == "vcoin_II":
                new = vertex_coincide(older, prev)
            elif algo == "vcoin_III":
                new = vertex_coincide(prev, prev)
            elif t == 2:
                new = vertex_coincide(prev, older)
            else:
                new = vertex_coincide(vertex_coincide(nets[-3], older), prev)
        elif algo in ECOIN:
            op = lambda x, h: edge_coincide(x, h, spec.orientation, rng)  # noqa: E731
            if t == 1:
                new = op(seed, seed)
            elif algo == "ecoin_I":
                new = op(older, prev)
            elif algo == "ecoin_II":
                new = op(prev, older)
            elif algo == "ecoin_III":
                new = op(prev, prev)
            elif t == 2:
                new = op(older, prev)
            else:
                new = op(op(nets[-3], older), prev)
        elif algo in FIB:
            copies = [fib(t - lv) for lv in prev.level]  # type: ignore[union-attr]
            new = _plant(prev, seed, copies, algo == "fib_edge", t)
        elif algo == "leaf_A":
            pairs = [(l, nb) for l, nb in leaf_pairs0 if l != root]
            new = _leaf_step(seed, pairs, prev, prev.active_vertex)  # type: ignore[arg-type]
        elif algo == "leaf_B":
            new = _leaf_step(seed, leaf_pairs0, prev, prev.active_vertex)  # type: ignore[arg-type]
        else:
            new = _leaf_step(prev, _leaf_pairs(prev), prev, prev.active_vertex)  # type: ignore[arg-type]
        nets.append(new)
        record(t, new)
    return trace


# ----------------------------------------------------------- degree stats
@dataclass
class DegreeStats:
    n: int
    histogram: dict[int, int]
    fit_range: tuple[int, int] | None = None
    alpha: float | None = None
    gamma: float | None = None
    residual: float | None = None

    def P(self, k: int) -> float:
        return self.histogram.get(k, 0) / self.n

    def P_cum(self, k: int) -> float:
        """Share of vertices whose degree is strictly larger than k."""
        return sum(c for d, c in self.histogram.items() if d > k) / self.n

    def table(self) -> str:
        rows = ["k count P Pcum"]
        for k in sorted(self.histogram):
            rows.append(f"{k} {self.histogram[k]} {self.P(k):.6g} {self.P_cum(k):.6g}")
        return "\n".join(rows)


def _fit(points: list[tuple[float, float]]) -> tuple[float, float]:
    xs = [math.log(x) for x, _ in points]
    ys = [math.log(y) for _, y in points]
    slope, icpt = statistics.linear_regression(xs, ys)
    res = math.sqrt(sum((y - (slope * x + icpt)) ** 2 for x, y in zip(xs, ys)) / len(xs))
    return slope, res


def degree_stats(g: Graph, fit_range: tuple[int, int] | None = None) -> DegreeStats:
    """Degree histogram; with a fit range, least-squares exponents of
    P(k) ~ k^-alpha and P_cum(k) ~ k^(1-gamma) on log-log points."""
    if g.p < 2:
        raise GrowthError("degree statistics need at least two vertices")
    hist: dict[int, int] = {}
    for v in g.vertices:
        d = g.degree(v)
        hist[d] = hist.get(d, 0) + 1
    st = DegreeStats(g.p, dict(sorted(hist.items())))
    if fit_range is None:
        return st
    lo, hi = fit_range
    ks = [k for k in st.histogram if lo <= k <= hi and k > 0]
    p_pts = [(k, st.P(k)) for k in ks if st.P(k) > 0]
    c_pts = [(k, st.P_cum(k)) for k in range(max(lo, 1), hi + 1) if st.P_cum(k) > 0]
    if len(p_pts) < 2 or len(c_pts) < 2 or len({x for x, _ in c_pts}) < 2:
        raise GrowthError(f"fit range {fit_range} holds fewer than two usable points")
    sp, rp = _fit(p_pts)
    sc, rc = _fit(c_pts)
    st.fit_range, st.alpha, st.gamma, st.residual = fit_range, -sp, 1 - sc, max(rp, rc)
    return st


# ------------------------------------------------------------- semigroup
@dataclass
class SemigroupVerdict:
    commutative: bool
    associative: bool
    counterexamples: list[str]

    @property
    def ok(self) -> bool:
        return self.commutative and self.associative


def _rooted(item) -> Net:
    if isinstance(item, Graph):
        g, av = item, item.vertices[0]
    else:
        g, av = item
    if g.p > SEMIGROUP_VERTEX_CAP:
        raise SizeBoundError(f"semigroup sample graphs are limited to {SEMIGROUP_VERTEX_CAP} vertices")
    return Net.from_graph(g, av)


def _nx(net: Net) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(net.n))
    h.add_edges_from(net.edges)
    return h


def semigroup_check(gs: Sequence) -> SemigroupVerdict:
    """Test commutativity on every pair and associativity on every ordered
    triple of the sample (graphs, or (graph, active vertex) pairs)."""
    if not 1 <= len(gs) <= 3:
        raise GrowthError("semigroup sample holds one to three graphs")
    nets = [_rooted(x) for x in gs]
    bad: list[str] = []
    comm = assoc = True
    for i, j in itertools.combinations_with_replacement(range(len(nets)), 2):
        if not nx.is_isomorphic(_nx(vertex_coincide(nets[i], nets[j])), _nx(vertex_coincide(nets[j], nets[i]))):
            comm = False
            bad.append(f"G{i + 1}.G{j + 1} and G{j + 1}.G{i + 1} differ")
    for i, j, k in itertools.product(range(len(nets)), repeat=3):
        a, b, c = nets[i], nets[j], nets[k]
        left = vertex_coincide(vertex_coincide(a, b), c)
        right = vertex_coincide(a, vertex_coincide(b, c))
        if not nx.is_isomorphic(_nx(left), _nx(right)):
            assoc = False
            bad.append(f"(G{i + 1}.G{j + 1}).G{k + 1} and G{i + 1}.(G{j + 1}.G{k + 1}) differ")
    return SemigroupVerdict(comm, assoc, bad)


# ------------------------------------------------------ split similarity
@dataclass
class SplitWitness:
    mode: str
    pieces: list[frozenset[tuple[str, str]]]

    @property
    def m(self) -> int:
        return len(self.pieces)

    def replay(self, g: Graph) -> list[Graph]:
        out = []
        for piece in self.pieces:
            verts = sorted({v for e in piece for v in e})
            out.append(Graph.make(verts, sorted(piece)))
        return out


def _copies_of(g: Graph, g0: Graph) -> list[frozenset[tuple[str, str]]]:
    gm = nx.algorithms.isomorphism.GraphMatcher(g.to_networkx(), g0.to_networkx())
    found = set()
    for mp in gm.subgraph_monomorphisms_iter():
        inv = {b: a for a, b in mp.items()}
        es = frozenset(tuple(sorted((inv[a], inv[b]))) for a, b in g0.edges)
        found.add(es)
    return sorted(found, key=lambda s: sorted(s))


def _compatible(a: frozenset, b: frozenset, mode: str) -> bool:
    if mode == "vertex":
        return not (a & b)
    if mode == "edge":
        shared_v = {v for e in a for v in e} & {v for e in b for v in e}
        shared_e_v = {v for e in (a & b) for v in e}
        return shared_v <= shared_e_v
    return True


def split_similarity_check(g: Graph, g0: Graph, mode: str = "vertex") -> SplitWitness | None:
    """Cover E(g) with copies of g0.

    ``vertex``: the copies are edge-disjoint, as vertex splitting leaves
    them; ``edge``: copies may share edges but meet only along shared
    edges; ``mixed``: any overlap.  The smallest cover found is returned.
    """
    if mode not in ("vertex", "edge", "mixed"):
        raise GrowthError("mode must be vertex, edge or mixed")
    if g.q > SPLIT_EDGE_CAP:
        raise SizeBoundError(f"split search is limited to {SPLIT_EDGE_CAP} edges")
    if g0.q == 0 or g.q == 0:
        return None
    target = frozenset(g.edges)
    if g.q == g0.q and nx.is_isomorphic(g.to_networkx(), g0.to_networkx()):
        return SplitWitness(mode, [target])
    if g0.q > g.q:
        return None
    cands = [c for c in _copies_of(g, g0) if c != target]
    if mode == "vertex" and g.q % g0.q:
        return None
    by_edge = {e: [c for c in cands if e in c] for e in target}
    lower = -(-g.q // g0.q)
    upper = g.q if mode != "vertex" else g.q // g0.q
    for size in range(lower, upper + 1):
        chosen: list[frozenset] = []

        def rec(covered: frozenset) -> bool:
            if covered == target:
                return True
            if len(chosen) == size:
                return False
            if (size - len(chosen)) * g0.q < len(target - covered):
                return False
            e = min(target - covered)
            for c in by_edge[e]:
                if all(_compatible(c, d, mode) for d in chosen):
                    chosen.append(c)
                    if rec(covered | c):
                        return True
                    chosen.pop()
            return False

        if rec(frozenset()):
            return SplitWitness(mode, list(chosen))
        if mode == "vertex":
            break
    return None


def planting_gap(seed: Graph, t: int, active_vertex: str | None = None) -> dict[str, int]:
    """Growth of n'_v - n_v between steps t-1 and t for the two Fibonacci
    planting processes, next to the level dot products of each process."""
    if t < 1:
        raise GrowthError("t must be at least 1")
    a0 = seed.p
    sv = fib_levels(a0, t, edge_mode=False)
    se = fib_levels(a0, t, edge_mode=True)
    pv = lambda x: predicted_counts(GrowthSpec("fib_vertex", seed, x, active_vertex), x)  # noqa: E731
    pe = lambda x: predicted_counts(GrowthSpec("fib_edge", seed, x, active_vertex), x)  # noqa: E731
    lhs = (pe(t)[0] - pv(t)[0]) - (pe(t - 1)[0] - pv(t - 1)[0])
    return {
        "lhs": lhs,
        "dot_vertex_levels": sum(fib(t - j) * sv[j] for j in range(t)),
        "dot_edge_levels": sum(fib(t - j) * se[j] for j in range(t)),
    }


__all__ = [
    "GrowthSpec", "GrowthTrace", "StepRecord", "grow", "predicted_counts", "r_seq", "fib", "fib_levels",
    "DegreeStats", "degree_stats", "SemigroupVerdict", "semigroup_check", "SplitWitness",
    "split_similarity_check", "planting_gap", "vertex_coincide", "edge_coincide", "Net", "ALGORITHMS",
    "is_connected",
]

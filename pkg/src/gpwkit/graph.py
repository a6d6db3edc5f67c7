"""Graph data model, structural predicates and the split/coincide operations."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx

from .errors import GraphError, SizeBoundError

Edge = tuple[str, str]

#: Largest graph accepted by the exhaustive divided-connectivity search.
CONNECTIVITY_VERTEX_CAP = 12


def ekey(a: str, b: str) -> Edge:
    """Canonical (lexicographically ordered) key of an undirected edge."""
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with optional drawing metadata.

    ``edges`` are stored canonically (smaller id first).  ``edge_order``
    keeps the orientation in which the pairs were written, which the
    matrix builder uses to decide the top row.  ``arcs`` holds oriented
    pairs for directed corpus records; their underlying edges are part of
    ``edges`` as well.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    bipartition: tuple[frozenset[str], frozenset[str]] | None = None
    coords: tuple[tuple[str, tuple[int, int]], ...] | None = None
    edge_order: tuple[Edge, ...] | None = None
    arcs: tuple[Edge, ...] = ()
    code: str | None = None
    name: str | None = None
    _checked: bool = field(default=False, repr=False, compare=False)

    # ------------------------------------------------------------------ build
    @classmethod
    def make(
        cls,
        vertices: Iterable[str],
        edges: Iterable[Sequence[str]],
        *,
        bipartition: tuple[Iterable[str], Iterable[str]] | None = None,
        coords: Mapping[str, tuple[int, int]] | None = None,
        edge_order: Iterable[Sequence[str]] | None = None,
        arcs: Iterable[Sequence[str]] = (),
        code: str | None = None,
        name: str | None = None,
    ) -> "Graph":
        verts = tuple(vertices)
        label = code or name or "<graph>"
        if len(set(verts)) != len(verts):
            raise GraphError(f"graph {label}: duplicate vertex id")
        vset = set(verts)
        arc_list = tuple((str(a), str(b)) for a, b in arcs)
        seen: set[Edge] = set()
        canon: list[Edge] = []
        for a, b in list(edges) + [tuple(x) for x in arc_list]:
            if a == b:
                raise GraphError(f"graph {label}: self-loop at {a}")
            for v in (a, b):
                if v not in vset:
                    raise GraphError(f"graph {label}: edge endpoint {v} is not a declared vertex")
            k = ekey(a, b)
            if k in seen:
                raise GraphError(f"graph {label}: duplicate edge {k}")
            seen.add(k)
            canon.append(k)
        bip = None
        if bipartition is not None:
            xs, ys = frozenset(bipartition[0]), frozenset(bipartition[1])
            if xs & ys or (xs | ys) != vset:
                raise GraphError(f"graph {label}: bipartition must partition the vertex set")
            for a, b in canon:
                if (a in xs) == (b in xs):
                    raise GraphError(f"graph {label}: edge ({a},{b}) lies inside one side of the bipartition")
            bip = (xs, ys)
        order = None
        if edge_order is not None:
            order = tuple((str(a), str(b)) for a, b in edge_order)
            if sorted(ekey(a, b) for a, b in order) != sorted(canon):
                raise GraphError(f"graph {label}: edge_order is not a bijection onto the edge set")
        crd = None
        if coords is not None:
            for v in coords:
                if v not in vset:
                    raise GraphError(f"graph {label}: coordinate for unknown vertex {v}")
            crd = tuple((v, (int(coords[v][0]), int(coords[v][1]))) for v in verts if v in coords)
        return cls(verts, tuple(canon), bip, crd, order, arc_list, code, name, True)

    # ------------------------------------------------------------- accessors
    @property
    def p(self) -> int:
        return len(self.vertices)

    @property
    def q(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(s) for v, s in adj.items()}

    def neighbors(self, v: str) -> frozenset[str]:
        return self.adjacency[v]

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((len(s) for s in self.adjacency.values()), default=0)

    def has_edge(self, a: str, b: str) -> bool:
        return b in self.adjacency.get(a, ())

    @property
    def coord_map(self) -> dict[str, tuple[int, int]]:
        return dict(self.coords or ())

    def oriented_edges(self) -> list[Edge]:
        """Edges in writing order with their written orientation.

        Falls back to canonical lexicographic order when no edge order was
        declared.
        """
        if self.edge_order is not None:
            return list(self.edge_order)
        return sorted(self.edges)

    # --------------------------------------------------------- derivations
    def subgraph(self, keep: Iterable[str]) -> "Graph":
        ks = set(keep)
        verts = [v for v in self.vertices if v in ks]
        edges = [e for e in self.edges if e[0] in ks and e[1] in ks]
        bip = None
        if self.bipartition is not None:
            bip = (self.bipartition[0] & ks, self.bipartition[1] & ks)
        order = None
        if self.edge_order is not None:
            order = [e for e in self.edge_order if e[0] in ks and e[1] in ks]
        arcs = [a for a in self.arcs if a[0] in ks and a[1] in ks]
        crd = {v: c for v, c in (self.coords or ()) if v in ks} if self.coords else None
        undirected = [e for e in edges if not any(ekey(*a) == e for a in arcs)]
        return Graph.make(verts, undirected, bipartition=bip, coords=crd, edge_order=order,
                          arcs=arcs, name=self.name)

    def prefixed(self, prefix: str) -> "Graph":
        """Copy with every vertex id renamed to ``prefix.id``."""
        r = lambda v: f"{prefix}.{v}"  # noqa: E731
        arcset = {ekey(*a) for a in self.arcs}
        return Graph.make(
            [r(v) for v in self.vertices],
            [(r(a), r(b)) for a, b in self.edges if (a, b) not in arcset],
            bipartition=None if self.bipartition is None else
            ([r(v) for v in self.bipartition[0]], [r(v) for v in self.bipartition[1]]),
            coords=None if self.coords is None else {r(v): c for v, c in self.coords},
            edge_order=None if self.edge_order is None else [(r(a), r(b)) for a, b in self.edge_order],
            arcs=[(r(a), r(b)) for a, b in self.arcs],
            code=self.code, name=self.name,
        )

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph, prefix: str = "v") -> "Graph":
        nodes = list(g.nodes())
        width = len(str(max(len(nodes) - 1, 0)))
        names = {n: f"{prefix}{i:0{width}d}" for i, n in enumerate(nodes)}
        return cls.make([names[n] for n in nodes], [(names[a], names[b]) for a, b in g.edges()])


def disjoint_union(graphs: Sequence[Graph], prefixes: Sequence[str]) -> Graph:
    """Disjoint union; vertex ids become ``prefix.id`` so nothing collides."""
    parts = [g.prefixed(px) for g, px in zip(graphs, prefixes)]
    verts = [v for g in parts for v in g.vertices]
    arcset = {ekey(*a) for g in parts for a in g.arcs}
    edges = [e for g in parts for e in g.edges if e not in arcset]
    bip = None
    if all(g.bipartition is not None for g in parts):
        bip = ([v for g in parts for v in g.bipartition[0]], [v for g in parts for v in g.bipartition[1]])
    order = None
    if all(g.edge_order is not None for g in parts):
        order = [e for g in parts for e in g.edge_order]
    crd = None
    if all(g.coords is not None for g in parts):
        crd = {v: c for g in parts for v, c in g.coords}
    code = "+".join(g.code or "?" for g in graphs)
    return Graph.make(verts, edges, bipartition=bip, coords=crd, edge_order=order,
                      arcs=[a for g in parts for a in g.arcs], code=code)


# ----------------------------------------------------------------- families
def _ids(n: int, prefix: str = "v") -> list[str]:
    width = len(str(max(n - 1, 0)))
    return [f"{prefix}{i:0{width}d}" for i in range(n)]


def path_graph(n: int) -> Graph:
    """P_n on n vertices."""
    vs = _ids(n)
    return Graph.make(vs, list(zip(vs, vs[1:])), name=f"P{n}")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    vs = _ids(n)
    return Graph.make(vs, list(zip(vs, vs[1:])) + [(vs[-1], vs[0])], name=f"C{n}")


def complete_graph(n: int) -> Graph:
    vs = _ids(n)
    return Graph.make(vs, list(itertools.combinations(vs, 2)), name=f"K{n}")


def star_graph(k: int) -> Graph:
    """K_{1,k}: centre ``c`` and leaves ``l0..``."""
    leaves = _ids(k, "l")
    return Graph.make(["c", *leaves], [("c", x) for x in leaves], name=f"K1,{k}")


def complete_bipartite(a: int, b: int) -> Graph:
    xs, ys = _ids(a, "a"), _ids(b, "b")
    return Graph.make(xs + ys, [(x, y) for x in xs for y in ys], name=f"K{a},{b}")


# ------------------------------------------------------------ structure
def components(g: Graph) -> list[Graph]:
    """Maximal connected subgraphs, ordered by their smallest vertex id."""
    seen: set[str] = set()
    groups: list[list[str]] = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = []
        dq = deque([s])
        seen.add(s)
        while dq:
            v = dq.popleft()
            comp.append(v)
            for w in sorted(g.adjacency[v]):
                if w not in seen:
                    seen.add(w)
                    dq.append(w)
        groups.append(comp)
    groups.sort(key=min)
    return [g.subgraph(c) for c in groups]


def is_connected(g: Graph) -> bool:
    return g.p > 0 and len(components(g)) == 1


def two_coloring(g: Graph) -> tuple[frozenset[str], frozenset[str]] | None:
    """Canonical 2-colouring: BFS from each component's smallest vertex,
    which is put in the first class.  ``None`` when an odd cycle exists."""
    color: dict[str, int] = {}
    for s in sorted(g.vertices):
        if s in color:
            continue
        color[s] = 0
        dq = deque([s])
        while dq:
            v = dq.popleft()
            for w in g.adjacency[v]:
                if w not in color:
                    color[w] = 1 - color[v]
                    dq.append(w)
                elif color[w] == color[v]:
                    return None
    return (frozenset(v for v, c in color.items() if c == 0),
            frozenset(v for v, c in color.items() if c == 1))


def bipartition_of(g: Graph) -> tuple[frozenset[str], frozenset[str]] | None:
    """Declared bipartition if any, otherwise the canonical colouring."""
    return g.bipartition if g.bipartition is not None else two_coloring(g)


def _spine_after_pruning(g: Graph) -> Graph:
    leaves = [v for v in g.vertices if g.degree(v) <= 1]
    if len(leaves) == g.p:  # K1 or K2: nothing structural remains
        return g.subgraph([])
    return g.subgraph([v for v in g.vertices if g.degree(v) > 1])


def _is_path_or_empty(g: Graph) -> bool:
    if g.p == 0:
        return True
    return is_connected(g) and g.q == g.p - 1 and g.max_degree <= 2


@dataclass(frozen=True)
class Structure:
    tree: bool
    forest: bool
    caterpillar: bool
    lobster: bool
    bipartite: bool
    euler: bool
    cycle: bool
    coloring: tuple[frozenset[str], frozenset[str]] | None

    def flags(self) -> dict[str, bool]:
        return {k: getattr(self, k) for k in
                ("tree", "forest", "caterpillar", "lobster", "bipartite", "euler", "cycle")}


def classify(g: Graph) -> Structure:
    comps = components(g) if g.p else []
    connected = len(comps) == 1
    forest = g.q == g.p - len(comps)
    tree = forest and connected
    caterpillar = tree and _is_path_or_empty(_spine_after_pruning(g))
    lobster = False
    if tree:
        inner = _spine_after_pruning(g)
        lobster = inner.p == 0 or _is_path_or_empty(_spine_after_pruning(inner))
    coloring = two_coloring(g)
    euler = connected and g.q > 0 and all(g.degree(v) % 2 == 0 for v in g.vertices)
    cycle = connected and g.p >= 3 and all(g.degree(v) == 2 for v in g.vertices)
    return Structure(tree, forest, caterpillar, lobster, coloring is not None, euler, cycle, coloring)


def isomorphic(g: Graph, h: Graph) -> bool:
    return nx.is_isomorphic(g.to_networkx(), h.to_networkx())


def euler_circuit(g: Graph, start: str | None = None) -> list[str]:
    """Closed walk using every edge once (Hierholzer), as a vertex list whose
    first and last entries coincide."""
    if not classify(g).euler:
        raise GraphError("graph is not a connected Euler graph")
    s = start if start is not None else min(g.vertices, key=lambda v: (g.degree(v) == 0, v))
    return [u for u, _ in nx.eulerian_circuit(g.to_networkx(), source=s)] + [s]


# ----------------------------------------------------------------- ops
@dataclass(frozen=True)
class GraphOpResult:
    graph: Graph
    vertex_map: dict[str, tuple[str, ...]]


OPS = ("vertex_split", "vertex_coincide", "edge_split", "edge_coincide",
       "half_edge_split", "half_edge_coincide", "edge_contract", "edge_subdivide")


def _fresh(g_vertices: set[str], base: str) -> str:
    cand = base
    while cand in g_vertices:
        cand += "'"
    g_vertices.add(cand)
    return cand


def _rebuild(g: Graph, verts: list[str], edges: list[Edge], vmap: dict[str, tuple[str, ...]]) -> GraphOpResult:
    seen: set[Edge] = set()
    for a, b in edges:
        if a == b:
            raise GraphError(f"operation would create a self-loop at {a}")
        k = ekey(a, b)
        if k in seen:
            raise GraphError(f"operation would create a duplicate edge {k}")
        seen.add(k)
    return GraphOpResult(Graph.make(verts, edges, name=g.name), vmap)


def _check_partition(g: Graph, center: str, exclude: set[str], part: Iterable[str], allow_empty: bool) -> tuple[set[str], set[str]]:
    pool = set(g.adjacency[center]) - exclude
    a = set(part)
    if not a <= pool:
        raise GraphError(f"partition names non-neighbours of {center}: {sorted(a - pool)}")
    b = pool - a
    if not allow_empty and (not a or not b):
        raise GraphError(f"split of {center} needs two non-empty neighbour parts")
    return a, b


def _need(g: Graph, *vs: str) -> None:
    for v in vs:
        if v not in g.adjacency:
            raise GraphError(f"unknown vertex {v}")


def apply_graph_op(g: Graph, op: str, **args) -> GraphOpResult:
    """Apply one split/coincide/contract/subdivide operation.

    Arguments by operation:

    * ``vertex_split(x, part)``: ``x'`` keeps ``part``, ``x''`` the rest.
    * ``vertex_coincide(a, b)``: merge two vertices.
    * ``edge_split(x, w, x_part, w_part)``: edge ``xw`` becomes ``x'w'`` and
      ``x''w''``; ``x'`` keeps ``x_part`` of N(x)-w, ``w'`` keeps ``w_part``.
    * ``edge_coincide(e1, e2)``: merge edge ``e1=(x',w')`` onto ``e2=(x'',w'')``.
    * ``half_edge_split(x, w, part)``: both copies of ``x`` stay joined to ``w``.
    * ``half_edge_coincide(a, b)``: merge two vertices sharing exactly one
      neighbour; the doubled edge to that neighbour collapses to one.
    * ``edge_contract(x, y)`` and ``edge_subdivide(w, part)``.
    """
    V = list(g.vertices)
    names = set(V)
    E = [tuple(e) for e in g.edges]
    vmap: dict[str, tuple[str, ...]] = {v: (v,) for v in V}

    def replace_vertex(old: str, new: Sequence[str]) -> list[str]:
        i = V.index(old)
        return V[:i] + list(new) + V[i + 1:]

    if op == "vertex_split":
        x = args["x"]
        _need(g, x)
        a, b = _check_partition(g, x, set(), args["part"], allow_empty=False)
        x1, x2 = _fresh(names, x + "'"), _fresh(names, x + "''")
        edges = [e for e in E if x not in e] + [(x1, u) for u in sorted(a)] + [(x2, u) for u in sorted(b)]
        vmap[x] = (x1, x2)
        return _rebuild(g, replace_vertex(x, [x1, x2]), edges, vmap)

    if op in ("vertex_coincide", "half_edge_coincide", "edge_contract"):
        if op == "edge_contract":
            a, b = args["x"], args["y"]
        else:
            a, b = args["a"], args["b"]
        _need(g, a, b)
        if a == b:
            raise GraphError("cannot coincide a vertex with itself")
        adjacent = g.has_edge(a, b)
        common = (g.adjacency[a] & g.adjacency[b]) - {a, b}
        if op == "edge_contract" and not adjacent:
            raise GraphError(f"({a},{b}) is not an edge")
        if op != "edge_contract" and adjacent:
            raise GraphError(f"{a} and {b} are adjacent; coinciding them would create a loop")
        if op == "half_edge_coincide" and len(common) != 1:
            raise GraphError("half-edge coincide needs exactly one common neighbour")
        merged = _fresh(names, args.get("new") or f"({a},{b})")
        edges: list[Edge] = []
        done: set[Edge] = set()
        for u, v in E:
            if {u, v} == {a, b}:
                continue
            u2 = merged if u in (a, b) else u
            v2 = merged if v in (a, b) else v
            k = ekey(u2, v2)
            if k in done and op == "half_edge_coincide":
                continue  # the one multiple edge is deleted
            done.add(k) if op == "half_edge_coincide" else None
            edges.append((u2, v2))
        vmap[a] = (merged,)
        vmap[b] = (merged,)
        i = min(V.index(a), V.index(b))
        verts = [v for v in V if v not in (a, b)]
        verts.insert(i, merged)
        return _rebuild(g, verts, edges, vmap)

    if op == "edge_split":
        x, w = args["x"], args["w"]
        _need(g, x, w)
        if not g.has_edge(x, w):
            raise GraphError(f"({x},{w}) is not an edge")
        xa, xb = _check_partition(g, x, {w}, args["x_part"], allow_empty=True)
        wa, wb = _check_partition(g, w, {x}, args["w_part"], allow_empty=True)
        x1, x2 = _fresh(names, x + "'"), _fresh(names, x + "''")
        w1, w2 = _fresh(names, w + "'"), _fresh(names, w + "''")
        edges = [e for e in E if x not in e and w not in e]
        edges += [(x1, w1), (x2, w2)]
        edges += [(x1, u) for u in sorted(xa)] + [(x2, u) for u in sorted(xb)]
        edges += [(w1, u) for u in sorted(wa)] + [(w2, u) for u in sorted(wb)]
        vmap[x], vmap[w] = (x1, x2), (w1, w2)
        verts = replace_vertex(x, [x1, x2])
        i = verts.index(w)
        verts = verts[:i] + [w1, w2] + verts[i + 1:]
        return _rebuild(g, verts, edges, vmap)

    if op == "edge_coincide":
        (x1, w1), (x2, w2) = args["e1"], args["e2"]
        _need(g, x1, w1, x2, w2)
        if not (g.has_edge(x1, w1) and g.has_edge(x2, w2)):
            raise GraphError("edge_coincide needs two existing edges")
        if len({x1, w1, x2, w2}) != 4:
            raise GraphError("edge_coincide needs two disjoint edges")
        mx = _fresh(names, args.get("new_x") or f"({x1},{x2})")
        mw = _fresh(names, args.get("new_w") or f"({w1},{w2})")
        ren = {x1: mx, x2: mx, w1: mw, w2: mw}
        edges = []
        skipped = False
        for u, v in E:
            u2, v2 = ren.get(u, u), ren.get(v, v)
            if ekey(u2, v2) == ekey(mx, mw):
                if skipped:
                    continue  # the two coinciding edges become one
                skipped = True
            edges.append((u2, v2))
        for o in (x1, x2):
            vmap[o] = (mx,)
        for o in (w1, w2):
            vmap[o] = (mw,)
        verts = [v for v in V if v not in ren]
        verts[min(V.index(x1), V.index(x2)):min(V.index(x1), V.index(x2))] = [mx]
        verts.insert(min(len(verts), min(V.index(w1), V.index(w2))), mw)
        return _rebuild(g, verts, edges, vmap)

    if op == "half_edge_split":
        x, w = args["x"], args["w"]
        _need(g, x, w)
        if not g.has_edge(x, w):
            raise GraphError(f"({x},{w}) is not an edge")
        a, b = _check_partition(g, x, {w}, args["part"], allow_empty=True)
        x1, x2 = _fresh(names, x + "'"), _fresh(names, x + "''")
        edges = [e for e in E if x not in e] + [(x1, w), (x2, w)]
        edges += [(x1, u) for u in sorted(a)] + [(x2, u) for u in sorted(b)]
        vmap[x] = (x1, x2)
        return _rebuild(g, replace_vertex(x, [x1, x2]), edges, vmap)

    if op == "edge_subdivide":
        w = args["w"]
        _need(g, w)
        a, b = _check_partition(g, w, set(), args["part"], allow_empty=True)
        x, y = _fresh(names, args.get("new_x") or w + "'"), _fresh(names, args.get("new_y") or w + "''")
        edges = [e for e in E if w not in e] + [(x, y)]
        edges += [(x, u) for u in sorted(a)] + [(y, u) for u in sorted(b)]
        vmap[w] = (x, y)
        return _rebuild(g, replace_vertex(w, [x, y]), edges, vmap)

    raise GraphError(f"unknown graph operation {op!r}; expected one of {', '.join(OPS)}")


# ------------------------------------------------------ connectivity
def _bipartitions(items: Sequence[str], allow_empty: bool) -> Iterator[frozenset[str]]:
    """Yield the first part of every unordered 2-partition of ``items``."""
    items = list(items)
    if not items:
        if allow_empty:
            yield frozenset()
        return
    first, rest = items[0], items[1:]
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            part = frozenset((first, *combo))
            if not allow_empty and len(part) == len(items):
                continue
            yield part


def _ordered_parts(items: Sequence[str], hint_groups: list[set[str]]) -> list[frozenset[str]]:
    """All 2-partitions, with ones aligned to ``hint_groups`` tried first."""
    parts = list(_bipartitions(items, allow_empty=False))
    hinted = []
    for grp in hint_groups:
        s = frozenset(x for x in items if x in grp)
        if s and len(s) < len(items):
            hinted.append(s if items[0] in s else frozenset(items) - s)
    order = {p: i for i, p in enumerate(dict.fromkeys(hinted))}
    return sorted(parts, key=lambda p: order.get(p, len(order)))


def _split_result_ok(adj: dict[str, set[str]], untouched: set[str]) -> bool:
    seen: set[str] = set()
    comps = 0
    for s in adj:
        if s in seen:
            continue
        comps += 1
        stack, has_u = [s], False
        seen.add(s)
        while stack:
            v = stack.pop()
            has_u |= v in untouched
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if not has_u:
            return False
    return comps >= 2


def _deleted_is_disconnected(g: Graph, removed: set[str]) -> bool:
    rest = [v for v in g.vertices if v not in removed]
    if len(rest) < 2:
        return False
    return not is_connected(g.subgraph(rest))


def divided_connectivity(g: Graph, mode: str = "v", cap: int = CONNECTIVITY_VERTEX_CAP) -> int:
    """v-divided (``mode='v'``) or e-divided (``mode='e'``) connectivity.

    Exhaustive: for k = 1, 2, ... every choice of k vertices (edges) and
    every admissible neighbour partition is tried.  A choice can only work
    if deleting the touched vertices already disconnects the untouched
    ones (a path between untouched vertices survives any split), so other
    choices are skipped.  Complete graphs, which no split disconnects,
    get p-1 by the usual convention.
    """
    if g.p > cap:
        raise SizeBoundError(f"divided connectivity is exhaustive; {g.p} vertices exceeds the cap of {cap}")
    if not is_connected(g):
        raise GraphError("divided connectivity needs a connected graph")
    if mode not in ("v", "e"):
        raise GraphError("mode must be 'v' or 'e'")
    base_adj = {v: set(g.adjacency[v]) for v in g.vertices}
    if mode == "v":
        for k in range(1, g.p):
            for chosen in itertools.combinations(g.vertices, k):
                cs = set(chosen)
                if not _deleted_is_disconnected(g, cs):
                    continue
                rest = g.subgraph([v for v in g.vertices if v not in cs])
                hints = [set(c.vertices) for c in components(rest)]
                if _search_vertex_splits(base_adj, list(chosen), hints, set(g.vertices) - cs):
                    return k
        return g.p - 1
    for k in range(1, g.q + 1):
        for chosen in itertools.combinations(g.edges, k):
            ends = {v for e in chosen for v in e}
            if not _deleted_is_disconnected(g, ends):
                continue
            rest = g.subgraph([v for v in g.vertices if v not in ends])
            hints = [set(c.vertices) for c in components(rest)]
            if _search_edge_splits(base_adj, list(chosen), hints, set(g.vertices) - ends):
                return k
    return g.q


def _search_vertex_splits(adj0: dict[str, set[str]], chosen: list[str], hints: list[set[str]],
                          untouched: set[str]) -> bool:
    def rec(i: int, adj: dict[str, set[str]]) -> bool:
        if i == len(chosen):
            return _split_result_ok(adj, untouched)
        x = chosen[i]
        nbrs = sorted(adj[x])
        if len(nbrs) < 2:
            return False
        for part in _ordered_parts(nbrs, hints):
            new = {v: set(s) for v, s in adj.items() if v != x}
            x1, x2 = f"{x}'", f"{x}''"
            new[x1], new[x2] = set(part), set(nbrs) - part
            for u in nbrs:
                new[u].discard(x)
                new[u].add(x1 if u in part else x2)
            if rec(i + 1, new):
                return True
        return False

    return rec(0, adj0)


def _search_edge_splits(adj0: dict[str, set[str]], chosen: list[Edge], hints: list[set[str]],
                        untouched: set[str]) -> bool:
    def rec(i: int, adj: dict[str, set[str]]) -> bool:
        if i == len(chosen):
            return _split_result_ok(adj, untouched)
        x, w = chosen[i]
        if w not in adj.get(x, ()):
            # an endpoint was renamed by an earlier split: find current copies
            return rec_renamed(i, adj)
        return expand(i, adj, x, w)

    def rec_renamed(i: int, adj: dict[str, set[str]]) -> bool:
        x, w = chosen[i]
        xs = [v for v in adj if v == x or v.startswith(x + "'")]
        ws = [v for v in adj if v == w or v.startswith(w + "'")]
        for a in xs:
            for b in ws:
                if b in adj[a]:
                    return expand(i, adj, a, b)
        return False

    def expand(i: int, adj: dict[str, set[str]], x: str, w: str) -> bool:
        nx_ = sorted(adj[x] - {w})
        nw_ = sorted(adj[w] - {x})
        for xa in _ordered_parts_allow_empty(nx_, hints):
            for wa in _ordered_parts_allow_empty(nw_, hints):
                new = {v: set(s) for v, s in adj.items() if v not in (x, w)}
                x1, x2, w1, w2 = f"{x}'", f"{x}''", f"{w}'", f"{w}''"
                new[x1], new[x2] = {w1} | set(xa), {w2} | (set(nx_) - xa)
                new[w1], new[w2] = {x1} | set(wa), {x2} | (set(nw_) - wa)
                for u in nx_:
                    new[u].discard(x)
                    new[u].add(x1 if u in xa else x2)
                for u in nw_:
                    new[u].discard(w)
                    new[u].add(w1 if u in wa else w2)
                if rec(i + 1, new):
                    return True
        return False

    return rec(0, adj0)


def _ordered_parts_allow_empty(items: Sequence[str], hints: list[set[str]]) -> list[frozenset[str]]:
    """Ordered (not unordered) 2-partitions: every subset, hinted ones first."""
    subsets = [frozenset(c) for r in range(len(items) + 1) for c in itertools.combinations(items, r)]
    hinted = [frozenset(x for x in items if x in grp) for grp in hints]
    rank = {p: i for i, p in enumerate(dict.fromkeys(hinted))}
    return sorted(subsets, key=lambda p: rank.get(p, len(rank)))


def spanning_tree_count(g: Graph) -> int:
    """Exact number of spanning trees (matrix-tree theorem); 0 if disconnected."""
    if g.p == 0:
        return 0
    if g.p == 1:
        return 1
    if not is_connected(g):
        return 0
    from sympy import Matrix

    idx = {v: i for i, v in enumerate(g.vertices)}
    n = g.p
    lap = [[0] * n for _ in range(n)]
    for a, b in g.edges:
        i, j = idx[a], idx[b]
        lap[i][i] += 1
        lap[j][j] += 1
        lap[i][j] -= 1
        lap[j][i] -= 1
    minor = Matrix([row[1:] for row in lap[1:]])
    return int(minor.det(method="bareiss"))


def with_meta(g: Graph, **kw) -> Graph:
    return replace(g, **kw)

"""Every-zero graphic groups and what can be built on top of them:
network encryption, gg-colourings and string views."""

from __future__ import annotations

import enum
import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import GroupError
from .graph import Edge, Graph, classify, ekey
from .labelling.model import Labelling, Verdict
from .labelling.verify import edge_labels, verify
from .matrix import TBPaw, default_sequence, matrix_from_values, serialize_o

#: Exhaustive axiom checks run at build time up to this many elements.
AXIOM_CHECK_CAP = 26
#: Largest host accepted by the exhaustive chromatic minimiser.
CHROMATIC_VERTEX_CAP = 8


@dataclass(frozen=True)
class GraphicGroup:
    """The n cyclic shifts of a base labelling.

    Element ``i`` (1-based) labels vertex x with ``(f(x) + i - 1) mod n``.
    With ``shift_domain="vertices_and_edges"`` the edge labels move the same
    way modulo ``edge_modulus``.
    """

    base_graph: Graph
    base_labelling: Labelling
    modulus: int
    shift_domain: str = "vertices"
    edge_modulus: int | None = None

    @property
    def n(self) -> int:
        return self.modulus

    def _check(self, i: int) -> None:
        if not (isinstance(i, int) and 1 <= i <= self.n):
            raise GroupError(f"element index {i} outside 1..{self.n}")

    def vertex_vector(self, i: int) -> dict[str, int]:
        self._check(i)
        return {v: (x + i - 1) % self.n for v, x in self.base_labelling.vertex_values.items()}

    def base_edge_values(self) -> dict[Edge, int]:
        return edge_labels(self.base_graph, self.base_labelling)

    def edge_vector(self, i: int) -> dict[Edge, int]:
        """Edge view of element i.

        Vertex-only groups carry the oriented difference ``f_i(y) - f_i(x)``
        modulo n, which every shift leaves unchanged; edge-every-zero groups
        shift the base edge labels.
        """
        self._check(i)
        if self.shift_domain == "vertices_and_edges":
            m = self.edge_modulus or self.n
            return {e: (w + i - 1) % m for e, w in self.base_edge_values().items()}
        f = self.vertex_vector(i)
        return {ekey(a, b): (f[b] - f[a]) % self.n for a, b in default_sequence(self.base_graph)}

    def element(self, i: int) -> Labelling:
        return Labelling.make("free", self.vertex_vector(i), self.edge_vector(i))

    def add(self, i: int, j: int, k: int) -> int:
        return group_add(self, i, j, k)

    def inverse(self, i: int, k: int) -> int:
        self._check(i)
        self._check(k)
        return (2 * k - i - 1) % self.n + 1

    def element_verdict(self, i: int, rotation: int | None = None) -> Verdict:
        """Does element i read as a base-kind labelling once its labels are
        rotated back by ``rotation`` modulo n?  Without a rotation every one
        is tried; the valid ones are listed under ``rotations``."""
        f = self.vertex_vector(i)
        kind = self.base_labelling.kind
        tries = range(self.n) if rotation is None else [rotation % self.n]
        good: list[tuple[int, Verdict]] = []
        last = None
        for r in tries:
            lab = Labelling.make(kind, {v: (x - r) % self.n for v, x in f.items()},
                                 self.base_labelling.edge_values, self.base_labelling.params,
                                 self.base_labelling.flaw_budget)
            v = verify(self.base_graph, lab)
            if v.ok:
                good.append((r, v))
            last = v
        if good:
            r, v = good[0]
            v.constants["rotation"] = r
            v.constants["rotations"] = [x for x, _ in good]
            return v
        out = Verdict(kind.value)
        out.fail("rotation", "no rotation modulo n yields a valid labelling"
                 + ("" if last is None else f" ({','.join(dict.fromkeys(last.clauses))})"))
        return out

    def axiom_report(self) -> dict[str, bool]:
        return check_axioms(self)


def group_add(grp: GraphicGroup, i: int, j: int, k: int) -> int:
    """G_i (+)_k G_j = G_lambda with lambda = i + j - k (mod n), 1-based."""
    for x in (i, j, k):
        grp._check(x)
    return (i + j - k - 1) % grp.n + 1


def solve_zero(grp: GraphicGroup, i: int, j: int, s: int) -> int:
    """The zero k with G_i (+)_k G_j = G_s."""
    for x in (i, j, s):
        grp._check(x)
    return (i + j - s - 1) % grp.n + 1


def check_axioms(grp: GraphicGroup) -> dict[str, bool]:
    """Exhaustive check of the group laws over every index triple."""
    n = grp.n
    R = range(1, n + 1)
    add = lambda a, b, c: group_add(grp, a, b, c)  # noqa: E731
    vec = {i: grp.vertex_vector(i) for i in R}
    verts = list(grp.base_labelling.vertex_values)
    rep = {
        "distinct": len({tuple(vec[i][v] for v in verts) for i in R}) == n,
        "zero": all(add(i, k, k) == i for i in R for k in R),
        "closure": all(
            all(vec[add(i, j, k)][v] == (vec[i][v] + vec[j][v] - vec[k][v]) % n for v in verts)
            for i in R for j in R for k in R),
        "inverse": all(add(i, grp.inverse(i, k), k) == k for i in R for k in R),
        "commutative": all(add(i, j, k) == add(j, i, k) for i in R for j in R for k in R),
        "associative": all(add(add(i, j, k), s, k) == add(i, add(j, s, k), k)
                           for i in R for j in R for s in R for k in R),
    }
    return rep


def build_group(g: Graph, lab: Labelling, modulus: int | None = None, shift_domain: str = "vertices",
                edge_modulus: int | None = None, check: bool = True) -> GraphicGroup:
    """Build the every-zero group of ``lab``.

    The modulus defaults to one more than the largest vertex label.
    """
    if shift_domain not in ("vertices", "vertices_and_edges"):
        raise GroupError("shift_domain must be 'vertices' or 'vertices_and_edges'")
    v = verify(g, lab)
    if not v.ok:
        raise GroupError("base labelling does not verify: " + ",".join(dict.fromkeys(v.clauses)))
    if not lab.vertex_values:
        raise GroupError("base labelling is empty")
    n = modulus if modulus is not None else max(lab.vertex_values.values()) + 1
    if n < 2:
        raise GroupError(f"degenerate modulus {n}; a group needs at least 2 elements")
    grp = GraphicGroup(g, lab, n, shift_domain, edge_modulus)
    if check and n <= AXIOM_CHECK_CAP:
        bad = [name for name, ok in check_axioms(grp).items() if not ok]
        if bad:
            raise GroupError("group axioms fail: " + ",".join(bad))
    return grp


# ------------------------------------------------------------- encryption
@dataclass
class EncryptedNetwork:
    host: Graph
    n: int
    vertex_assign: dict[str, int]
    edge_assign: dict[Edge, tuple[int, int]]  # edge -> (element, zero)

    def violations(self) -> list[Edge]:
        return [e for e, (s, k) in self.edge_assign.items()
                if (self.vertex_assign[e[0]] + self.vertex_assign[e[1]] - k - s) % self.n != 0]

    @property
    def ok(self) -> bool:
        return set(self.edge_assign) == set(self.host.edges) and not self.violations()

    def adjacent_distinct(self) -> bool:
        for u in self.host.vertices:
            vals = [self.edge_assign[ekey(u, w)][0] for w in self.host.neighbors(u)]
            if len(vals) != len(set(vals)):
                return False
        return True

    def to_text(self) -> str:
        lines = ["encrypt {"]
        lines += [f"  vertex {v} = G{self.vertex_assign[v]};" for v in self.host.vertices]
        lines += [f"  edge ({a},{b}) = G{s} zero G{k};" for (a, b), (s, k) in sorted(self.edge_assign.items())]
        lines.append("}")
        return "\n".join(lines)


def _proper_edge_colouring(tree: Graph, n: int) -> dict[Edge, int]:
    """Greedy BFS edge colouring of a tree with colours 1..n."""
    root = tree.vertices[0]
    col: dict[Edge, int] = {}
    seen = {root}
    dq = deque([root])
    while dq:
        u = dq.popleft()
        used = {col[ekey(u, w)] for w in tree.neighbors(u) if ekey(u, w) in col}
        free = (c for c in range(1, n + 1) if c not in used)
        for w in sorted(tree.neighbors(u)):
            if w in seen:
                continue
            col[ekey(u, w)] = next(free)
            seen.add(w)
            dq.append(w)
    return col


def encrypt_graph(host: Graph, grp: GraphicGroup, mode: str = "tree_distinct_adjacent", *,
                  zero: int | None = None, partition: Sequence[Iterable[str]] | None = None,
                  zeros: Sequence[int] | Mapping | None = None) -> EncryptedNetwork:
    """Assign group elements to the vertices and edges of ``host``.

    ``tree_distinct_adjacent`` keeps the elements on edges sharing a vertex
    apart; ``fixed_zero`` uses one zero for every edge and distinct vertex
    elements; ``community`` uses one zero per part and one per bundle of
    edges between two parts.  For ``community``, ``zeros`` is either a
    mapping from part index / sorted part-index pair to a zero, or a
    sequence holding the part zeros followed by the bundle zeros in sorted
    pair order.
    """
    n = grp.n
    if mode == "tree_distinct_adjacent":
        if not classify(host).tree:
            raise GroupError("tree mode needs a tree host")
        if n < 1 + host.max_degree:
            raise GroupError(f"group of {n} elements is too small; tree mode needs at least {1 + host.max_degree}")
        va = {v: (i % n) + 1 for i, v in enumerate(host.vertices)}
        ecol = _proper_edge_colouring(host, n)
        ea = {e: (s, solve_zero(grp, va[e[0]], va[e[1]], s)) for e, s in ecol.items()}
        return EncryptedNetwork(host, n, va, ea)
    if mode == "fixed_zero":
        k = 1 if zero is None else zero
        grp._check(k)
        if n < host.p:
            raise GroupError(f"fixed-zero mode needs at least {host.p} elements, group has {n}")
        va = {v: i + 1 for i, v in enumerate(host.vertices)}
        ea = {e: (group_add(grp, va[e[0]], va[e[1]], k), k) for e in host.edges}
        return EncryptedNetwork(host, n, va, ea)
    if mode == "community":
        return _encrypt_communities(host, grp, partition, zeros)
    raise GroupError(f"unknown encryption mode {mode!r}")


def _encrypt_communities(host: Graph, grp: GraphicGroup, partition, zeros) -> EncryptedNetwork:
    n = grp.n
    if partition is None or zeros is None:
        raise GroupError("community mode needs a partition and zeros")
    parts = [list(p) for p in partition]
    where: dict[str, int] = {}
    for idx, part in enumerate(parts):
        for v in part:
            if v in where:
                raise GroupError(f"vertex {v} appears in two parts")
            where[v] = idx
    if set(where) != set(host.vertices):
        raise GroupError("partition must cover every vertex of the host exactly once")
    if max(len(p) for p in parts) > n or len(parts) > n:
        raise GroupError("group is smaller than a part or the number of parts")
    bundles = sorted({tuple(sorted((where[a], where[b]))) for a, b in host.edges if where[a] != where[b]})
    if isinstance(zeros, Mapping):
        zmap = dict(zeros)
    else:
        zs = list(zeros)
        if len(zs) != len(parts) + len(bundles):
            raise GroupError(f"expected {len(parts)} part zeros and {len(bundles)} bundle zeros, got {len(zs)}")
        zmap = {i: z for i, z in enumerate(zs[:len(parts)])}
        zmap.update(zip(bundles, zs[len(parts):]))
    for key in list(range(len(parts))) + bundles:
        if key not in zmap:
            raise GroupError(f"no zero given for {key}")
        grp._check(zmap[key])
    if len({zmap[i] for i in range(len(parts))}) != len(parts):
        raise GroupError("part zeros must be distinct")
    for a, b in bundles:
        if zmap[(a, b)] in (zmap[a], zmap[b]):
            raise GroupError(f"bundle zero between parts {a} and {b} must differ from both part zeros")
    va = {}
    for part in parts:
        for i, v in enumerate(part):
            va[v] = i + 1
    ea = {}
    for a, b in host.edges:
        key = where[a] if where[a] == where[b] else tuple(sorted((where[a], where[b])))
        k = zmap[key]
        ea[(a, b)] = (group_add(grp, va[a], va[b], k), k)
    return EncryptedNetwork(host, n, va, ea)


def encryption_lower_bound(n: int, k: int, m: int, c: Sequence[int] | int) -> int:
    """m * C(n,k) * k! * sum of c(l) for l = 1..k."""
    if k > n:
        raise GroupError("community count k exceeds group size n")
    if min(n, k, m) < 0:
        raise GroupError("counts must be non-negative")
    cs = [c] * k if isinstance(c, int) else list(c)
    if len(cs) != k:
        raise GroupError(f"need {k} per-kind counts, got {len(cs)}")
    return m * math.comb(n, k) * math.factorial(k) * sum(cs)


# ------------------------------------------------------------ gg-colourings
class GgColoringKind(str, enum.Enum):
    PROPER = "proper"
    PROPER_EDGE = "proper_edge"
    PROPER_TOTAL = "proper_total"
    VERTEX_DISTINGUISHING = "vertex_distinguishing"
    ADJACENT_VERTEX_DISTINGUISHING = "adjacent_vertex_distinguishing"
    EDGE_DISTINGUISHING = "edge_distinguishing"
    ADJACENT_EDGE_DISTINGUISHING = "adjacent_edge_distinguishing"
    EQUITABLE_ADJACENT_V = "equitable_adjacent_v"
    EQUITABLE_ADJACENT_E = "equitable_adjacent_e"
    ADJACENT_TOTAL_DISTINGUISHING = "adjacent_total_distinguishing"
    V_INDUCED_TOTAL = "v_induced_total"
    INDUCED_E_PROPER_V_SET = "induced_e_proper_v_set"


_K = GgColoringKind
#: Constraint numbers making up each kind.
CLAUSES: dict[GgColoringKind, tuple[int, ...]] = {
    _K.PROPER: (1, 4),
    _K.PROPER_EDGE: (2, 5),
    _K.PROPER_TOTAL: (3, 4, 5),
    _K.VERTEX_DISTINGUISHING: (1, 4, 6),
    _K.ADJACENT_VERTEX_DISTINGUISHING: (1, 4, 7),
    _K.EDGE_DISTINGUISHING: (2, 5, 8),
    _K.ADJACENT_EDGE_DISTINGUISHING: (2, 5, 9),
    _K.EQUITABLE_ADJACENT_V: (1, 4, 10),
    _K.EQUITABLE_ADJACENT_E: (2, 5, 11),
    _K.ADJACENT_TOTAL_DISTINGUISHING: (3, 4, 5, 12),
    _K.V_INDUCED_TOTAL: (1, 4, 13),
    _K.INDUCED_E_PROPER_V_SET: (2, 5, 14),
}


def _theta_parts(host: Graph, theta: Mapping) -> tuple[dict[str, int], dict[Edge, int]]:
    tv, te = {}, {}
    verts = set(host.vertices)
    for key, val in theta.items():
        if isinstance(key, tuple):
            e = ekey(*key)
            if e not in set(host.edges):
                raise GroupError(f"{key} is not an edge of the host")
            te[e] = int(val)
        elif key in verts:
            tv[key] = int(val)
        else:
            raise GroupError(f"{key!r} is neither a vertex nor an edge of the host")
    return tv, te


def verify_gg_coloring(host: Graph, grp: GraphicGroup, theta: Mapping, kind: GgColoringKind | str) -> Verdict:
    """Check the constraint conjunction that defines ``kind``.

    ``theta`` maps vertex ids and edge tuples to element indices.  For the
    v-induced kind the edge entries are optional: edges left out are read
    as induced.  For the induced e-proper v-set kind the set carried by each
    vertex is reported in the verdict constants.
    """
    kind = GgColoringKind(kind)
    tv, te = _theta_parts(host, theta)
    for x in list(tv.values()) + list(te.values()):
        grp._check(x)
    out = Verdict(kind.value)
    V, E = set(host.vertices), set(host.edges)
    N = host.adjacency
    inc = lambda u: {te[ekey(u, w)] for w in N[u] if ekey(u, w) in te}  # noqa: E731
    nb = lambda u: {tv[w] for w in N[u] if w in tv}  # noqa: E731
    for c in CLAUSES[kind]:
        if c == 1 and (set(tv) != V or (te and kind != _K.V_INDUCED_TOTAL)):
            out.fail("Gg-1", "domain must be exactly the vertex set")
        elif c == 2 and (set(te) != E or tv):
            out.fail("Gg-2", "domain must be exactly the edge set")
        elif c == 3 and (set(tv) != V or set(te) != E):
            out.fail("Gg-3", "domain must be every vertex and every edge")
        elif c == 4 and any(a in tv and b in tv and tv[a] == tv[b] for a, b in E):
            out.fail("Gg-4", "adjacent vertices share an element")
        elif c == 5:
            for u in V:
                vals = [te[ekey(u, w)] for w in N[u] if ekey(u, w) in te]
                if len(vals) != len(set(vals)):
                    out.fail("Gg-5", f"edges at {u} share an element")
                    break
        elif c == 6 and len({frozenset(nb(u)) for u in V}) != len(V):
            out.fail("Gg-6", "two vertices have equal neighbour element sets")
        elif c == 7 and any(nb(a) == nb(b) for a, b in E):
            out.fail("Gg-7", "an edge joins vertices with equal neighbour element sets")
        elif c == 8 and len({frozenset(inc(u)) for u in V}) != len(V):
            out.fail("Gg-8", "two vertices have equal incident-edge element sets")
        elif c == 9 and any(inc(a) == inc(b) for a, b in E):
            out.fail("Gg-9", "an edge joins vertices with equal incident-edge element sets")
        elif c == 10 and any(abs(len(nb(a)) - len(nb(b))) > 1 for a, b in E):
            out.fail("Gg-10", "neighbour set sizes differ by more than one across an edge")
        elif c == 11 and any(abs(len(inc(a)) - len(inc(b))) > 1 for a, b in E):
            out.fail("Gg-11", "incident-edge set sizes differ by more than one across an edge")
        elif c == 12 and any({tv[a]} | nb(a) | inc(a) == {tv[b]} | nb(b) | inc(b) for a, b in E):
            out.fail("Gg-12", "an edge joins vertices with equal closed total sets")
        elif c == 13:
            zeros = {}
            for e in E:
                if e in te and e[0] in tv and e[1] in tv:
                    zeros[e] = solve_zero(grp, tv[e[0]], tv[e[1]], te[e])
            out.constants["zeros"] = [f"{a}-{b}:{k}" for (a, b), k in sorted(zeros.items())]
        elif c == 14:
            sets = {}
            for w in host.vertices:
                vals = sorted(te[ekey(w, x)] for x in N[w])
                sets[w] = sorted({group_add(grp, a, b, k) for a, b in itertools.combinations(vals, 2)
                                  for k in range(1, grp.n + 1)})
            out.constants["vertex_sets"] = [f"{w}:{'/'.join(map(str, s))}" for w, s in sets.items()]
    return out


def index_set(host: Graph, grp: GraphicGroup, theta: Mapping, u: str) -> set[int]:
    """I(u): the zeros k(uy) with theta(uy) = theta(u) (+)_k theta(y)."""
    tv, te = _theta_parts(host, theta)
    return {solve_zero(grp, tv[u], tv[w], te[ekey(u, w)]) for w in host.neighbors(u)}


def closed_total_set(host: Graph, theta: Mapping, u: str) -> set[int]:
    """C'(u): theta(u) together with the elements on edges at u."""
    tv, te = _theta_parts(host, theta)
    return {tv[u]} | {te[ekey(u, w)] for w in host.neighbors(u)}


STRENGTHEN = {"none": 1, "neighbor_sets": 2, "index_sets": 1}


def greedy_total_gg_coloring(tree: Graph, grp: GraphicGroup, strengthen: str = "none") -> dict:
    """Proper total gg-colouring of a tree, optionally with distinct closed
    total sets (``neighbor_sets``) or distinct index sets (``index_sets``)
    across every edge.

    Vertices are processed in BFS order.  When a vertex is reached, the
    elements on its child edges and child vertices are chosen by a small
    backtracking search so that every set of that vertex is final and
    differs from its parent's.
    """
    if strengthen not in STRENGTHEN:
        raise GroupError(f"strengthen must be one of {', '.join(STRENGTHEN)}")
    if not classify(tree).tree:
        raise GroupError("greedy gg-colouring needs a tree")
    need = tree.max_degree + STRENGTHEN[strengthen]
    if grp.n < need:
        raise GroupError(f"group has {grp.n} elements; this construction needs at least {need}")
    n = grp.n
    root = tree.vertices[0]
    tv: dict[str, int] = {root: 1}
    te: dict[Edge, int] = {}
    parent: dict[str, str | None] = {root: None}
    order = [root]
    for u in order:
        for w in sorted(tree.neighbors(u)):
            if w not in parent:
                parent[w] = u
                order.append(w)

    def kz(a, b):
        return solve_zero(grp, tv[a], tv[b], te[ekey(a, b)])

    def ok_at(u: str, children: list[str]) -> bool:
        if strengthen == "none":
            return True
        nbrs = [w for w in tree.neighbors(u)]
        if strengthen == "neighbor_sets":
            cu = {tv[u]} | {te[ekey(u, w)] for w in nbrs}
            checks = [parent[u]] if parent[u] is not None else []
            checks += [c for c in children if tree.degree(c) == 1]
            return all(cu != ({tv[c]} | {te[ekey(c, w)] for w in tree.neighbors(c)}) for c in checks)
        iu = {kz(u, w) for w in nbrs}
        checks = [parent[u]] if parent[u] is not None else []
        checks += [c for c in children if tree.degree(c) == 1]
        return all(iu != {kz(c, w) for w in tree.neighbors(c)} for c in checks)

    for u in order:
        children = [w for w in sorted(tree.neighbors(u)) if parent.get(w) == u]
        taken = {te[ekey(u, parent[u])]} if parent[u] is not None else set()

        def place(idx: int, used: set[int]) -> bool:
            if idx == len(children):
                return ok_at(u, children)
            c = children[idx]
            for s in range(1, n + 1):
                if s in used:
                    continue
                te[ekey(u, c)] = s
                for cv in range(1, n + 1):
                    if cv == tv[u]:
                        continue
                    tv[c] = cv
                    if place(idx + 1, used | {s}):
                        return True
            te.pop(ekey(u, c), None)
            tv.pop(c, None)
            return False

        if not place(0, taken):
            raise GroupError(f"no admissible choice at vertex {u}; the {strengthen} strengthening "
                             "cannot be met on this tree")
    theta: dict = dict(tv)
    theta.update(te)
    return theta


def gg_chromatic(host: Graph, kind: GgColoringKind | str) -> int:
    """Smallest n for which an n-element group admits a colouring of
    ``kind`` on ``host`` (exhaustive, small hosts only)."""
    kind = GgColoringKind(kind)
    if host.p > CHROMATIC_VERTEX_CAP:
        raise GroupError(f"exhaustive minimiser is limited to {CHROMATIC_VERTEX_CAP} vertices")
    if kind in (_K.V_INDUCED_TOTAL, _K.INDUCED_E_PROPER_V_SET):
        raise GroupError("induced kinds have no chromatic parameter")
    cl = CLAUSES[kind]
    dom: list = []
    if 1 in cl or 3 in cl:
        dom += list(host.vertices)
    if 2 in cl or 3 in cl:
        dom += list(host.edges)
    if not dom:
        return 0
    k2 = Graph.make(["a", "b"], [("a", "b")])
    for n in range(1, 2 * len(dom) + 2):
        grp = GraphicGroup(k2, Labelling.make("free", {"a": 0, "b": 1}), max(n, 2))
        for vals in itertools.product(range(1, n + 1), repeat=len(dom)):
            if verify_gg_coloring(host, grp, dict(zip(dom, vals)), kind).ok:
                return n
    raise GroupError("no colouring found")


# ----------------------------------------------------- equivalence, strings
@dataclass
class GroupMap:
    value_map: dict[int, int]
    element_map: dict[int, int] = field(default_factory=dict)

    @property
    def transports_all(self) -> bool:
        return bool(self.element_map) and len(set(self.element_map.values())) == len(self.element_map)


def equivalent_group_map(grp_a: GraphicGroup, grp_b: GraphicGroup) -> GroupMap | None:
    """Value bijection theta with f_a = theta(f_b) on every vertex.

    ``element_map`` lists the elements of B whose transported labelling is
    an element of A.
    """
    if (set(grp_a.base_graph.vertices) != set(grp_b.base_graph.vertices)
            or set(grp_a.base_graph.edges) != set(grp_b.base_graph.edges)):
        return None
    fa, fb = grp_a.base_labelling.vertex_values, grp_b.base_labelling.vertex_values
    theta: dict[int, int] = {}
    for v in fb:
        if theta.setdefault(fb[v], fa[v]) != fa[v]:
            return None
    if len(set(theta.values())) != len(theta):
        return None
    elems_a = {tuple(sorted(grp_a.vertex_vector(i).items())): i for i in range(1, grp_a.n + 1)}
    emap = {}
    for i in range(1, grp_b.n + 1):
        vb = grp_b.vertex_vector(i)
        if all(x in theta for x in vb.values()):
            moved = tuple(sorted((v, theta[x]) for v, x in vb.items()))
            if moved in elems_a:
                emap[i] = elems_a[moved]
                continue
            # transported vector taken modulo A's size
            wrapped = tuple(sorted((v, theta[x] % grp_a.n) for v, x in vb.items()))
            if wrapped in elems_a:
                emap[i] = elems_a[wrapped]
    return GroupMap(theta, emap)


def string_group_view(grp: GraphicGroup, algo: str = "O4", variant: str = "plain",
                      edge_sequence: Sequence[tuple[str, str]] | None = None) -> list[TBPaw]:
    """Element i's TB-paw, for i = 1..n."""
    out = []
    for i in range(1, grp.n + 1):
        m = matrix_from_values(grp.base_graph, grp.vertex_vector(i), grp.edge_vector(i), edge_sequence)
        t = serialize_o(m, algo, variant)
        out.append(TBPaw(t.tokens, f"G{i}", t.traversal, t.options, t.positions))
    return out


__all__ = [
    "GraphicGroup", "build_group", "group_add", "solve_zero", "check_axioms", "EncryptedNetwork",
    "encrypt_graph", "encryption_lower_bound", "GgColoringKind", "CLAUSES", "verify_gg_coloring",
    "index_set", "closed_total_set", "STRENGTHEN", "greedy_total_gg_coloring", "gg_chromatic", "GroupMap",
    "equivalent_group_map", "string_group_view", "AXIOM_CHECK_CAP",
]

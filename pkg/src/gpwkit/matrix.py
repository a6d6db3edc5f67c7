"""Topsnut matrices, value matrices and the traversals that turn them into
text-based passwords (TB-paws)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import sympy

from .errors import MatrixError
from .graph import Edge, Graph, ekey
from .labelling.model import Labelling
from .labelling.verify import edge_labels, verify

Column = tuple[int, int, int]
Pos = tuple[int, int]  # (row, column) of a matrix cell, both 0-based


# ------------------------------------------------------------------ TB-paws
@dataclass(frozen=True)
class TBPaw:
    """A password string together with how it was produced.

    ``positions`` lists the matrix cell behind each token, in order;
    ``tokens`` holds the rendered tokens themselves.
    """

    tokens: tuple[str, ...]
    matrix_id: str = ""
    traversal: str = ""
    options: tuple[tuple[str, str], ...] = ()
    positions: tuple[Pos, ...] = ()

    @property
    def text(self) -> str:
        return "".join(self.tokens)

    def __str__(self) -> str:
        return self.text

    def __len__(self) -> int:
        return len(self.text)

    def inverse(self) -> "TBPaw":
        """The string read backwards token by token."""
        return TBPaw(self.tokens[::-1], self.matrix_id, self.traversal + "^-1", self.options,
                     self.positions[::-1])

    def trace_line(self) -> str:
        opts = ",".join(f"{k}={v}" for k, v in self.options)
        return f"# trace matrix={self.matrix_id or '-'} traversal={self.traversal} options={opts or '-'}"


def render(value: int | str) -> str:
    """Decimal token, with a leading minus written as the letter x."""
    s = str(value)
    return "x" + s[1:] if s.startswith("-") else s


# --------------------------------------------------------- Topsnut matrix
@dataclass(frozen=True)
class TopsnutMatrix:
    columns: tuple[Column, ...]
    edge_binding: tuple[Edge, ...] | None = None
    name: str = ""

    @classmethod
    def from_rows(cls, X: Sequence[int], W: Sequence[int], Y: Sequence[int], name: str = "") -> "TopsnutMatrix":
        if not len(X) == len(W) == len(Y):
            raise MatrixError("X, W and Y rows must have equal length")
        return cls(tuple(zip(map(int, X), map(int, W), map(int, Y))), None, name)

    @property
    def q(self) -> int:
        return len(self.columns)

    @property
    def X(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.columns)

    @property
    def W(self) -> tuple[int, ...]:
        return tuple(c[1] for c in self.columns)

    @property
    def Y(self) -> tuple[int, ...]:
        return tuple(c[2] for c in self.columns)

    def rows(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return self.X, self.W, self.Y

    @property
    def set_ordered(self) -> bool:
        return bool(self.columns) and max(self.X) < min(self.Y)

    def cell(self, pos: Pos) -> int:
        r, c = pos
        return self.columns[c][r]

    def to_text(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.rows())

    def graph_of(self) -> Graph:
        """The graph whose vertices are the labels appearing in X and Y."""
        verts = sorted({v for c in self.columns for v in (c[0], c[2])})
        edges = {ekey(str(c[0]), str(c[2])) for c in self.columns}
        return Graph.make([str(v) for v in verts], sorted(edges))


def build_avev(g: Graph, lab: Labelling, edge_sequence: Sequence[tuple[str, str]] | None = None,
               check: bool = True) -> TopsnutMatrix:
    """Columns (f(x), f(xy), f(y)) in edge-sequence order.

    The orientation of each listed edge decides which end sits on top.
    Without a sequence, ``g.edge_order`` is used; failing that, the
    bipartition's first side goes on top, else the smaller vertex id.
    """
    if check:
        v = verify(g, lab)
        if not v.ok:
            raise MatrixError("labelling does not verify: " + ",".join(dict.fromkeys(v.clauses)))
    return matrix_from_values(g, lab.vertex_values, edge_labels(g, lab), edge_sequence)


def default_sequence(g: Graph) -> list[Edge]:
    if g.edge_order is not None:
        return list(g.edge_order)
    if g.bipartition is not None:
        top = g.bipartition[0]
        return [(a, b) if a in top else (b, a) for a, b in g.edges]
    return list(g.edges)


def matrix_from_values(g: Graph, f: Mapping[str, int], w: Mapping[Edge, int],
                       edge_sequence: Sequence[tuple[str, str]] | None = None) -> TopsnutMatrix:
    """Topsnut matrix from raw vertex and edge values."""
    seq = [tuple(e) for e in (edge_sequence if edge_sequence is not None else default_sequence(g))]
    if sorted(ekey(a, b) for a, b in seq) != sorted(g.edges):
        raise MatrixError("edge sequence must list every edge exactly once")
    cols = []
    for a, b in seq:
        e = ekey(a, b)
        if e not in w:
            raise MatrixError(f"edge ({a},{b}) has no label")
        cols.append((f[a], w[e], f[b]))
    return TopsnutMatrix(tuple(cols), tuple(seq), g.code or g.name or "")


def column_exchange(m: TopsnutMatrix, i: int, j: int) -> TopsnutMatrix:
    """c_(i,j), 1-based column indices."""
    for k in (i, j):
        if not 1 <= k <= m.q:
            raise MatrixError(f"column index {k} outside 1..{m.q}")
    cols = list(m.columns)
    cols[i - 1], cols[j - 1] = cols[j - 1], cols[i - 1]
    bind = None
    if m.edge_binding is not None:
        b = list(m.edge_binding)
        b[i - 1], b[j - 1] = b[j - 1], b[i - 1]
        bind = tuple(b)
    return TopsnutMatrix(tuple(cols), bind, m.name)


def xy_exchange(m: TopsnutMatrix, i: int) -> TopsnutMatrix:
    """l_(i), 1-based column index."""
    if not 1 <= i <= m.q:
        raise MatrixError(f"column index {i} outside 1..{m.q}")
    cols = list(m.columns)
    x, e, y = cols[i - 1]
    cols[i - 1] = (y, e, x)
    bind = None
    if m.edge_binding is not None:
        b = list(m.edge_binding)
        b[i - 1] = b[i - 1][::-1]
        bind = tuple(b)
    return TopsnutMatrix(tuple(cols), bind, m.name)


def compound(*ms: TopsnutMatrix) -> TopsnutMatrix:
    cols: list[Column] = []
    binds: list[Edge] | None = []
    for m in ms:
        cols += m.columns
        if binds is not None and m.edge_binding is not None:
            binds += m.edge_binding
        else:
            binds = None
    return TopsnutMatrix(tuple(cols), tuple(binds) if binds is not None else None,
                         "+".join(m.name for m in ms if m.name))


def joining(m: TopsnutMatrix, order: Sequence[int] | None = None) -> TBPaw:
    """Concatenate x e y of the columns in ``order`` (1-based)."""
    order = list(range(1, m.q + 1)) if order is None else list(order)
    if sorted(order) != list(range(1, m.q + 1)):
        raise MatrixError("joining order must be a permutation of the columns")
    pos = [(r, c - 1) for c in order for r in range(3)]
    return _paw(m, pos, "joining", (("order", ",".join(map(str, order))),))


MATRIX_OPS = ("column_exchange", "xy_exchange", "compound")


def matrix_op(m: TopsnutMatrix, op: str, *args) -> TopsnutMatrix:
    if op == "column_exchange":
        return column_exchange(m, *args)
    if op == "xy_exchange":
        return xy_exchange(m, *args)
    if op == "compound":
        return compound(m, *args)
    raise MatrixError(f"unknown matrix operation {op!r}; expected one of {', '.join(MATRIX_OPS)}")


# ---------------------------------------------------------- O traversals
def _o_positions(q: int, algo: str) -> list[Pos]:
    X, E, Y = 0, 1, 2
    if algo == "O1":
        return [(X, i) for i in range(q)] + [(E, i) for i in reversed(range(q))] + [(Y, i) for i in range(q)]
    if algo == "O2":
        out: list[Pos] = []
        for i in range(q):
            first, last = (X, Y) if i % 2 == 0 else (Y, X)
            out += [(first, i), (E, i), (last, i)]
        return out
    if algo == "O3":
        return _o3_positions(q)
    if algo == "O4":
        return [(r, i) for i in range(q) for r in (X, E, Y)]
    raise MatrixError(f"unknown O traversal {algo!r}")


def _o3_positions(q: int) -> list[Pos]:
    """Two-row weave: a pair of y's, an e, a run of x's, an e, the next pair
    of y's, and so on.  The first y pair is read right to left and the
    first x run holds a single token; whatever one row still holds once
    the other runs dry is appended in order."""
    X, E, Y = 0, 1, 2
    xs, ys, es = list(range(q)), list(range(q)), list(range(q))
    out: list[Pos] = []
    first_y = ys[:2][::-1]
    del ys[:2]
    out += [(Y, i) for i in first_y]
    turn_x, x_take = True, 1
    while xs or ys or es:
        if es:
            out.append((E, es.pop(0)))
        if turn_x:
            take, xs = xs[:x_take], xs[x_take:]
            out += [(X, i) for i in take]
            x_take = 2
        else:
            take, ys = ys[:2], ys[2:]
            out += [(Y, i) for i in take]
        turn_x = not turn_x
        if not es:
            out += [(X, i) for i in xs] + [(Y, i) for i in ys]
            xs, ys = [], []
    return out


def _paw(m: TopsnutMatrix, pos: list[Pos], traversal: str, options=()) -> TBPaw:
    return TBPaw(tuple(render(m.cell(p)) for p in pos), m.name, traversal, tuple(options), tuple(pos))


O_ALGOS = ("O1", "O2", "O3", "O4")
O_VARIANTS = ("plain", "reciprocal", "inverse")


def serialize_o(m: TopsnutMatrix, algo: str = "O1", variant: str = "plain") -> TBPaw:
    """One-line O-k traversal.

    ``reciprocal`` swaps the roles of the X and Y rows; ``inverse`` runs
    the same pattern over the columns taken from last to first.
    """
    algo = algo.upper()
    if variant not in O_VARIANTS:
        raise MatrixError(f"unknown variant {variant!r}")
    pos = _o_positions(m.q, algo)
    if variant == "reciprocal":
        pos = [(2 - r if r != 1 else 1, c) for r, c in pos]
    elif variant == "inverse":
        pos = [(r, m.q - 1 - c) for r, c in pos]
    return _paw(m, pos, f"{algo}-{variant}")


def serialize_rows(m: TopsnutMatrix) -> list[TBPaw]:
    """Rows X, W, Y emitted as three separate segments."""
    return [_paw(m, [(r, i) for i in range(m.q)], f"row{r + 1}") for r in range(3)]


# -------------------------------------------------- Type-1 adjacency check
def _adjacent(a: Pos, b: Pos) -> bool:
    (ra, ia), (rb, ib) = a, b
    d = abs(ia - ib)
    if ra == rb:
        return d == 1
    if 1 in (ra, rb):  # x-e or y-e
        return d <= 1
    return d == 1  # x-y across neighbouring columns


@dataclass
class KLineVerdict:
    ok: bool
    segments: list[int]
    breaks: list[int] = field(default_factory=list)


def kline_validate(t: TBPaw, m: TopsnutMatrix, k: int) -> KLineVerdict:
    """Split ``t`` at every token pair that is not an allowed neighbour
    pattern; pass when at most ``k`` segments result."""
    if not t.positions:
        raise MatrixError("TB-paw carries no cell trace")
    if [render(m.cell(p)) for p in t.positions] != list(t.tokens):
        raise MatrixError("TB-paw trace does not replay against this matrix")
    if sorted(t.positions) != sorted((r, c) for r in range(3) for c in range(m.q)):
        return KLineVerdict(False, [], [])
    breaks = [i for i in range(1, len(t.positions)) if not _adjacent(t.positions[i - 1], t.positions[i])]
    bounds = [0] + breaks + [len(t.positions)]
    segs = [b - a for a, b in zip(bounds, bounds[1:])]
    return KLineVerdict(len(segs) <= k, segs, breaks)


# ---------------------------------------------------------- value matrices
@dataclass(frozen=True)
class ValueMatrix:
    cells: tuple[tuple[str, ...], ...]
    role: str = "evalue"  # evalue | vevalue | code
    name: str = ""

    @classmethod
    def of(cls, rows: Iterable[Iterable[int | str]], role: str = "evalue", name: str = "") -> "ValueMatrix":
        cells = tuple(tuple(render(x) for x in row) for row in rows)
        if cells and len({len(r) for r in cells}) != 1:
            raise MatrixError("rows must have equal length")
        return cls(cells, role, name)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.cells), (len(self.cells[0]) if self.cells else 0)

    def to_text(self) -> str:
        return "\n".join(" ".join(r) for r in self.cells)

    def ints(self) -> list[list[int]]:
        return [[int(x.replace("x", "-"), 16 if self.role == "code" else 10) for x in r] for r in self.cells]


def build_value_matrix(g: Graph, lab: Labelling, role: str = "evalue",
                       order: Sequence[str] | None = None) -> ValueMatrix:
    """Adjacency e-value matrix, or the ve-value matrix bordered by vertex
    labels (corner 0)."""
    if role not in ("evalue", "vevalue"):
        raise MatrixError("role must be 'evalue' or 'vevalue'")
    order = list(order) if order is not None else sorted(g.vertices)
    if sorted(order) != sorted(g.vertices):
        raise MatrixError("vertex order must list every vertex once")
    w = edge_labels(g, lab)
    grid = [[w.get(ekey(a, b), 0) if a != b else 0 for b in order] for a in order]
    if role == "vevalue":
        f = lab.vertex_values
        grid = [[0] + [f[v] for v in order]] + [[f[a]] + row for a, row in zip(order, grid)]
    return ValueMatrix.of(grid, role, g.code or "")


_HEX = set("0123456789ABCDEF")


def build_code_matrix(codes: Sequence[str], alphabet: str = "decimal") -> ValueMatrix:
    """4 x m matrix whose column i spells code i top to bottom."""
    allowed = set("0123456789") if alphabet == "decimal" else _HEX
    cols = []
    for c in codes:
        cu = str(c).upper()
        if len(cu) != 4 or not set(cu) <= allowed:
            raise MatrixError(f"code {c!r} is not four {alphabet} symbols")
        cols.append(cu)
    rows = [[col[r] for col in cols] for r in range(4)]
    return ValueMatrix(tuple(tuple(r) for r in rows), "code", "")


VO_LINES = ("Vo1", "Vo2", "Vo3", "Vo4")


def _vo_positions(R: int, C: int, line: str) -> list[Pos]:
    if line == "Vo1":
        return [(r, c) for r in range(R) for c in (range(C) if r % 2 == 0 else reversed(range(C)))]
    if line == "Vo2":
        return [(r, c) for c in range(C) for r in (range(R) if c % 2 == 0 else reversed(range(R)))]
    if line == "Vo3":
        out = []
        for k, d in enumerate(range(-(R - 1), C)):
            cells = [(r, r + d) for r in range(R) if 0 <= r + d < C]
            out += cells if k % 2 else cells[::-1]
        return out
    if line == "Vo4":
        return [(r, c) for c in range(C) for r in range(R)]
    raise MatrixError(f"unknown Vo line {line!r}")


def serialize_vo(m: ValueMatrix, line: str = "Vo1") -> TBPaw:
    """Vo1 row serpentine, Vo2 column serpentine, Vo3 anti-diagonal zigzag
    from the bottom-left cell, Vo4 plain column-major."""
    R, C = m.shape
    pos = _vo_positions(R, C, line.capitalize() if line.lower().startswith("vo") else line)
    return TBPaw(tuple(m.cells[r][c] for r, c in pos), m.name, line, (), tuple(pos))


# ------------------------------------------------------------- counting
def tbpaw_count(q: int) -> tuple[int, int]:
    """(number of Topsnut matrices, TB-paws per matrix) = (2q + q!, (3q)!)."""
    if q < 1:
        raise MatrixError("q must be at least 1")
    return 2 * q + math.factorial(q), math.factorial(3 * q)


def zero_permutation_count(n: int) -> int:
    """n choices of zero times n! orderings."""
    return n * math.factorial(n)


def strong_rank(t: TBPaw | str | int, alphabet_size: int) -> float:
    """L(x) * log2 |X| bits."""
    if alphabet_size < 2:
        raise MatrixError("alphabet size must be at least 2")
    n = t if isinstance(t, int) else len(str(t))
    return n * math.log2(alphabet_size)


# --------------------------------------------------------- linear mod 10
def apply_or_solve_linear(mat: ValueMatrix | Sequence[Sequence[int]], known: Sequence[int],
                          direction: str = "apply") -> list[int]:
    """Y = A X (mod 10), or X from Y when A is invertible modulo 10."""
    rows = mat.ints() if isinstance(mat, ValueMatrix) else [list(map(int, r)) for r in mat]
    A = sympy.Matrix(rows)
    if A.shape != (4, 4):
        raise MatrixError("linear codes use a 4x4 matrix")
    v = sympy.Matrix(list(map(int, known)))
    if v.shape != (4, 1) or any(not 0 <= x <= 9 for x in v):
        raise MatrixError("vector must hold four digits")
    if direction == "apply":
        return [int(x) % 10 for x in A * v]
    if direction != "solve":
        raise MatrixError("direction must be 'apply' or 'solve'")
    try:
        inv = A.inv_mod(10)
    except ValueError:
        raise MatrixError("matrix is singular modulo 10; the system has no unique solution") from None
    return [int(x) % 10 for x in inv * v]


# -------------------------------------------------------- analytic Hanzis
def analytic_encode(g: Graph, edge_sequence: Sequence[tuple[str, str]] | None = None) -> TBPaw:
    """Digits x y u v per edge from the end coordinates."""
    coords: Mapping[str, tuple[int, int]] = g.coord_map
    seq = list(edge_sequence) if edge_sequence is not None else list(g.oriented_edges())
    toks = []
    for a, b in seq:
        for v in (a, b):
            if v not in coords:
                raise MatrixError(f"vertex {v} has no coordinate")
        (x, y), (u, w) = coords[a], coords[b]
        toks.append(f"{render(x)}{render(y)}{render(u)}{render(w)}")
    return TBPaw(tuple(toks), g.code or "", "analytic")


__all__ = [
    "TBPaw", "render", "TopsnutMatrix", "build_avev", "matrix_from_values", "default_sequence", "column_exchange", "xy_exchange", "compound",
    "joining", "matrix_op", "MATRIX_OPS", "serialize_o", "serialize_rows", "O_ALGOS", "O_VARIANTS",
    "KLineVerdict", "kline_validate", "ValueMatrix", "build_value_matrix", "build_code_matrix", "VO_LINES",
    "serialize_vo", "tbpaw_count", "zero_permutation_count", "strong_rank", "apply_or_solve_linear",
    "analytic_encode",
]

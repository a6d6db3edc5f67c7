"""Labelling values, the kind catalogue and verdict records."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from ..errors import LabellingError
from ..graph import Edge, Graph, ekey

BASE_KINDS: tuple[str, ...] = (
    "graceful", "set_ordered_graceful", "strongly_graceful",
    "odd_graceful", "set_ordered_odd_graceful", "strongly_odd_graceful",
    "total_graceful", "edge_magic_total_graceful",
    "felicitous", "set_ordered_felicitous", "kd_graceful",
    "edge_magic_total", "kd_edge_antimagic_total",
    "odd_elegant", "elegant", "kd_arithmetic", "harmonious", "kd_harmonious",
    "relaxed_emt", "oemm", "eedoemm", "six_c", "odd_six_c", "dgemm",
    "edge_odd_graceful_total", "multiple_edge_meaning",
    "perfect_odd_graceful", "perfect_epsilon", "four_c",
    "v_set_e_proper_graceful", "odd_even_separable_emt",
)

LabellingKind = Enum(  # type: ignore[misc]
    "LabellingKind",
    [(n.upper(), n) for n in BASE_KINDS]
    + [("FREE", "free")]
    + [(f"FLAWED_{n.upper()}", f"flawed_{n}") for n in BASE_KINDS],
    type=str,
)
LabellingKind.__doc__ = "Every supported labelling kind, including flawed counterparts."

PARAMETERIZED = {"kd_graceful", "kd_arithmetic", "kd_edge_antimagic_total", "kd_harmonious"}
DEFAULT_PARAMS = (1, 1)


def kind_of(name: "str | LabellingKind") -> "LabellingKind":
    if isinstance(name, LabellingKind):
        return name
    try:
        return LabellingKind(name.strip().lower().replace("-", "_"))
    except ValueError:
        raise LabellingError(f"unknown labelling kind {name!r}") from None


def is_flawed(kind: "LabellingKind") -> bool:
    return kind.value.startswith("flawed_")


def base_name(kind: "LabellingKind") -> str:
    return kind.value[len("flawed_"):] if is_flawed(kind) else kind.value


def is_parameterized(kind: "LabellingKind") -> bool:
    return base_name(kind) in PARAMETERIZED


@dataclass(frozen=True, eq=True)
class Labelling:
    """A vertex (and optionally edge) value assignment tagged with its kind.

    ``edge_values`` is kept only for kinds whose definition quantifies over
    chosen edge values; induced kinds derive them on demand.
    ``vertex_sets`` replaces ``vertex_values`` for v-set labellings.
    """

    kind: "LabellingKind"
    vertex_values: Mapping[str, int]
    edge_values: Mapping[Edge, int] | None = None
    params: tuple[int, int] | None = None
    flaw_budget: int | None = None
    vertex_sets: Mapping[str, frozenset[int]] | None = field(default=None)

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def make(cls, kind, vertex_values: Mapping[str, int], edge_values: Mapping[tuple[str, str], int] | None = None,
             params: tuple[int, int] | None = None, flaw_budget: int | None = None,
             vertex_sets: Mapping[str, frozenset[int]] | None = None) -> "Labelling":
        k = kind_of(kind)
        if is_parameterized(k):
            params = tuple(params) if params is not None else DEFAULT_PARAMS  # type: ignore[assignment]
        elif params is not None:
            raise LabellingError(f"kind {k.value} takes no (k,d) parameters")
        if flaw_budget is not None and not is_flawed(k):
            raise LabellingError("flaw_budget only applies to flawed kinds")
        ev = None if edge_values is None else {ekey(a, b): int(v) for (a, b), v in edge_values.items()}
        vs = None if vertex_sets is None else {v: frozenset(s) for v, s in vertex_sets.items()}
        return cls(k, {v: int(x) for v, x in vertex_values.items()}, ev, params, flaw_budget, vs)

    def with_kind(self, kind, **kw) -> "Labelling":
        return Labelling.make(kind, kw.get("vertex_values", self.vertex_values),
                              kw.get("edge_values", self.edge_values), kw.get("params"),
                              kw.get("flaw_budget"), kw.get("vertex_sets", self.vertex_sets))

    def __getitem__(self, v: str) -> int:
        return self.vertex_values[v]


@dataclass
class Verdict:
    kind: str
    ok: bool = True
    failures: list[tuple[str, str]] = field(default_factory=list)
    constants: dict[str, object] = field(default_factory=dict)

    def fail(self, clause: str, detail: str = "") -> None:
        self.ok = False
        self.failures.append((clause, detail))

    @property
    def clauses(self) -> list[str]:
        return [c for c, _ in self.failures]

    def __bool__(self) -> bool:
        return self.ok

    def to_text(self) -> str:
        head = f"{'pass' if self.ok else 'fail'} kind={self.kind}"
        if not self.ok:
            head += " clauses=" + ",".join(dict.fromkeys(self.clauses))
        extras = []
        for k in sorted(self.constants):
            v = self.constants[k]
            if isinstance(v, (set, frozenset)):
                v = "{" + ",".join(str(x) for x in sorted(v)) + "}"
            elif isinstance(v, (list, tuple)):
                v = "[" + ",".join(str(x) for x in v) + "]"
            extras.append(f"{k}={v}".replace(" ", ""))
        return " ".join([head, *extras])


# ------------------------------------------------------------ text format
def format_labelling(lab: Labelling) -> str:
    head = f"labelling {lab.kind.value}"
    opts = []
    if lab.params is not None:
        opts.append(f"k={lab.params[0]},d={lab.params[1]}")
    if lab.flaw_budget is not None:
        opts.append(f"flaw={lab.flaw_budget}")
    if opts:
        head += " [" + ",".join(opts) + "]"
    parts = []
    if lab.vertex_sets is not None:
        parts += [f"{v}={{{','.join(str(x) for x in sorted(s))}}}" for v, s in lab.vertex_sets.items()]
    else:
        parts += [f"{v}={x}" for v, x in lab.vertex_values.items()]
    if lab.edge_values is not None:
        parts.append("edges: " + ",".join(f"({a},{b})={x}" for (a, b), x in lab.edge_values.items()))
    return head + " { " + "; ".join(parts) + "; }"


_HEAD = re.compile(r"\s*labelling\s+([A-Za-z0-9_\-]+)\s*(?:\[([^\]]*)\])?\s*\{(.*)\}\s*$", re.S)
_EDGE_VAL = re.compile(r"\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)\s*=\s*(-?\d+)")


def parse_labelling(text: str) -> Labelling:
    """Parse one labelling block (inverse of :func:`format_labelling`)."""
    body = "\n".join(ln for ln in text.splitlines() if not ln.lstrip().startswith("#"))
    m = _HEAD.match(body)
    if not m:
        raise LabellingError("malformed labelling block; expected 'labelling <kind> [opts] { ... }'")
    kind = kind_of(m.group(1))
    params = None
    flaw = None
    if m.group(2):
        opts = dict(o.split("=", 1) for o in (x.strip() for x in m.group(2).split(",")) if o)
        for key in opts:
            if key.strip() not in ("k", "d", "flaw"):
                raise LabellingError(f"unknown labelling option {key!r}")
        if "k" in opts or "d" in opts:
            params = (int(opts.get("k", 1)), int(opts.get("d", 1)))
        if "flaw" in opts:
            flaw = int(opts["flaw"])
    values: dict[str, int] = {}
    sets: dict[str, frozenset[int]] = {}
    edges: dict[tuple[str, str], int] | None = None
    for item in (s.strip() for s in m.group(3).split(";")):
        if not item:
            continue
        if item.startswith("edges"):
            _, _, rest = item.partition(":")
            edges = {}
            consumed = _EDGE_VAL.sub("", rest).replace(",", "").strip()
            if consumed:
                raise LabellingError(f"cannot parse edge values near {consumed[:20]!r}")
            for a, b, x in _EDGE_VAL.findall(rest):
                edges[(a, b)] = int(x)
            continue
        name, eq, val = item.partition("=")
        if not eq:
            raise LabellingError(f"expected vertex=value, got {item!r}")
        name, val = name.strip(), val.strip()
        if val.startswith("{"):
            inner = val.strip("{}").strip()
            sets[name] = frozenset(int(x) for x in inner.split(",") if x.strip())
        else:
            try:
                values[name] = int(val)
            except ValueError:
                raise LabellingError(f"vertex value for {name} is not an integer: {val!r}") from None
    if sets and values:
        raise LabellingError("mixing set and integer vertex values is not allowed")
    return Labelling.make(kind, values, edges, params, flaw, sets or None)


def check_domain(g: Graph, lab: Labelling) -> None:
    """Labels must cover exactly the graph's vertices (and edges when stored)."""
    keys = set(lab.vertex_sets) if lab.vertex_sets is not None else set(lab.vertex_values)
    if keys != set(g.vertices):
        missing = sorted(set(g.vertices) - keys)
        extra = sorted(keys - set(g.vertices))
        raise LabellingError(f"labelling domain mismatch: missing {missing} extra {extra}")
    if lab.edge_values is not None and set(lab.edge_values) != set(g.edges):
        raise LabellingError("edge values must be given for exactly the graph's edges")

"""Maps from a set-ordered graceful labelling to its equivalent labellings.

All maps read two numbers off the source: the threshold ``t`` (largest
low-side label) and ``Q``, the number of edge labels the source realises
(q, plus the phantom edges for flawed sources).  Writing ``d_e`` for the
graceful label of edge e, each target is a relabelling of the two sides:

===========================  ==========================  ============================
target                       low side x                  high side y / edges
===========================  ==========================  ============================
felicitous                   t - f(x)                    f(y)
kd_graceful                  d f(x)                      d f(y) + k - d
edge_magic_total             t - f(x) + 1                f(y) + 1; edge 2p - d_e
kd_edge_antimagic_total      as edge_magic_total         edge p + d_e, (k,d)=(t+p+4,2)
odd_elegant                  2(t - f(x))                 2(f(y) - t) - 1
kd_arithmetic                d(t - f(x))                 d(f(y) - t - 1) + k
harmonious                   t - f(x)                    f(y), with Q sent to 0
odd_graceful                 2 f(x)                      2 f(y) - 1
odd_even_separable_emt       2(t - f(x)) + 1             2 f(y) + 1; edge 2(Q + 1 - d_e)
edge_magic_total_graceful    f(x) + 1                    f(y) + 1; edge p + Q + 1 - d_e
===========================  ==========================  ============================
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import LabellingError
from ..graph import Graph, components
from .model import DEFAULT_PARAMS, Labelling, base_name, is_flawed, kind_of
from .verify import verify


@dataclass(frozen=True)
class SourceShape:
    """What the maps need to know about the source labelling."""

    t: int
    Q: int
    p: int
    low: frozenset[str]


def source_shape(g: Graph, src: Labelling) -> SourceShape:
    if base_name(src.kind) != "set_ordered_graceful":
        raise LabellingError(f"transforms start from a set-ordered graceful labelling, not {src.kind.value}")
    v = verify(g, src)
    if not v.ok:
        raise LabellingError("source labelling does not verify: " + ",".join(dict.fromkeys(v.clauses)))
    t = int(v.constants["threshold"])  # type: ignore[arg-type]
    flaw = 0
    if is_flawed(src.kind):
        flaw = src.flaw_budget if src.flaw_budget is not None else len(components(g)) - 1
    low = frozenset(x for x in g.vertices if src.vertex_values[x] <= t)
    return SourceShape(t, g.q + flaw, g.p, low)


def _d(f, e) -> int:
    return abs(f[e[0]] - f[e[1]])


VertexMap = Callable[[int, bool, SourceShape, tuple[int, int]], int]


@dataclass(frozen=True)
class _Map:
    fwd: VertexMap
    back: VertexMap
    edge: Callable[[int, SourceShape, tuple[int, int]], int] | None = None
    params: Callable[[SourceShape, tuple[int, int]], tuple[int, int] | None] = lambda sh, prm: None


def _harm_fwd(x, low, sh, prm):
    if low:
        return sh.t - x
    return 0 if x == sh.Q else x


def _harm_back(x, low, sh, prm):
    if low:
        return sh.t - x
    return sh.Q if x == 0 else x


MAPS: dict[str, _Map] = {
    "felicitous": _Map(lambda x, low, sh, prm: sh.t - x if low else x,
                       lambda x, low, sh, prm: sh.t - x if low else x),
    "kd_graceful": _Map(lambda x, low, sh, prm: prm[1] * x if low else prm[1] * x + prm[0] - prm[1],
                        lambda x, low, sh, prm: x // prm[1] if low else (x - prm[0] + prm[1]) // prm[1],
                        params=lambda sh, prm: prm),
    "edge_magic_total": _Map(lambda x, low, sh, prm: sh.t - x + 1 if low else x + 1,
                             lambda x, low, sh, prm: sh.t - x + 1 if low else x - 1,
                             edge=lambda d, sh, prm: 2 * sh.p - d),
    "kd_edge_antimagic_total": _Map(lambda x, low, sh, prm: sh.t - x + 1 if low else x + 1,
                                    lambda x, low, sh, prm: sh.t - x + 1 if low else x - 1,
                                    edge=lambda d, sh, prm: sh.p + d,
                                    params=lambda sh, prm: (sh.t + sh.p + 4, 2)),
    "odd_elegant": _Map(lambda x, low, sh, prm: 2 * (sh.t - x) if low else 2 * (x - sh.t) - 1,
                        lambda x, low, sh, prm: sh.t - x // 2 if low else (x + 1) // 2 + sh.t),
    "kd_arithmetic": _Map(lambda x, low, sh, prm: prm[1] * (sh.t - x) if low else prm[1] * (x - sh.t - 1) + prm[0],
                          lambda x, low, sh, prm: sh.t - x // prm[1] if low
                          else (x - prm[0]) // prm[1] + sh.t + 1,
                          params=lambda sh, prm: prm),
    "harmonious": _Map(_harm_fwd, _harm_back),
    "odd_graceful": _Map(lambda x, low, sh, prm: 2 * x if low else 2 * x - 1,
                         lambda x, low, sh, prm: x // 2 if low else (x + 1) // 2),
    "odd_even_separable_emt": _Map(lambda x, low, sh, prm: 2 * (sh.t - x) + 1 if low else 2 * x + 1,
                                   lambda x, low, sh, prm: sh.t - (x - 1) // 2 if low else (x - 1) // 2,
                                   edge=lambda d, sh, prm: 2 * (sh.Q + 1 - d)),
    "edge_magic_total_graceful": _Map(lambda x, low, sh, prm: x + 1, lambda x, low, sh, prm: x - 1,
                                      edge=lambda d, sh, prm: sh.p + sh.Q + 1 - d),
}
MAPS["set_ordered_odd_graceful"] = MAPS["odd_graceful"]
MAPS["set_ordered_felicitous"] = MAPS["felicitous"]

TRANSFORM_TARGETS = tuple(MAPS)


def _target_name(target) -> str:
    name = base_name(kind_of(target))
    if name not in MAPS:
        raise LabellingError(f"no transform from set_ordered_graceful to {name}")
    return name


def transform(g: Graph, src: Labelling, target, params: tuple[int, int] | None = None) -> Labelling:
    """Relabel a (flawed) set-ordered graceful labelling as ``target``.

    A flawed source yields the flawed counterpart of the target with the
    same phantom-edge budget.
    """
    name = _target_name(target)
    sh = source_shape(g, src)
    m = MAPS[name]
    prm = tuple(params) if params else DEFAULT_PARAMS
    f = src.vertex_values
    vv = {x: m.fwd(f[x], x in sh.low, sh, prm) for x in g.vertices}
    ev = None if m.edge is None else {e: m.edge(_d(f, e), sh, prm) for e in g.edges}
    kind = name
    flaw = None
    if is_flawed(src.kind):
        kind = "flawed_" + name
        flaw = sh.Q - g.q
    return Labelling.make(kind, vv, ev, m.params(sh, prm), flaw)


def inverse_transform(g: Graph, lab: Labelling, shape: SourceShape, params: tuple[int, int] | None = None) -> Labelling:
    """Undo :func:`transform` given the source's :class:`SourceShape`."""
    name = base_name(lab.kind)
    if name not in MAPS:
        raise LabellingError(f"no inverse transform from {name}")
    m = MAPS[name]
    prm = tuple(params) if params else (lab.params or DEFAULT_PARAMS)
    if name == "kd_edge_antimagic_total":
        prm = DEFAULT_PARAMS
    vv = {x: m.back(lab.vertex_values[x], x in shape.low, shape, prm) for x in g.vertices}
    if is_flawed(lab.kind):
        return Labelling.make("flawed_set_ordered_graceful", vv, flaw_budget=lab.flaw_budget)
    return Labelling.make("set_ordered_graceful", vv)


__all__ = ["transform", "inverse_transform", "source_shape", "SourceShape", "TRANSFORM_TARGETS"]

"""Text corpus of graphs: parsing, formatting and the bundled seed file.

Record syntax::

    graph <code> [name] { vertices: a,b,...; edges: (a,b),...;
                          bipartition: {..}|{..}; coords: a:(x,y),...;
                          edge_order: (a,b),...; arcs: (a->b),...; }

``#`` starts a comment line.  Labelling blocks (``labelling ...{...}``)
may appear in the same file; they are collected separately and keyed by
the code of the preceding graph record.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import CorpusParseError, GraphError
from .graph import Graph

ENV_CORPUS = "GPWKIT_CORPUS"

_ID = r"[^,(){}\s:;|]+"
_PAIR = re.compile(rf"\(\s*({_ID})\s*,\s*({_ID})\s*\)")
_ARC = re.compile(rf"\(\s*({_ID})\s*->\s*({_ID})\s*\)")
_COORD = re.compile(rf"({_ID})\s*:\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")
_BIP = re.compile(r"^\{([^{}]*)\}\s*\|\s*\{([^{}]*)\}$")


@dataclass
class Corpus:
    graphs: dict[str, Graph] = field(default_factory=dict)
    labellings: dict[str, list[str]] = field(default_factory=dict)

    def __iter__(self):
        return iter(self.graphs.values())

    def __len__(self) -> int:
        return len(self.graphs)

    def get(self, code: str) -> Graph:
        try:
            return self.graphs[code]
        except KeyError:
            raise GraphError(f"graph code {code!r} is not in the corpus") from None


def _line_of(text: str, pos: int) -> int:
    return text.count("\n", 0, pos) + 1


def _strip_comments(text: str) -> str:
    return "\n".join("" if ln.lstrip().startswith("#") else ln for ln in text.splitlines())


def _ids(value: str) -> list[str]:
    return [x.strip() for x in value.split(",") if x.strip()]


def _pairs(rx: re.Pattern, value: str, what: str, line: int) -> list[tuple[str, str]]:
    rest = rx.sub("", value).replace(",", "").strip()
    if rest:
        raise CorpusParseError(f"cannot parse {what} near {rest[:30]!r}", line)
    return [(a, b) for a, b in rx.findall(value)]


def _parse_body(code: str, name: str | None, body: str, text: str, offset: int) -> Graph:
    fields: dict[str, tuple[str, int]] = {}
    depth = 0
    start = 0
    chunks: list[tuple[str, int]] = []
    for i, ch in enumerate(body):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        elif ch == ";" and depth == 0:
            chunks.append((body[start:i], offset + start))
            start = i + 1
    chunks.append((body[start:], offset + start))
    for chunk, pos in chunks:
        if not chunk.strip():
            continue
        line = _line_of(text, pos + len(chunk) - len(chunk.lstrip()))
        key, colon, value = chunk.partition(":")
        key = key.strip()
        if not colon:
            raise CorpusParseError(f"graph {code}: expected 'field: value', got {chunk.strip()[:30]!r}", line)
        if key in fields:
            raise CorpusParseError(f"graph {code}: field {key!r} given twice", line)
        fields[key] = (value.strip(), line)
    allowed = {"vertices", "edges", "bipartition", "coords", "edge_order", "arcs"}
    for key, (_, line) in fields.items():
        if key not in allowed:
            raise CorpusParseError(f"graph {code}: unknown field {key!r}", line)
    if "vertices" not in fields:
        raise CorpusParseError(f"graph {code}: missing 'vertices' field", _line_of(text, offset))
    verts = _ids(fields["vertices"][0])
    edges = _pairs(_PAIR, fields["edges"][0], "edges", fields["edges"][1]) if "edges" in fields else []
    arcs = _pairs(_ARC, fields["arcs"][0], "arcs", fields["arcs"][1]) if "arcs" in fields else []
    bip = None
    if "bipartition" in fields:
        val, line = fields["bipartition"]
        m = _BIP.match(val)
        if not m:
            raise CorpusParseError(f"graph {code}: bipartition must look like {{a,b}}|{{c,d}}", line)
        bip = (_ids(m.group(1)), _ids(m.group(2)))
    coords = None
    if "coords" in fields:
        val, line = fields["coords"]
        rest = _COORD.sub("", val).replace(",", "").strip()
        if rest:
            raise CorpusParseError(f"graph {code}: cannot parse coords near {rest[:30]!r}", line)
        coords = {v: (int(x), int(y)) for v, x, y in _COORD.findall(val)}
    order = None
    if "edge_order" in fields:
        order = _pairs(_PAIR, fields["edge_order"][0], "edge_order", fields["edge_order"][1])
    try:
        return Graph.make(verts, edges, bipartition=bip, coords=coords, edge_order=order, arcs=arcs,
                          code=code, name=name)
    except GraphError as exc:
        raise CorpusParseError(str(exc), _line_of(text, offset)) from None


_RECORD = re.compile(r"\b(graph|labelling)\b")


def parse_corpus(text: str) -> Corpus:
    text = _strip_comments(text)
    corpus = Corpus()
    pos = 0
    last_code: str | None = None
    while True:
        m = _RECORD.search(text, pos)
        if not m:
            if text[pos:].strip():
                raise CorpusParseError(f"unexpected text {text[pos:].strip()[:30]!r}", _line_of(text, pos))
            break
        gap = text[pos:m.start()]
        if gap.strip():
            raise CorpusParseError(f"unexpected text {gap.strip()[:30]!r}", _line_of(text, pos))
        brace = text.find("{", m.end())
        if brace < 0:
            raise CorpusParseError(f"{m.group(1)} record without '{{'", _line_of(text, m.start()))
        depth = 0
        end = -1
        for i in range(brace, len(text)):
            if text[i] == "{":
                depth += 1
            elif text[i] == "}":
                depth -= 1
                if depth == 0:
                    end = i
                    break
        if end < 0:
            raise CorpusParseError("unbalanced braces", _line_of(text, brace))
        if m.group(1) == "labelling":
            if last_code is None:
                raise CorpusParseError("labelling block before any graph record", _line_of(text, m.start()))
            corpus.labellings.setdefault(last_code, []).append(text[m.start():end + 1])
        else:
            header = text[m.end():brace].split()
            if not header:
                raise CorpusParseError("graph record without a code", _line_of(text, m.start()))
            code, name = header[0], (" ".join(header[1:]) or None)
            if code in corpus.graphs:
                raise CorpusParseError(f"duplicate graph code {code}", _line_of(text, m.start()))
            corpus.graphs[code] = _parse_body(code, name, text[brace + 1:end], text, brace + 1)
            last_code = code
        pos = end + 1
    return corpus


def load_corpus(path: str | os.PathLike) -> list[Graph]:
    """Graphs of a corpus file, in file order."""
    return list(read_corpus(path).graphs.values())


def read_corpus(path: str | os.PathLike) -> Corpus:
    p = Path(path)
    if not p.exists():
        raise GraphError(f"corpus file {p} does not exist")
    return parse_corpus(p.read_text(encoding="utf-8"))


def seed_corpus() -> Corpus:
    """The bundled seed corpus."""
    text = resources.files("gpwkit.data").joinpath("seed.corpus").read_text(encoding="utf-8")
    return parse_corpus(text)


def default_corpus() -> Corpus:
    """Corpus named by ``$GPWKIT_CORPUS`` if set, else the bundled seed."""
    env = os.environ.get(ENV_CORPUS)
    return read_corpus(env) if env else seed_corpus()


def format_graph(g: Graph) -> str:
    """Corpus record for ``g`` (parses back to an equal graph)."""
    head = f"graph {g.code or 'G'}" + (f" {g.name}" if g.name else "")
    arcset = {tuple(sorted(a)) for a in g.arcs}
    parts = [f"vertices: {','.join(g.vertices)}"]
    plain = [e for e in g.edges if e not in arcset]
    if plain:
        parts.append("edges: " + ",".join(f"({a},{b})" for a, b in plain))
    if g.arcs:
        parts.append("arcs: " + ",".join(f"({a}->{b})" for a, b in g.arcs))
    if g.bipartition is not None:
        xs = [v for v in g.vertices if v in g.bipartition[0]]
        ys = [v for v in g.vertices if v in g.bipartition[1]]
        parts.append(f"bipartition: {{{','.join(xs)}}}|{{{','.join(ys)}}}")
    if g.coords is not None:
        parts.append("coords: " + ",".join(f"{v}:({x},{y})" for v, (x, y) in g.coords))
    if g.edge_order is not None:
        parts.append("edge_order: " + ",".join(f"({a},{b})" for a, b in g.edge_order))
    return head + " { " + "; ".join(parts) + "; }"

"""Command-line front end.

Exit codes: 0 on success (a negative verdict is still a success), 1 when
the inputs are rejected by the library, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .corpus import ENV_CORPUS, default_corpus, format_graph, parse_corpus, read_corpus
from .directed import (DIRECTED_KINDS, DirectedGraph, DirectedLabelling, directed_matrix,
                       directed_serialize, orient_from_sogl, verify_directed)
from .errors import DomainError
from .graph import (Graph, classify, complete_bipartite, complete_graph, cycle_graph, disjoint_union,
                    path_graph, spanning_tree_count, star_graph)
from .group import (GgColoringKind, build_group, encrypt_graph, encryption_lower_bound,
                    greedy_total_gg_coloring, group_add, string_group_view, verify_gg_coloring)
from .growth import ALGORITHMS, GrowthSpec, degree_stats, grow
from .labelling import (Labelling, caterpillar_sweep, construct_caterpillar_chain, format_labelling,
                        parse_labelling, search, transform, verify)
from .matrix import (build_avev, build_value_matrix, serialize_o, serialize_rows, serialize_vo,
                     strong_rank, tbpaw_count, zero_permutation_count)


class UsageError(Exception):
    """Bad invocation detected after argparse (missing file, bad reference)."""


_FAMILY = re.compile(r"^(C|P|K|S)(\d+)$")
_KAB = re.compile(r"^K(\d+),(\d+)$")


# ------------------------------------------------------------ references
def _corpus(args):
    if getattr(args, "corpus", None):
        path = Path(args.corpus)
        if not path.exists():
            raise UsageError(f"corpus file {path} does not exist")
        return read_corpus(path)
    return default_corpus()


def resolve_graph(ref: str, args) -> Graph:
    """``corpus:A+B``, a family name (C6, P4, K5, S3, K2,3) or a corpus file
    (``file`` for its first record, ``file:CODE`` for a named one)."""
    if ref.startswith("corpus:"):
        corpus = _corpus(args)
        codes = ref[len("corpus:"):].split("+")
        graphs = [corpus.get(c) for c in codes]
        return graphs[0] if len(graphs) == 1 else disjoint_union(graphs, codes)
    m = _KAB.match(ref)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    m = _FAMILY.match(ref)
    if m:
        n = int(m.group(2))
        return {"C": cycle_graph, "P": path_graph, "K": complete_graph, "S": star_graph}[m.group(1)](n)
    path, code = ref, ""
    if not Path(ref).exists() and ":" in ref:
        path, _, code = ref.rpartition(":")
    if not Path(path).exists():
        raise UsageError(f"graph reference {ref!r} is neither a corpus code, a family nor a file")
    corpus = parse_corpus(Path(path).read_text(encoding="utf-8"))
    if code:
        return corpus.get(code)
    if not corpus.graphs:
        raise UsageError(f"{path} holds no graph record")
    return next(iter(corpus.graphs.values()))


def resolve_labelling(ref: str, graph_ref: str, args) -> Labelling:
    """A labelling file, ``builtin:NAME`` for a bundled one, or ``corpus[:i]``
    for the i-th block stored after the graph's corpus record."""
    if not ref:
        raise UsageError("--labelling is required here")
    if ref.startswith("builtin:"):
        name = ref[len("builtin:"):]
        try:
            text = resources.files("gpwkit.data").joinpath(f"{name}.labelling").read_text(encoding="utf-8")
        except FileNotFoundError:
            raise UsageError(f"no bundled labelling {name!r}") from None
        return parse_labelling(text)
    if ref == "corpus" or ref.startswith("corpus:"):
        idx = int(ref.partition(":")[2] or 0)
        if not graph_ref.startswith("corpus:") or "+" in graph_ref:
            raise UsageError("'corpus' labellings need a single corpus:CODE graph")
        blocks = _corpus(args).labellings.get(graph_ref[len("corpus:"):], [])
        if idx >= len(blocks):
            raise UsageError(f"graph {graph_ref} has no labelling block #{idx}")
        return parse_labelling(blocks[idx])
    path = Path(ref)
    if not path.exists():
        raise UsageError(f"labelling file {path} does not exist")
    return parse_labelling(path.read_text(encoding="utf-8"))


def _params(args) -> tuple[int, int] | None:
    if args.k is None and args.d is None:
        return None
    return (1 if args.k is None else args.k, 1 if args.d is None else args.d)


def _out(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


# --------------------------------------------------------------- handlers
def cmd_corpus(args) -> int:
    corpus = read_corpus(args.path) if args.path else _corpus(args)
    if args.action == "validate":
        _out(args, f"ok graphs={len(corpus)} labellings={sum(len(v) for v in corpus.labellings.values())}")
    elif args.action == "list":
        rows = []
        for code, g in corpus.graphs.items():
            flags = [k for k, v in classify(g).flags().items() if v]
            rows.append(f"{code} p={g.p} q={g.q} name={g.name or '-'} {','.join(flags) or '-'}")
        _out(args, "\n".join(rows))
    else:
        if not args.code:
            raise UsageError("corpus show needs a CODE")
        _out(args, format_graph(corpus.get(args.code)))
    return 0


def cmd_label(args) -> int:
    g = resolve_graph(args.graph, args)
    if args.action == "verify":
        lab = resolve_labelling(args.labelling, args.graph, args)
        if args.kind:
            lab = lab.with_kind(args.kind, params=_params(args) or lab.params, flaw_budget=lab.flaw_budget)
        _out(args, verify(g, lab).to_text())
    elif args.action == "search":
        if not args.kind:
            raise UsageError("label search needs --kind")
        res = search(g, args.kind, _params(args), args.budget)
        _out(args, format_labelling(res.labelling) if res.found else res.status)
    elif args.action == "construct":
        lab = caterpillar_sweep(g) if args.method == "caterpillar" else construct_caterpillar_chain(g)
        _out(args, format_labelling(lab))
    else:
        if not args.target:
            raise UsageError("label transform needs --target")
        lab = resolve_labelling(args.labelling, args.graph, args)
        _out(args, format_labelling(transform(g, lab, args.target, _params(args))))
    return 0


def _need_labelling(args) -> None:
    if not args.labelling:
        raise UsageError("--labelling is required here")


def cmd_tbpaw(args) -> int:
    g = resolve_graph(args.graph, args)
    _need_labelling(args)
    lab = resolve_labelling(args.labelling, args.graph, args)
    algo = args.algo
    if algo.startswith("Vo"):
        paw = serialize_vo(build_value_matrix(g, lab, args.role), algo)
        lines = [paw.text]
    else:
        m = build_avev(g, lab)
        if algo == "rows":
            lines = [p.text for p in serialize_rows(m)]
            paw = None
        else:
            paw = serialize_o(m, algo, args.variant)
            lines = [paw.text]
        if args.matrix:
            lines = m.to_text().splitlines() + lines
    if args.trace and paw is not None:
        lines.append(paw.trace_line())
    _out(args, "\n".join(lines))
    return 0


def _read_theta(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"colouring file {p} does not exist")
    theta: dict = {}
    for raw in p.read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, val = line.partition("=")
        key = key.strip()
        m = re.match(r"^\(\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)$", key)
        theta[(m.group(1), m.group(2)) if m else key] = int(val)
    return theta


def cmd_group(args) -> int:
    g = resolve_graph(args.graph, args)
    _need_labelling(args)
    lab = resolve_labelling(args.labelling, args.graph, args)
    grp = build_group(g, lab, args.modulus)
    if args.action == "build":
        lines = [f"group n={grp.n}"]
        lines += [f"G{i} {p.text}" for i, p in enumerate(string_group_view(grp, args.algo), start=1)]
        lines += [f"axiom {k}={'ok' if v else 'fail'}" for k, v in grp.axiom_report().items()]
        _out(args, "\n".join(lines))
    elif args.action == "add":
        if not args.indices:
            raise UsageError("group add needs --indices I J K")
        i, j, k = args.indices
        _out(args, f"G{i} +[G{k}] G{j} = G{group_add(grp, i, j, k)}")
    elif args.action == "encrypt":
        if not args.host:
            raise UsageError("group encrypt needs --host")
        host = resolve_graph(args.host, args)
        net = encrypt_graph(host, grp, args.mode, zero=args.zero)
        _out(args, net.to_text())
    else:
        if not args.host:
            raise UsageError("group verify-coloring needs --host")
        host = resolve_graph(args.host, args)
        if args.theta:
            theta = _read_theta(args.theta)
        else:
            theta = greedy_total_gg_coloring(host, grp, args.strengthen)
        _out(args, verify_gg_coloring(host, grp, theta, GgColoringKind(args.gg_kind)).to_text())
    return 0


def _active_edge(text: str | None):
    if not text:
        return None
    a, _, b = text.partition(",")
    if not b:
        raise UsageError("--active-edge takes 'a,b'")
    return (a.strip(), b.strip())


def cmd_grow(args) -> int:
    seed = resolve_graph(args.graph, args)
    spec = GrowthSpec(args.algo, seed, args.steps, args.active, _active_edge(args.active_edge),
                      args.rng_seed, args.orientation)
    trace = grow(spec)
    lines = [trace.to_text()]
    if args.stats:
        lo, _, hi = args.stats.partition(",")
        st = degree_stats(trace.final.graph, (int(lo), int(hi)) if hi else None)
        lines.append(st.table())
        if st.alpha is not None:
            lines.append(f"fit range={lo},{hi} alpha={st.alpha:.6f} gamma={st.gamma:.6f} "
                         f"residual={st.residual:.6f}")
    _out(args, "\n".join(lines))
    return 0


def cmd_directed(args) -> int:
    g = resolve_graph(args.graph, args)
    _need_labelling(args)
    lab = resolve_labelling(args.labelling, args.graph, args)
    if args.action == "orient":
        dg, dl = orient_from_sogl(g, lab)
        arcs = ",".join(f"({a}->{b})" for a, b in dg.arcs)
        _out(args, f"arcs: {arcs}\n{verify_directed(dg, dl).to_text()}")
        return 0
    if not args.kind:
        raise UsageError(f"directed {args.action} needs --kind")
    dg = DirectedGraph.from_graph(g)
    dl = DirectedLabelling(args.kind, lab.vertex_values, None, args.uniform)
    if args.action == "verify":
        _out(args, verify_directed(dg, dl).to_text())
    else:
        m = directed_matrix(dg, dl)
        lines = m.to_text().splitlines() if args.matrix else []
        lines.append(directed_serialize(m, args.algo, args.variant).text)
        _out(args, "\n".join(lines))
    return 0


def _kv(text: str) -> dict[str, str]:
    out = {}
    for part in text.split(";"):
        if part.strip():
            k, _, v = part.partition("=")
            out[k.strip()] = v.strip()
    return out


def cmd_count(args) -> int:
    lines = []
    if args.tbpaw:
        q = int(args.tbpaw.removeprefix("q="))
        mats, per = tbpaw_count(q)
        lines.append(f"matrices={mats} per_matrix={per}")
    if args.zero_perm is not None:
        lines.append(f"zero_permutations={zero_permutation_count(args.zero_perm)}")
    if args.strong_rank:
        value, _, alpha = args.strong_rank.partition(",")
        lines.append(f"bits={strong_rank(int(value), int(alpha)):.6f}")
    if args.lower_bound:
        kv = _kv(args.lower_bound.replace(",", ";"))
        try:
            n, k, m = int(kv["n"]), int(kv["k"]), int(kv["m"])
            c = [int(x) for x in kv["c"].split("/")]
        except (KeyError, ValueError):
            raise UsageError("--lower-bound takes n=..,k=..,m=..,c=a/b/..") from None
        lines.append(f"lower_bound={encryption_lower_bound(n, k, m, c[0] if len(c) == 1 else c)}")
    if args.spanning_trees:
        g = resolve_graph(args.spanning_trees, args)
        lines.append(f"spanning_trees={spanning_tree_count(g)}")
    if not lines:
        raise UsageError("count needs at least one of --tbpaw, --zero-perm, --strong-rank, "
                         "--lower-bound, --spanning-trees")
    _out(args, "\n".join(lines))
    return 0


# ---------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gpwkit", description="Graphical passwords from labelled graphs.")
    p.add_argument("--version", action="version", version=f"gpwkit {__version__}")
    p.add_argument("--corpus", help=f"corpus file (default: ${ENV_CORPUS} or the bundled seed)")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, labelling=True):
        sp.add_argument("--graph", required=True, help="corpus:CODE[+CODE], C6/P4/K5/S3/K2,3, or a file")
        if labelling:
            sp.add_argument("--labelling", help="file, builtin:NAME, or corpus[:i]")

    c = sub.add_parser("corpus", help="validate or list a corpus")
    c.add_argument("action", choices=["validate", "list", "show"])
    c.add_argument("path", nargs="?")
    c.add_argument("--code")
    c.set_defaults(func=cmd_corpus)

    lab = sub.add_parser("label", help="verify, search, construct or transform labellings")
    lab.add_argument("action", choices=["verify", "search", "construct", "transform"])
    common(lab)
    lab.add_argument("--kind")
    lab.add_argument("--target")
    lab.add_argument("--k", type=int)
    lab.add_argument("--d", type=int)
    lab.add_argument("--budget", type=int)
    lab.add_argument("--method", choices=["caterpillar", "chain"], default="caterpillar")
    lab.set_defaults(func=cmd_label)

    t = sub.add_parser("tbpaw", help="build a matrix and serialise it")
    common(t)
    t.add_argument("--algo", default="O1", choices=["O1", "O2", "O3", "O4", "rows", "Vo1", "Vo2", "Vo3", "Vo4"])
    t.add_argument("--variant", default="plain", choices=["plain", "reciprocal", "inverse"])
    t.add_argument("--role", default="evalue", choices=["evalue", "vevalue"])
    t.add_argument("--matrix", action="store_true", help="print the matrix first")
    t.add_argument("--trace", action="store_true")
    t.set_defaults(func=cmd_tbpaw)

    gr = sub.add_parser("group", help="every-zero graphic groups")
    gr.add_argument("action", choices=["build", "add", "encrypt", "verify-coloring"])
    common(gr)
    gr.add_argument("--indices", nargs=3, type=int, metavar=("I", "J", "K"))
    gr.add_argument("--modulus", type=int)
    gr.add_argument("--algo", default="O4", choices=["O1", "O2", "O3", "O4"])
    gr.add_argument("--host")
    gr.add_argument("--mode", default="tree_distinct_adjacent", choices=["tree_distinct_adjacent", "fixed_zero"])
    gr.add_argument("--zero", type=int)
    gr.add_argument("--theta", help="file of 'v=i' and '(a,b)=j' lines; default: greedy colouring")
    gr.add_argument("--gg-kind", default="proper_total", choices=[k.value for k in GgColoringKind])
    gr.add_argument("--strengthen", default="none", choices=["none", "neighbor_sets", "index_sets"])
    gr.set_defaults(func=cmd_group)

    gw = sub.add_parser("grow", help="grow a self-similar network")
    common(gw, labelling=False)
    gw.add_argument("--algo", required=True, choices=list(ALGORITHMS))
    gw.add_argument("--steps", type=int, default=1)
    gw.add_argument("--active")
    gw.add_argument("--active-edge")
    gw.add_argument("--rng-seed", type=int)
    gw.add_argument("--orientation", default="lex", choices=["lex", "reverse"])
    gw.add_argument("--stats", help="'kmin,kmax' fit range, or '' for the histogram only", nargs="?", const=",")
    gw.set_defaults(func=cmd_grow)

    d = sub.add_parser("directed", help="directed labellings and signed matrices")
    d.add_argument("action", choices=["orient", "verify", "serialize"])
    common(d)
    d.add_argument("--kind", choices=list(DIRECTED_KINDS))
    d.add_argument("--uniform", choices=["+", "-"])
    d.add_argument("--algo", default="O1", choices=["O1", "O2", "O3", "O4"])
    d.add_argument("--variant", default="plain", choices=["plain", "reciprocal", "inverse"])
    d.add_argument("--matrix", action="store_true")
    d.set_defaults(func=cmd_directed)

    n = sub.add_parser("count", help="counting formulas")
    n.add_argument("--tbpaw", help="q=N")
    n.add_argument("--zero-perm", type=int)
    n.add_argument("--strong-rank", help="VALUE,ALPHABET")
    n.add_argument("--lower-bound", help="n=..,k=..,m=..,c=a/b/..")
    n.add_argument("--spanning-trees", help="graph reference")
    n.set_defaults(func=cmd_count)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line front door.

Subcommands: ``algebra info``, ``strings``, ``hom``, ``ext``, ``syzygy``,
``arquiver``, ``classify``.  Output is a plain table by default and
machine-readable with ``--format json|csv|dot``.  Identical flags and seed
produce byte-identical output.

Exit codes: 0 success, 2 bad flags, 3 computation error, 4 verification
failure under ``--verify``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import arquiver, deformation, homology, strings
from .errors import StrcatError
from .quiver_core import (
    DEFAULT_PRIME,
    Algebra,
    build_family,
    indecomposable_projective,
    load_algebra_spec,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_COMPUTE = 3
EXIT_VERIFY = 4


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--family", choices=["ae1", "ae2", "ae3", "file"],
                        required=True)
    parser.add_argument("--m", type=int, default=None,
                        help="family parameter (ae1/ae2: m >= 1, ae3: m >= 2)")
    parser.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    parser.add_argument("--seed", type=int, default=None,
                        help="randomization seed; STRCAT_SEED is the fallback")
    parser.add_argument("--format", choices=["table", "json", "csv", "dot"],
                        default="table")
    parser.add_argument("--spec", default=None,
                        help="algebra spec JSON (with --family file)")
    parser.add_argument("--length-cap", type=int, default=None)
    parser.add_argument("--out", default=None, help="output path; default stdout")
    parser.add_argument("--verify", action="store_true",
                        help="re-check the classification table and AR shape; "
                             "exit 4 on disagreement")
    parser.add_argument("--string", action="store_true",
                        help="treat module arguments as raw string literals")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strcat",
        description="Exact computations in stable module categories of the "
                    "built-in symmetric string algebra families.")
    sub = parser.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="algebra-level reports")
    alg_sub = alg.add_subparsers(dest="subcommand", required=True)
    info = alg_sub.add_parser("info", help="dimension, basis, radical series")
    _add_common(info)

    s = sub.add_parser("strings", help="list the strings (one per class)")
    _add_common(s)

    h = sub.add_parser("hom", help="dim Hom between two modules")
    _add_common(h)
    h.add_argument("source")
    h.add_argument("target")

    e = sub.add_parser("ext", help="dim Ext^1 between two modules")
    _add_common(e)
    e.add_argument("source")
    e.add_argument("target")

    sy = sub.add_parser("syzygy", help="iterated syzygy of a module")
    _add_common(sy)
    sy.add_argument("module")
    sy.add_argument("--n", type=int, default=1)

    aq = sub.add_parser("arquiver", help="stable Auslander-Reiten quiver")
    _add_common(aq)

    cl = sub.add_parser("classify", help="deformation ring classification")
    _add_common(cl)
    return parser


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("STRCAT_SEED")
    return int(env) if env else 0


def _build_algebra(args, parser) -> Algebra:
    if args.family == "file":
        if not args.spec:
            parser.error("--family file needs --spec")
        return load_algebra_spec(args.spec)
    if args.m is None:
        parser.error(f"--family {args.family} needs --m")
    low = 2 if args.family == "ae3" else 1
    if args.m < low:
        parser.error(f"--family {args.family} needs --m >= {low}")
    return build_family(args.family, args.m, args.prime)


def _names(args, algebra) -> dict:
    if args.family == "file":
        return {}
    pairs = strings.family_node_names(args.family, args.m, algebra.quiver)
    return {w: n for n, w in pairs}


def _resolve_module(args, algebra, text: str):
    if args.string or args.family == "file":
        word = strings.parse_string_literal(text, algebra.quiver)
    else:
        word = strings.named_string(args.family, args.m, text)
    return strings.canonical(word, algebra.quiver)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
             for row in cells]
    return "\n".join(lines) + "\n"


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv_text(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _radical_series(rep: homology.Representation) -> list[dict[int, int]]:
    """Composition multiplicities of each radical layer, top first."""
    alg = rep.algebra
    p = alg.p
    from . import linalg

    layers = []
    rows = {v: np.eye(rep.dims[v], dtype=np.int64) for v in alg.quiver.vertices}
    while any(r.shape[0] for r in rows.values()):
        nxt = {}
        for v in alg.quiver.vertices:
            moved = [linalg.mat_mul(rows[a.source], rep.mats[a.name], p)
                     for a in alg.quiver.arrows_into(v)
                     if rows[a.source].shape[0]]
            nxt[v] = linalg.row_space(np.vstack(moved), p) if moved else \
                np.zeros((0, rep.dims[v]), dtype=np.int64)
        layer = {v: rows[v].shape[0] - nxt[v].shape[0]
                 for v in alg.quiver.vertices}
        layers.append(layer)
        rows = nxt
    return layers


def cmd_algebra_info(args, parser) -> int:
    algebra = _build_algebra(args, parser)
    projectives = {}
    for v in algebra.quiver.vertices:
        P = indecomposable_projective(algebra, v)
        series = _radical_series(P)
        projectives[str(v)] = {
            "dim": P.total_dim,
            "dim_vector": list(P.dim_vector()),
            "radical_series": [
                sorted(f"S{v2}" for v2, c in layer.items() for _ in range(c))
                for layer in series],
        }
    payload = {
        "family": args.family,
        "m": args.m,
        "prime": algebra.p,
        "dim": algebra.dim,
        "vertices": list(algebra.quiver.vertices),
        "arrows": [[a.name, a.source, a.target] for a in algebra.quiver.arrows],
        "basis": [str(b) for b in algebra.basis],
        "projectives": projectives,
    }
    if args.format == "json":
        _emit(args, _json_text(payload))
    elif args.format == "csv":
        rows = [[v, info["dim"], " | ".join(",".join(layer) for layer in
                                            info["radical_series"])]
                for v, info in projectives.items()]
        _emit(args, _csv_text(rows, ["vertex", "proj_dim", "radical_series"]))
    elif args.format == "dot":
        parser.error("algebra info has no dot output")
    else:
        lines = [f"dim: {algebra.dim}",
                 f"basis: {', '.join(str(b) for b in algebra.basis)}"]
        for v, info in projectives.items():
            layers = " | ".join(",".join(layer) for layer in info["radical_series"])
            lines.append(f"P({v}): dim {info['dim']}, radical series {layers}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_strings(args, parser) -> int:
    algebra = _build_algebra(args, parser)
    words = strings.enumerate_strings(algebra, args.length_cap)
    names = _names(args, algebra)
    rows = []
    for w in words:
        rep = strings.string_module(algebra, w)
        rows.append([names.get(w, ""), w.literal(), w.length,
                     "(" + ",".join(map(str, rep.dim_vector())) + ")"])
    header = ["name", "string", "length", "dim_vector"]
    if args.format == "json":
        payload = [{"name": r[0] or None, "string": r[1], "length": r[2],
                    "dim_vector": r[3]} for r in rows]
        _emit(args, _json_text(payload))
    elif args.format == "csv":
        _emit(args, _csv_text(rows, header))
    elif args.format == "dot":
        parser.error("strings has no dot output")
    else:
        _emit(args, _table(rows, header))
    return EXIT_OK


def _pair_command(args, parser, compute, label: str) -> int:
    algebra = _build_algebra(args, parser)
    ws = _resolve_module(args, algebra, args.source)
    wt = _resolve_module(args, algebra, args.target)
    M = strings.string_module(algebra, ws)
    N = strings.string_module(algebra, wt)
    dim = compute(M, N)
    payload = {"source": args.source, "target": args.target, "dim": dim}
    if args.format == "json":
        _emit(args, _json_text(payload))
    elif args.format == "csv":
        _emit(args, _csv_text([[args.source, args.target, dim]],
                              ["source", "target", "dim"]))
    elif args.format == "dot":
        parser.error(f"{label} has no dot output")
    else:
        _emit(args, f"dim {label}({args.source}, {args.target}) = {dim}\n")
    return EXIT_OK


def cmd_syzygy(args, parser) -> int:
    algebra = _build_algebra(args, parser)
    seed = _resolve_seed(args)
    w = _resolve_module(args, algebra, args.module)
    rep = homology.omega_power(strings.string_module(algebra, w), args.n)
    iso_name = None
    if not rep.is_zero():
        nodes = strings.enumerate_strings(algebra, args.length_cap)
        reps = arquiver.node_modules(algebra, nodes)
        idx = arquiver.match_node(algebra, rep, nodes, reps, seed=seed)
        names = _names(args, algebra)
        iso_name = names.get(nodes[idx], nodes[idx].literal())
    payload = {"module": args.module, "n": args.n,
               "dim_vector": list(rep.dim_vector()),
               "isomorphic_to": iso_name}
    if args.format == "json":
        _emit(args, _json_text(payload))
    elif args.format == "csv":
        _emit(args, _csv_text([[args.module, args.n,
                                "(" + ",".join(map(str, rep.dim_vector())) + ")",
                                iso_name or ""]],
                              ["module", "n", "dim_vector", "isomorphic_to"]))
    elif args.format == "dot":
        parser.error("syzygy has no dot output")
    else:
        _emit(args, f"Omega^{args.n}({args.module}) has dimension vector "
                    f"{rep.dim_vector()}"
                    + (f", isomorphic to {iso_name}\n" if iso_name else "\n"))
    return EXIT_OK


def cmd_arquiver(args, parser) -> int:
    algebra = _build_algebra(args, parser)
    seed = _resolve_seed(args)
    q = arquiver.build_ar_quiver(algebra, args.length_cap, seed=seed)
    names = _names(args, algebra)
    if args.format == "dot":
        _emit(args, arquiver.to_dot(q, names))
    else:
        def label(i):
            return names.get(q.nodes[i], q.nodes[i].literal())
        rows = sorted([label(s), label(t), kind] for s, t, kind in q.arrows)
        tau_rows = sorted([label(i), label(q.tau[i])] for i in range(q.node_count))
        if args.format == "json":
            payload = {"nodes": sorted(label(i) for i in range(q.node_count)),
                       "arrows": rows,
                       "tau": tau_rows}
            _emit(args, _json_text(payload))
        elif args.format == "csv":
            _emit(args, _csv_text(rows, ["source", "target", "kind"]))
        else:
            text = _table(rows, ["source", "target", "kind"])
            text += "tau: " + ", ".join(f"{a}->{b}" for a, b in tau_rows) + "\n"
            _emit(args, text)
    return EXIT_OK


def cmd_classify(args, parser) -> int:
    if args.family == "file":
        parser.error("classify needs a built-in family")
    algebra = _build_algebra(args, parser)
    seed = _resolve_seed(args)
    reports = deformation.classify(algebra, args.family, args.m, seed=seed)
    if args.format == "json":
        _emit(args, _json_text(deformation.reports_to_json(reports)))
    elif args.format == "csv":
        rows = [deformation.report_csv_row(r) for r in reports]
        _emit(args, _csv_text(rows, deformation.CSV_COLUMNS))
    elif args.format == "dot":
        parser.error("classify has no dot output")
    else:
        rows = [[r.module, r.string, r.stable_endo_dim, r.ext1_dim, str(r.udr)]
                for r in reports]
        _emit(args, _table(rows, ["module", "string", "stable_endo", "ext1", "udr"]))
    return EXIT_OK


def run_verification(args, parser) -> list[str]:
    """Agreement checks behind --verify: string counts, the classification
    table, and the component shape.  Returns the list of problems."""
    if args.family == "file":
        parser.error("--verify needs a built-in family")
    algebra = _build_algebra(args, parser)
    seed = _resolve_seed(args)
    problems: list[str] = []
    expected_nodes = {"ae1": args.m, "ae2": 4 * args.m, "ae3": 4 * args.m}
    words = strings.enumerate_strings(algebra, args.length_cap)
    if len(words) != expected_nodes[args.family]:
        problems.append(f"string count {len(words)} != "
                        f"{expected_nodes[args.family]}")
    reports = deformation.classify(algebra, args.family, args.m, seed=seed)
    problems += deformation.verify_classification(reports, args.family, args.m)
    q = arquiver.build_ar_quiver(algebra, args.length_cap, seed=seed)
    if q.node_count != expected_nodes[args.family]:
        problems.append(f"component node count {q.node_count} != "
                        f"{expected_nodes[args.family]}")
    if args.family == "ae1":
        if any(q.tau[i] != i for i in range(q.node_count)):
            problems.append("translate is not the identity")
    else:
        for i in range(q.node_count):
            if q.tau[i] == i:
                problems.append(f"translate fixes {q.nodes[i]}")
            if q.tau[q.tau[i]] != i:
                problems.append("translate is not an involution")
    return problems


COMMANDS = {
    "algebra": cmd_algebra_info,
    "strings": cmd_strings,
    "hom": lambda a, p: _pair_command(a, p, homology.hom_dim, "Hom"),
    "ext": lambda a, p: _pair_command(a, p, homology.ext1_dim, "Ext1"),
    "syzygy": cmd_syzygy,
    "arquiver": cmd_arquiver,
    "classify": cmd_classify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        handler = COMMANDS.get(args.command)
        if handler is None:
            parser.error(f"unknown command {args.command!r}")
        code = handler(args, parser)
        if code == EXIT_OK and args.verify:
            problems = run_verification(args, parser)
            if problems:
                sys.stderr.write("\n".join(problems) + "\n")
                return EXIT_VERIFY
        return code
    except StrcatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit status: 0 on success, 1 when a verification finds a violation (or
``--fail-on-negative`` sees a negative curvature), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .assignment import lly_equal_degree
from .curvature import edge_curvatures, idleness_function, kappa_alpha, kappa_lly
from .graph import (
    GraphError,
    format_edge_list,
    generate_sharpness,
    generate_standard,
    random_min_degree_graph,
    read_edge_list,
)
from .theorems import (
    MODES,
    check_degree_threshold,
    check_diameter_lemma,
    check_proof_bound,
    check_sharpness,
    sweep_exhaustive,
    sweep_random,
)
from .transport import format_rational, parse_rational


class UsageError(Exception):
    pass


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _threads(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("--threads must be >= 1")
    return value


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exactricci",
        description="Exact Ollivier-Ricci and Lin-Lu-Yau curvature on graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("edge", help="curvature of one edge")
    p.add_argument("--graph", required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--alpha", type=_rational, help="idleness p/q; default is LLY curvature")
    p.add_argument("--path", choices=("auto", "transport", "assignment"), default="auto")
    p.add_argument("--verify-mode", action="store_true",
                   help="cross-check the assignment formula against transport")
    p.add_argument("--fail-on-negative", action="store_true")

    p = sub.add_parser("all", help="curvature of every edge")
    p.add_argument("--graph", required=True)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--path", choices=("auto", "transport", "assignment"), default="auto")
    p.add_argument("--threads", type=_threads)
    p.add_argument("--fail-on-negative", action="store_true")

    p = sub.add_parser("idleness", help="breakpoints of alpha -> kappa_alpha")
    p.add_argument("--graph", required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--out")
    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    gen = p.add_subparsers(dest="kind", required=True)
    gen.add_parser("sharpness", parents=[out]).add_argument("--l", type=int, required=True)
    for kind in ("cycle", "complete", "path"):
        gen.add_parser(kind, parents=[out]).add_argument("--n", type=int, required=True)
    gen.add_parser("hypercube", parents=[out]).add_argument("--d", type=int, required=True)
    g = gen.add_parser("random", parents=[out])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--delta", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)

    p = sub.add_parser("verify", help="check one theorem instance")
    ver = p.add_subparsers(dest="theorem", required=True)
    for name in ("threshold", "diameter", "proof-bound"):
        ver.add_parser(name).add_argument("--graph", required=True)
    ver.add_parser("sharpness").add_argument("--l", type=int, required=True)

    p = sub.add_parser("sweep", help="random or exhaustive falsification sweep")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=MODES + ("proof-bound",), default="threshold")
    p.add_argument("--threads", type=_threads)
    p.add_argument("--exhaustive", action="store_true",
                   help="enumerate all labelled graphs for each n in range")
    p.add_argument("--allow-large", action="store_true", help="permit n = 7 exhaustively")
    return parser


def _cmd_edge(args) -> int:
    G = read_edge_list(args.graph)
    u, v = args.u, args.v
    if args.alpha is not None:
        if args.path == "assignment":
            raise UsageError("--path assignment only computes LLY curvature")
        kappa = kappa_alpha(G, u, v, args.alpha).kappa
        print(f"kappa_alpha {u} {v} {format_rational(args.alpha)} = {format_rational(kappa)}")
    else:
        kappa = kappa_lly(G, u, v, method=args.path).kappa
        print(f"kappa {u} {v} = {format_rational(kappa)}")
        if args.verify_mode and G.degree(u) == G.degree(v):
            other = (kappa_lly(G, u, v, method="transport").kappa
                     if args.path != "transport" else lly_equal_degree(G, u, v).kappa)
            if other != kappa:
                print(f"error: routes disagree ({format_rational(other)})", file=sys.stderr)
                return 1
    return 1 if args.fail_on_negative and kappa < 0 else 0


def _cmd_all(args) -> int:
    G = read_edge_list(args.graph)
    if args.alpha is not None and args.path == "assignment":
        raise UsageError("--path assignment only computes LLY curvature")
    results = edge_curvatures(G, alpha=args.alpha, method=args.path, workers=args.threads)
    lines = []
    for c in results:
        if args.format == "json":
            lines.append(json.dumps(c.to_dict()))
        else:
            lines.append(f"{c.x}\t{c.y}\t{format_rational(c.kappa)}")
    if lines:
        print("\n".join(lines))
    negative = any(c.kappa < 0 for c in results)
    return 1 if args.fail_on_negative and negative else 0


def _cmd_idleness(args) -> int:
    G = read_edge_list(args.graph)
    fn = idleness_function(G, args.u, args.v)
    _emit(fn.to_csv() if args.format == "csv" else fn.to_json() + "\n", args.out)
    return 0


def _cmd_gen(args) -> int:
    comment = None
    if args.kind == "sharpness":
        s = generate_sharpness(args.l)
        G = s.graph
        comment = f"sharpness l={args.l}: x={s.x} y={s.y} v={s.v}"
    elif args.kind == "hypercube":
        G = generate_standard("hypercube", args.d)
    elif args.kind == "random":
        G = random_min_degree_graph(args.n, args.delta, args.seed)
        comment = f"random n={args.n} delta>={args.delta} seed={args.seed}"
    else:
        G = generate_standard(args.kind, args.n)
    _emit(format_edge_list(G, comment), args.out)
    return 0


def _cmd_verify(args) -> int:
    if args.theorem == "sharpness":
        report = check_sharpness(args.l)
    else:
        G = read_edge_list(args.graph)
        check = {"threshold": check_degree_threshold, "diameter": check_diameter_lemma,
                 "proof-bound": check_proof_bound}[args.theorem]
        report = check(G)
    print(report.to_json())
    return 1 if report.violation else 0


def _cmd_sweep(args) -> int:
    mode = args.mode.replace("-", "_")
    if args.exhaustive:
        reports = []
        for n in range(args.n_min, args.n_max + 1):
            reports += sweep_exhaustive(n, mode, allow_large=args.allow_large,
                                        workers=args.threads)
    else:
        reports = sweep_random(args.n_min, args.n_max, args.samples, args.seed, mode,
                               workers=args.threads)
    for report in reports:
        print(report.to_json())
    violations = sum(r.violation for r in reports)
    print(f"{len(reports)} reports, {violations} violations", file=sys.stderr)
    return 1 if violations else 0


COMMANDS = {"edge": _cmd_edge, "all": _cmd_all, "idleness": _cmd_idleness,
            "gen": _cmd_gen, "verify": _cmd_verify, "sweep": _cmd_sweep}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (OSError, ValueError, GraphError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())

"""Command-line entry point.

Exit status: 0 on success, 1 on a domain error (message on stderr), 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Sequence

from . import bounds
from .channel import correction_guarantee_trials, exhaustive_adversary
from .errors import SubspaceCodecError
from .formats import format_code, parse_field, read_code, read_matrix
from .gabidulin import (
    GabidulinParams,
    enumerate_code,
    min_injection_distance,
    puncture,
)
from .subspace import (
    delta_rho,
    injection_distance,
    subspace_distance,
    subspace_from_rows,
)

SEED_ENV = "SUBSPACE_CODEC_SEED"


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="subspace-codec",
                                 description="Subspace codes under the injection distance.")
    ap.add_argument("--field", default="gf(2)", help="field for matrix files without a gf= header")
    ap.add_argument("--seed", type=int, default=None, help=f"default seed (env {SEED_ENV}, else 0)")
    ap.add_argument("--output", "-o", default=None, help="write the main output here instead of stdout")
    ap.add_argument("--format", choices=("csv", "json", "text"), default=None)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", help="distance between two row spaces")
    p.add_argument("--metric", choices=("ds", "di", "delta"), required=True)
    p.add_argument("--rho", type=int, default=0)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = sub.add_parser("bounds", help="Singleton-type bound values")
    bsub = p.add_subparsers(dest="bound", required=True)
    s = bsub.add_parser("singleton")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--D", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    g = bsub.add_parser("gabidulin")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--loose", action="store_true", help="1 + 4k q^(mk) instead of 1 + k[m+k, m]_q")

    p = sub.add_parser("gabidulin", help="lifted Gabidulin code type, enumeration, min distance")
    for name in ("q", "m", "l", "k"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--enumerate", metavar="OUT", default=None, help="write the code file here")
    p.add_argument("--min-distance", action="store_true")
    p.add_argument("--cap", type=int, default=1 << 16, help="maximum number of codewords")

    p = sub.add_parser("puncture", help="puncture a code file once")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--seed", dest="seed_sub", type=int, default=None)
    p.add_argument("--hyperplane", default=None, help="matrix file spanning W' (default x_N = 0)")

    p = sub.add_parser("figure1", help="rate table for the GF(16) sequence")
    p.add_argument("--csv", default=None)
    p.add_argument("--svg", default=None)
    p.add_argument("--png", default=None)

    p = sub.add_parser("simulate", help="operator-channel decoding trials")
    for name in ("q", "m", "l", "k", "t", "rho"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", dest="seed_sub", type=int, default=None)
    p.add_argument("--n-rx", type=int, default=None, help="receiver packet count (default l)")
    p.add_argument("--exhaustive-adversary", action="store_true")

    p = sub.add_parser("verify", help="run the property suite")
    p.add_argument("--full", action="store_true", help="complete grids (slow)")
    return ap


def _emit(text: str, args) -> None:
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _seed(args) -> int:
    if getattr(args, "seed_sub", None) is not None:
        return args.seed_sub
    return args.seed if args.seed is not None else _default_seed()


def cmd_distance(args) -> int:
    field = parse_field(args.field)
    U = subspace_from_rows(read_matrix(args.left, field))
    V = subspace_from_rows(read_matrix(args.right, field))
    if args.metric == "ds":
        value = subspace_distance(U, V)
    elif args.metric == "di":
        value = injection_distance(U, V)
    else:
        value = delta_rho(U, V, args.rho)
    _emit(f"{value}\n", args)
    return 0


def cmd_bounds(args) -> int:
    if args.bound == "singleton":
        value = bounds.singleton_bound(args.N, args.l, args.D, args.q)
    elif args.loose:
        value = bounds.gabidulin_bound_loose(args.k, args.m, args.q)
    else:
        value = bounds.gabidulin_bound_exact(args.k, args.m, args.q)
    _emit(f"{value}\n", args)
    return 0


def cmd_gabidulin(args) -> int:
    params = GabidulinParams(args.q, args.m, args.l, args.k)
    t = params.code_type
    lines = [f"[{t.N}, {t.l}, {t.logq_size}, {t.D}]"]
    if args.enumerate or args.min_distance:
        code = enumerate_code(params, args.cap)
        if args.enumerate:
            Path(args.enumerate).write_text(format_code(code), encoding="utf-8")
        if args.min_distance:
            lines.append(str(min_injection_distance(code)))
    _emit("\n".join(lines) + "\n", args)
    return 0


def cmd_puncture(args) -> int:
    code = read_code(args.infile)
    W = None
    if args.hyperplane:
        W = subspace_from_rows(read_matrix(args.hyperplane, code.field))
    _emit(format_code(puncture(code, W, seed=_seed(args))), args)
    return 0


def cmd_figure1(args) -> int:
    rows = bounds.figure1_table()
    if args.format == "json":
        text = json.dumps([asdict(r) for r in rows], indent=1) + "\n"
    else:
        text = bounds.table_to_csv(rows)
    if args.csv:
        Path(args.csv).write_text(bounds.table_to_csv(rows), encoding="utf-8")
    for path in (args.svg, args.png):
        if path:
            from .plotting import plot_figure1
            plot_figure1(rows, path)
    if not args.csv or args.output or args.format == "json":
        _emit(text, args)
    return 0


def cmd_simulate(args) -> int:
    params = GabidulinParams(args.q, args.m, args.l, args.k)
    if args.exhaustive_adversary:
        report, _ = exhaustive_adversary(enumerate_code(params), args.t, args.rho, n_rx=args.n_rx)
    else:
        report = correction_guarantee_trials(params, args.t, args.rho, args.trials,
                                             seed=_seed(args), n_rx=args.n_rx)
    if args.format == "text":
        text = " ".join(f"{k}={v}" for k, v in asdict(report).items()) + "\n"
    else:
        text = report.to_json() + "\n"
    _emit(text, args)
    return 0


def cmd_verify(args) -> int:
    from .verify import run_all
    results = run_all(full=args.full)
    _emit("".join(r.line() + "\n" for r in results), args)
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "distance": cmd_distance,
    "bounds": cmd_bounds,
    "gabidulin": cmd_gabidulin,
    "puncture": cmd_puncture,
    "figure1": cmd_figure1,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except SubspaceCodecError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())

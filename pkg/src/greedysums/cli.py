"""Command-line front end.

    greedysums norm --space xs --vec "16:1,17:1,18:1,19:1"
    greedysums greedy --vec "1:3,2:1,3:2" --m 2
    greedysums check residual --space xiso --lambda 3 --vec "1:-4/5,2:1,3:1/2" --m 1 --family AG2
    greedysums check sweep --flavor max_conservative --lambda 2 --N 14
    greedysums experiment iso-threshold --lambda 3 --trials 100000 --seed 1

Exit status: 0 when every assertion passes, 1 when a witness row is
printed, 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import experiments as ex
from .config import RunConfig, default_config_text
from .core import format_index_set, format_scalar, index_set, parse_vector
from .errors import ConstraintError, DomainError, InsufficientLevelsError, OracleBudgetError, TieExplosionError
from .props import (
    FAMILIES,
    FLAVORS,
    qg_constants,
    reports_to_csv,
    residual_ratio,
    set_pair_ratio,
    set_pair_sweep,
    slc2_instance,
)
from .spaces import SpaceSpec, norm
from .tga import greedy_sets, lambda_order, residual

EXIT_OK, EXIT_WITNESS, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple:
    text = text.strip().strip("{}")
    if not text:
        return ()
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return index_set(out)


def _signs(text: Optional[str]) -> Optional[dict]:
    if not text:
        return None
    out = {}
    for chunk in text.split(","):
        n, s = chunk.split(":")
        out[int(n)] = int(s)
    return out


def _fractions(text: str) -> List[Fraction]:
    return [Fraction(t) for t in text.replace(",", " ").split()]


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out", default=None, help="write output here instead of stdout")


def _add_space(p: argparse.ArgumentParser) -> None:
    p.add_argument("--space", default=None, help="xpg | xw | xiso | xs (default: from config)")
    p.add_argument("--space-lambda", default=None, help="lambda of the xiso space (defaults to --lambda)")
    p.add_argument("--config", default=None, help="INI config; default $GREEDYSUMS_CONFIG or the shipped preset")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="greedysums", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("norm", help="evaluate the norm of a vector literal")
    _add_space(p)
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--vec", required=True, help='e.g. "1:-4/5,2:1"')
    p.add_argument("--oracle", action="store_true", help="also evaluate by brute force")

    p = sub.add_parser("greedy", help="list greedy sets of order ceil(lambda m) and residuals")
    _add_space(p)
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--vec", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--cap", type=int, default=64)

    p = sub.add_parser("check", help="one property instance or an exhaustive family sweep")
    p.add_argument("kind", choices=("residual", "pair", "sweep", "slc2", "qg"))
    _add_space(p)
    _add_output(p)
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--vec", action="append", default=[])
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--family", choices=FAMILIES, default="AG2")
    p.add_argument("--flavor", choices=FLAVORS, default="democratic")
    p.add_argument("--A", dest="A", default="")
    p.add_argument("--B", dest="B", default="")
    p.add_argument("--eps", default=None, help='signs on A, e.g. "4:-1,5:1"')
    p.add_argument("--delta", default=None)
    p.add_argument("--N", type=int, default=10)
    p.add_argument("--bound", default=None, help="report a witness when the ratio exceeds this")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("experiment", help="run a named experiment")
    p.add_argument("name", choices=sorted(ex.EXPERIMENTS))
    _add_space(p)
    _add_output(p)
    p.add_argument("--lambda", dest="lam", action="append", default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--N", dest="Ns", action="append", type=int, default=None)
    p.add_argument("--j", dest="js", action="append", type=int, default=None)
    p.add_argument("--sweep-n", type=int, default=14)
    return parser


def _run_config(args) -> RunConfig:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = default_config_text()
    return RunConfig.loads(text)


def _space(args, cfg: RunConfig) -> SpaceSpec:
    kind = args.space
    if kind is None:
        return cfg.space
    kind = kind.lower()
    if kind not in SpaceSpec.KINDS:
        raise UsageError(f"unknown space {args.space!r}; choose from {', '.join(SpaceSpec.KINDS)}")
    if kind == "xpg":
        if cfg.space.kind != "xpg":
            raise UsageError("xpg needs an xpg [space] section in the config")
        return cfg.space
    if kind == "xiso":
        lam = args.space_lambda or getattr(args, "lam", None)
        if isinstance(lam, list):
            lam = lam[0] if lam else None
        if lam is None:
            raise UsageError("xiso needs --space-lambda or --lambda")
        return SpaceSpec.xiso(Fraction(lam))
    return SpaceSpec(kind)


def _emit(text: str, path: Optional[str], out) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)


def _cmd_norm(args, cfg, out) -> int:
    spec = _space(args, cfg)
    x = parse_vector(args.vec)
    out.write(f"{format_scalar(norm(x, spec))}\n")
    if args.oracle:
        from .spaces import norm_oracle

        out.write(f"oracle {format_scalar(norm_oracle(x, spec))}\n")
    return EXIT_OK


def _cmd_greedy(args, cfg, out) -> int:
    x = parse_vector(args.vec)
    order = lambda_order(Fraction(args.lam), args.m)
    spec = _space(args, cfg) if (args.space or args.config) else None
    out.write("order,greedy_set,residual_norm\n")
    if order >= len(x):
        out.write(f'{order},"{format_index_set(x.support)}",0\n')
        return EXIT_OK
    for L in greedy_sets(x, order, args.cap).sets:
        rn = format_scalar(norm(residual(x, L), spec)) if spec else ""
        out.write(f'{order},"{format_index_set(L)}",{rn}\n')
    return EXIT_OK


def _cmd_check(args, cfg, out) -> int:
    spec = _space(args, cfg)
    lam = Fraction(args.lam)
    if args.kind == "residual":
        if len(args.vec) != 1:
            raise UsageError("check residual needs exactly one --vec")
        reports = [residual_ratio(spec, parse_vector(args.vec[0]), args.m, lam, args.family)]
    elif args.kind == "pair":
        reports = [set_pair_ratio(spec, _ints(args.A), _ints(args.B), lam, args.flavor)]
    elif args.kind == "sweep":
        reports = [set_pair_sweep(spec, lam, args.flavor, args.N)]
    elif args.kind == "slc2":
        x = parse_vector(args.vec[0]) if args.vec else parse_vector("")
        reports = [slc2_instance(spec, x, _ints(args.A), _ints(args.B), _signs(args.eps), _signs(args.delta), lam)]
    else:
        if not args.vec:
            raise UsageError("check qg needs at least one --vec")
        reports = list(qg_constants(spec, [parse_vector(v) for v in args.vec]))
    for r in reports:
        r.seed = args.seed
    bound = Fraction(args.bound) if args.bound is not None else None
    violating = [r for r in reports if bound is not None and r.violates(bound)]
    fmt = args.format or cfg.output_format
    if fmt == "json":
        text = json.dumps(
            {"reports": [r.to_json() for r in reports], "witnesses": [r.to_json() for r in violating]},
            indent=2,
            sort_keys=True,
        ) + "\n"
    else:
        text = reports_to_csv(reports)
        if violating:
            text += "# witness\n" + reports_to_csv(violating)
    _emit(text, args.out or cfg.output_path, out)
    return EXIT_WITNESS if violating else EXIT_OK


def _experiment(args, cfg) -> ex.ExperimentResult:
    seed = args.seed if args.seed is not None else cfg.seed
    lams = [Fraction(v) for v in args.lam] if args.lam else None
    name = args.name
    if name == "pg-separation":
        spec = _space(args, cfg)
        if spec.kind != "xpg":
            raise UsageError("pg-separation needs an xpg space")
        js = args.js or list(range(2, spec.params.levels))
        return ex.run_pg_separation(spec.params, js, args.sweep_n)
    if name == "xw-divergence":
        return ex.run_xw_divergence(args.Ns or [4, 8, 12, 100, 1000, 10**4])
    if name == "iso-threshold":
        return ex.run_iso_threshold(lams or [Fraction(3, 2), Fraction(2), Fraction(3)], args.trials or 1000, seed)
    if name == "xs-hierarchy":
        return ex.run_xs_hierarchy(args.Ns or [1, 2, 3, 4, 8, 16, 64], args.trials or 1000, seed)
    if name == "hierarchy-ordering":
        spec = _space(args, cfg) if args.space else SpaceSpec.xs()
        return ex.run_hierarchy_ordering(spec, args.trials or 1000, seed)
    specs = [_space(args, cfg)] if args.space else [cfg.space if cfg.space.kind == "xpg" else SpaceSpec.xpg(),
                                                     SpaceSpec.xw(), SpaceSpec.xiso(3), SpaceSpec.xs()]
    return ex.run_oracle_fuzz(specs, args.trials or 1000, seed)


def _cmd_experiment(args, cfg, out) -> int:
    result = _experiment(args, cfg)
    fmt = args.format or cfg.output_format
    if fmt == "json":
        payload = result.to_json()
        payload["csv"] = result.to_csv()
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        text = result.to_csv()
    _emit(text, args.out or cfg.output_path, out)
    return EXIT_OK if result.verdict and not result.failures else EXIT_WITNESS


COMMANDS = {"norm": _cmd_norm, "greedy": _cmd_greedy, "check": _cmd_check, "experiment": _cmd_experiment}


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if not args.command:
        parser.print_usage(err)
        return EXIT_USAGE
    try:
        cfg = _run_config(args)
        return COMMANDS[args.command](args, cfg, out)
    except (UsageError, DomainError, ConstraintError, InsufficientLevelsError, OracleBudgetError,
            TieExplosionError, ValueError, OSError) as exc:
        err.write(f"greedysums: error: {exc}\n")
        parser.print_usage(err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())

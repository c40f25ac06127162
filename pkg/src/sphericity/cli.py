"""Command-line interface.

Subcommands: `stat` (statistic on a data file), `bounds` (error-bound
table for one design), `simulate` (seeded Monte Carlo run), `reproduce`
(benchmark table grids). Exit codes: 0 success, 1 usage or parse error,
2 numerical domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .bounds import BoundReport, minimize_bounds
from .classical import a_prop, a_sys, cdf_expansion
from .cumulants import cumulant_set
from .edgeworth import EdgeworthExpansion, q_s_clamped
from .errors import DomainError, SphericityError
from .mc import ExperimentPlan, run_mae, run_type1
from .model import (MonotoneDesign, WishartSummary, compute_w, lr_lambda,
                    read_sample_csv)
from .tables import ALL_TABLES, BOUND_TABLES, table_rows


class UsageError(Exception):
    """Bad flags, config, or input file; maps to exit code 1."""


# --- output helpers -------------------------------------------------------

def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _to_json(obj, indent: int = 0) -> str:
    """JSON with floats at 17 significant digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        items = [f'{inner}{json.dumps(str(k))}: {_to_json(v, indent + 1).lstrip()}'
                 for k, v in obj.items()]
        return pad + "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        items = [_to_json(v, indent + 1) for v in obj]
        return pad + "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return pad + ("true" if obj else "false")
    if isinstance(obj, float):
        return pad + _fmt_float(obj)
    if isinstance(obj, (int, np.integer)):
        return pad + str(int(obj))
    return pad + json.dumps(obj)


def _write_rows(rows: list[dict], fmt: str, out_path: str | None, pretty: bool) -> None:
    if fmt == "json":
        text = _to_json(rows) + "\n"
    else:
        if not rows:
            text = ""
        else:
            header = list(rows[0].keys())
            lines = [",".join(header)]
            for row in rows:
                cells = []
                for key in header:
                    v = row[key]
                    if isinstance(v, float):
                        cells.append(_pretty_cell(key, v) if pretty else _fmt_float(v))
                    else:
                        cells.append(str(v))
                lines.append(",".join(cells))
            text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_PRETTY_DIGITS = {
    "kappa2": 3, "m": 2, "mae": 4,
    "v1": 2, "v2": 2, "v3": 2, "v4": 2,
    "c2": 2, "c3": 2, "c4": 2,
    "cv1": 2, "cv2": 2, "cv3": 2, "cv4": 2,
}


def _pretty_cell(key: str, v: float) -> str:
    if key.startswith("BOUND"):
        return format(v, ".4f")
    digits = _PRETTY_DIGITS.get(key, 3)
    return format(v, f".{digits}f")


# --- config / design parsing ---------------------------------------------

def _load_config(path: str) -> dict[str, str]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from None
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: invalid JSON config: {exc}") from None
        return {str(k): str(v) for k, v in data.items()}
    out: dict[str, str] = {}
    for i, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}: line {i}: expected 'key = value'")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def _merge_config(args: argparse.Namespace) -> None:
    """Fill unset flags from the config file; flags always win."""
    if not getattr(args, "config", None):
        return
    cfg = _load_config(args.config)
    casts = {"n": int, "n1": int, "N1": int, "N2": int, "p1": int, "p2": int,
             "reps": int, "seed": int, "threads": int, "order": int,
             "alpha": float, "grid_step": float, "format": str, "out": str,
             "pretty": lambda s: s.lower() in ("1", "true", "yes")}
    for key, raw in cfg.items():
        attr = key.replace("-", "_")
        if attr not in casts:
            raise UsageError(f"unknown config key {key!r}")
        # store_true flags default to False rather than None; absence of
        # the flag on the command line lets the config set them
        current = getattr(args, attr, None)
        if current is None or (attr == "pretty" and current is False):
            try:
                setattr(args, attr, casts[attr](raw))
            except ValueError:
                raise UsageError(f"config key {key!r}: bad value {raw!r}") from None


def _design_from_args(args: argparse.Namespace, p1: int | None = None,
                      p2: int | None = None) -> MonotoneDesign:
    p1 = args.p1 if args.p1 is not None else p1
    p2 = args.p2 if args.p2 is not None else p2
    if p1 is None or p2 is None:
        raise UsageError("dimensions --p1 and --p2 are required")
    have_nn = args.n is not None and args.n1 is not None
    have_NN = args.N1 is not None and args.N2 is not None
    if have_nn == have_NN:
        raise UsageError("specify either --n/--n1 or --N1/--N2")
    try:
        if have_nn:
            return MonotoneDesign.from_counts(args.n, args.n1, p1, p2)
        return MonotoneDesign(args.N1, args.N2, p1, p2)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _seed_from_args(args: argparse.Namespace) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("SPHERICITY_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"SPHERICITY_SEED must be an integer, got {env!r}") from None
    return 0


def _row_seed(seed: int, index: int) -> int:
    # fixed affine derivation keeps per-row streams reproducible
    return (seed * 1_000_003 + index) % (2**63)


# --- subcommands ----------------------------------------------------------

def cmd_stat(args: argparse.Namespace) -> int:
    try:
        sample, design = read_sample_csv(args.data, p1=args.p1, p2=args.p2)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    summary = WishartSummary.from_matrices(compute_w(sample, design))
    log_lam, scaled = lr_lambda(summary, design)
    cset = cumulant_set(design)
    t = (scaled - cset.kappa1) / math.sqrt(cset.kappa2)
    s = args.order if args.order is not None else 2
    exp = EdgeworthExpansion.from_cumulants(cset, s)
    minus2log = design.N * scaled
    report = {
        "N1": design.N1, "N2": design.N2, "p1": design.p1, "p2": design.p2,
        "log_lambda": log_lam,
        "minus_2_log_lambda": minus2log,
        "scaled_statistic": scaled,
        "T": t,
        "kappa1": cset.kappa1,
        "kappa2": cset.kappa2,
        "p_value_expansion": 1.0 - q_s_clamped(exp, t),
        "p_value_chi2_series": min(max(1.0 - cdf_expansion(minus2log, design), 0.0), 1.0),
    }
    _write_rows([report], args.format or "json", args.out, args.pretty)
    return 0


def _bound_row(design: MonotoneDesign, report: BoundReport) -> dict:
    return {
        "p1": design.p1, "p2": design.p2, "n": design.n, "n1": design.n1,
        "BOUND1": report.bound1, "v1": report.v1, "cv1": report.cv1,
        "BOUND2": report.bound2, "v2": report.v2, "c2": report.c2, "cv2": report.cv2,
        "BOUND3": report.bound3, "v3": report.v3, "c3": report.c3, "cv3": report.cv3,
        "BOUND4": report.bound4, "v4": report.v4, "c4": report.c4, "cv4": report.cv4,
        "kappa2": report.kappa2, "m": report.m,
    }


def cmd_bounds(args: argparse.Namespace) -> int:
    design = _design_from_args(args)
    cset = cumulant_set(design)
    report = minimize_bounds(design, cset, s=args.order or 2,
                             grid_step=args.grid_step or 0.05)
    _write_rows([_bound_row(design, report)], args.format or "csv",
                args.out, args.pretty)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    design = _design_from_args(args)
    plan = ExperimentPlan(
        design=design,
        reps=args.reps or 100_000,
        seed=_seed_from_args(args),
        sampler=args.sampler or "summary",
        alphas=tuple(args.alpha) if args.alpha else (0.10, 0.05, 0.01),
        s=args.order or 2,
    )
    result = run_mae(plan, threads=args.threads or 1)
    report = {
        "N1": design.N1, "N2": design.N2, "p1": design.p1, "p2": design.p2,
        "reps": result.rep_count, "seed": result.seed,
        "mae": result.mae,
        "mean_T": result.mean_t, "var_T": result.var_t,
        "alpha1": {str(a): v for a, v in result.alpha1.items()},
        "b_prop": {str(a): v for a, v in result.b_prop.items()},
        "b_sys": {str(a): v for a, v in result.b_sys.items()},
        "t_quantiles": {str(p): v for p, v in result.t_quantiles.items()},
    }
    _write_rows([report], args.format or "json", args.out, args.pretty)
    return 0


def _reproduce_bound_rows(table_id: str, args: argparse.Namespace) -> list[dict]:
    rows = []
    for index, trow in enumerate(table_rows(table_id)):
        design = trow.design
        cset = cumulant_set(design)
        report = minimize_bounds(design, cset, s=args.order or 2,
                                 grid_step=args.grid_step or 0.05)
        row = _bound_row(design, report)
        if args.reps:
            plan = ExperimentPlan(design=design, reps=args.reps,
                                  seed=_row_seed(_seed_from_args(args), index))
            result = run_mae(plan, threads=args.threads or 1)
            row["mae"] = result.mae
            row["reps"] = result.rep_count
            row["seed"] = result.seed
        rows.append(row)
    return rows


def _reproduce_type1_rows(table_id: str, args: argparse.Namespace) -> list[dict]:
    rows = []
    reps = args.reps or 100_000
    for index, trow in enumerate(table_rows(table_id)):
        design, alpha = trow.design, trow.alpha
        cset = cumulant_set(design)
        plan = ExperimentPlan(design=design, reps=reps,
                              seed=_row_seed(_seed_from_args(args), index),
                              alphas=(alpha,))
        result = run_type1(plan, threads=args.threads or 1)
        rate = result.alpha1[alpha]
        rows.append({
            "N1": design.N1, "N2": design.N2, "p1": design.p1, "p2": design.p2,
            "alpha": alpha,
            "alpha1": rate,
            "A_prop": a_prop(alpha, design, cset),
            "A_SYS": a_sys(alpha, design),
            "B_prop": result.b_prop[alpha],
            "B_SYS": result.b_sys[alpha],
            "se_alpha1": math.sqrt(max(rate * (1.0 - rate), 0.0) / reps),
            "reps": reps,
            "seed": plan.seed,
        })
    return rows


def _replay_rows(path: str, args: argparse.Namespace) -> list[dict]:
    """Re-parse a previously emitted reproduction CSV and recompute every
    row from its stored configuration (and per-row seed, when present)."""
    import csv as _csv
    try:
        with open(path, newline="") as fh:
            parsed = list(_csv.DictReader(fh))
    except OSError as exc:
        raise UsageError(f"cannot read input file: {exc}") from None
    if not parsed:
        raise UsageError(f"{path}: no data rows to replay")
    rows = []
    for i, rec in enumerate(parsed, start=2):
        try:
            if "alpha" in rec:       # Type I error schema
                design = MonotoneDesign(int(rec["N1"]), int(rec["N2"]),
                                        int(rec["p1"]), int(rec["p2"]))
                alpha = float(rec["alpha"])
                reps = int(rec.get("reps") or args.reps or 100_000)
                seed = int(rec.get("seed") or _seed_from_args(args))
            else:                    # bound schema
                design = MonotoneDesign.from_counts(int(rec["n"]), int(rec["n1"]),
                                                    int(rec["p1"]), int(rec["p2"]))
        except (KeyError, TypeError, ValueError, DomainError) as exc:
            raise UsageError(f"{path}: row {i}: {exc}") from None
        cset = cumulant_set(design)
        if "alpha" in rec:
            plan = ExperimentPlan(design=design, reps=reps, seed=seed,
                                  alphas=(alpha,))
            result = run_type1(plan, threads=args.threads or 1)
            rate = result.alpha1[alpha]
            rows.append({
                "N1": design.N1, "N2": design.N2, "p1": design.p1, "p2": design.p2,
                "alpha": alpha,
                "alpha1": rate,
                "A_prop": a_prop(alpha, design, cset),
                "A_SYS": a_sys(alpha, design),
                "B_prop": result.b_prop[alpha],
                "B_SYS": result.b_sys[alpha],
                "se_alpha1": math.sqrt(max(rate * (1.0 - rate), 0.0) / reps),
                "reps": reps,
                "seed": seed,
            })
        else:
            report = minimize_bounds(design, cset, s=args.order or 2,
                                     grid_step=args.grid_step or 0.05)
            rows.append(_bound_row(design, report))
    return rows


def cmd_reproduce(args: argparse.Namespace) -> int:
    if args.input:
        if args.table is not None:
            raise UsageError("give either a table id or --input, not both")
        rows = _replay_rows(args.input, args)
        _write_rows(rows, args.format or "csv", args.out, args.pretty)
        return 0
    table_id = args.table
    if table_id is None:
        raise UsageError("a table id or --input file is required")
    if table_id not in ALL_TABLES:
        raise UsageError(f"unknown table id {table_id!r}; expected one of {ALL_TABLES}")
    if table_id in BOUND_TABLES:
        rows = _reproduce_bound_rows(table_id, args)
    else:
        rows = _reproduce_type1_rows(table_id, args)
    _write_rows(rows, args.format or "csv", args.out, args.pretty)
    return 0


# --- argument plumbing ----------------------------------------------------

def _add_common(sp: argparse.ArgumentParser, design: bool = True) -> None:
    if design:
        sp.add_argument("--n", type=int)
        sp.add_argument("--n1", type=int)
        sp.add_argument("--N1", type=int)
        sp.add_argument("--N2", type=int)
    sp.add_argument("--p1", type=int)
    sp.add_argument("--p2", type=int)
    sp.add_argument("--alpha", type=float, action="append")
    sp.add_argument("--reps", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--threads", type=int)
    sp.add_argument("--order", type=int)
    sp.add_argument("--grid-step", dest="grid_step", type=float)
    sp.add_argument("--format", choices=("csv", "json"))
    sp.add_argument("--out")
    sp.add_argument("--config")
    sp.add_argument("--pretty", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphericity",
        description="Sphericity likelihood-ratio test for two-step monotone "
                    "incomplete data: statistic, error bounds, simulations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("stat", help="compute the statistic from a CSV sample")
    sp.add_argument("data", help="CSV file, one observation per row")
    _add_common(sp, design=False)
    sp.set_defaults(func=cmd_stat)

    sp = sub.add_parser("bounds", help="error bounds for one design")
    _add_common(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("simulate", help="seeded Monte Carlo run for one design")
    sp.add_argument("--sampler", choices=("summary", "raw"))
    _add_common(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("reproduce", help="run a benchmark table grid")
    sp.add_argument("table", nargs="?", help="table1 .. table9")
    sp.add_argument("--input", help="replay the configurations stored in a "
                                    "previously emitted reproduction CSV")
    _add_common(sp)
    sp.set_defaults(func=cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        _merge_config(args)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SphericityError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line frontend for the realized-volatility / MDH pipeline.

Subcommands: simulate, rv, signature, fit, standardize, normtest, acf,
pipeline.  Every run writes its outputs plus a ``manifest.json`` able to
reproduce the command.  Exit codes: 0 success, 2 configuration/usage,
3 I/O failure, 4 data degeneracy.

The session-spec path may come from the ``RVMDH_SESSIONS`` environment
variable; an explicit ``--sessions`` flag takes precedence.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .dataio import (
    RunManifest,
    fmt6,
    read_signature_csv,
    read_values_csv,
    write_acf_csv,
    write_fit_json,
    write_mdh_report_json,
    write_returns_csv,
    write_rv_csv,
    write_signature_csv,
    write_ticks_csv,
    write_true_iv_csv,
)
from .dataio import _dump_json, format_mdh_table
from .errors import ConfigError, DataError
from .market_data import SessionSpec, ingest_csv
from .noise_fit import bias_at, fit_noise_model, signature_curve
from .pipeline import DEFAULT_MAX_LAG, run_pipeline
from .realized_vol import rv_series
from .sampling import default_delta_grid, zone_returns
from .simulator import SimConfig, simulate
from .stats_tests import acf as compute_acf
from .stats_tests import anderson_darling, standardize

ENV_SESSIONS = "RVMDH_SESSIONS"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_DATA = 4


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_spec(args) -> SessionSpec:
    path = getattr(args, "sessions", None) or os.environ.get(ENV_SESSIONS)
    if not path:
        raise ConfigError(
            f"no session spec: pass --sessions or set ${ENV_SESSIONS}"
        )
    return SessionSpec.from_file(path)


def _load_ticks(args):
    spec = _load_spec(args)
    return ingest_csv(args.ticks, spec)


def _manifest(args, command: str, inputs: dict, outputs: list, seed=None) -> None:
    out = Path(args.out)
    manifest = RunManifest.create(
        command=command,
        argv=sys.argv[1:] if args.raw_argv is None else args.raw_argv,
        inputs=inputs,
        outputs=[str(Path(o).name) for o in outputs],
        seed=seed,
        version=__version__,
    )
    manifest.write(out / "manifest.json")


def _parse_delta_list(raw: str) -> tuple[int, ...]:
    try:
        deltas = tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError as exc:
        raise ConfigError(f"bad delta list '{raw}'") from exc
    if not deltas:
        raise ConfigError(f"bad delta list '{raw}'")
    return deltas


def cmd_simulate(args) -> int:
    config = SimConfig.from_file(args.config)
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    output = simulate(config)
    out = _out_dir(args)
    ticks_path = out / "ticks.csv"
    iv_path = out / "true_iv.csv"
    write_ticks_csv(output.ticks, ticks_path)
    write_true_iv_csv(output, iv_path)
    _manifest(args, "simulate", {"config": args.config}, [ticks_path, iv_path], config.seed)
    print(
        f"simulated {config.n_days} days, {output.ticks.n_ticks} ticks "
        f"(seed {config.seed}) -> {out}"
    )
    return EXIT_OK


def cmd_rv(args) -> int:
    ts = _load_ticks(args)
    series = rv_series(ts, args.session, args.delta)
    out = _out_dir(args)
    path = out / f"rv_{args.session}.csv"
    write_rv_csv(series, path)
    _manifest(args, "rv", {"ticks": args.ticks, "sessions": _spec_path(args)}, [path])
    mean = float(series.values.mean())
    print(
        f"[{args.session}] delta={args.delta}min: {len(series)} days, "
        f"mean RV {fmt6(mean)}, {len(series.skipped_days)} skipped"
    )
    return EXIT_OK


def cmd_signature(args) -> int:
    ts = _load_ticks(args)
    deltas = (
        _parse_delta_list(args.deltas)
        if args.deltas
        else default_delta_grid(ts.spec.session(args.session).duration_min)
    )
    curve = signature_curve(ts, args.session, deltas)
    out = _out_dir(args)
    path = out / f"signature_{args.session}.csv"
    write_signature_csv(curve, path)
    _manifest(args, "signature", {"ticks": args.ticks, "sessions": _spec_path(args)}, [path])
    for warning in curve.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    for p in curve.points:
        print(f"[{args.session}] delta={p.delta_min}min  mean RV {fmt6(p.mean_rv)} (se {fmt6(p.se)})")
    return EXIT_OK


def cmd_fit(args) -> int:
    curve = read_signature_csv(args.signature)
    fit = fit_noise_model(curve, weighted=args.weighted_fit)
    out = _out_dir(args)
    path = out / "fit.json"
    write_fit_json(fit, path)
    _manifest(args, "fit", {"signature": args.signature}, [path])
    print(
        f"a0 = {fmt6(fit.a0)}, a1 = {fmt6(fit.a1)} min, "
        f"bias at 5min = {fmt6(bias_at(fit, 5))}, sse = {fmt6(fit.residual_sse)}"
    )
    return EXIT_OK


def cmd_standardize(args) -> int:
    ts = _load_ticks(args)
    returns = zone_returns(ts, args.session)
    rv = rv_series(ts, args.session, args.delta)
    series = standardize(returns, rv)
    out = _out_dir(args)
    path = out / f"standardized_{args.session}.csv"
    write_returns_csv(series, path)
    _manifest(args, "standardize", {"ticks": args.ticks, "sessions": _spec_path(args)}, [path])
    print(
        f"[{args.session}] {len(series)} standardized returns "
        f"({series.n_excluded} days excluded)"
    )
    return EXIT_OK


def cmd_normtest(args) -> int:
    values = read_values_csv(args.input)
    stat, p = anderson_darling(values)
    out = _out_dir(args)
    path = out / "normtest.json"
    _dump_json({"ad_statistic": stat, "ad_p_value": p, "n": len(values)}, path)
    _manifest(args, "normtest", {"input": args.input}, [path])
    print(f"AD statistic {fmt6(stat)}, p-value {fmt6(p)} (n={len(values)})")
    return EXIT_OK


def cmd_acf(args) -> int:
    values = read_values_csv(args.input)
    if args.absolute:
        values = np.abs(values)
    result = compute_acf(values, args.max_lag)
    out = _out_dir(args)
    path = out / "acf.csv"
    write_acf_csv(result, path)
    _manifest(args, "acf", {"input": args.input}, [path])
    outside = int(np.sum(np.abs(result.acf[1:]) > result.band))
    print(
        f"{args.max_lag} lags, band +/-{fmt6(result.band)}, "
        f"{outside} lag(s) outside the band"
    )
    return EXIT_OK


def cmd_pipeline(args) -> int:
    ts = _load_ticks(args)
    sessions = tuple(args.session) if args.session else None
    fit_deltas = _parse_delta_list(args.fit_deltas) if args.fit_deltas else None
    results = run_pipeline(
        ts,
        args.delta,
        sessions=sessions,
        fit_deltas=fit_deltas,
        weighted=args.weighted_fit,
        max_lag=args.max_lag,
    )
    out = _out_dir(args)
    outputs: list[Path] = []
    for label, res in results.items():
        paths = {
            "rv": out / f"rv_{label}.csv",
            "signature": out / f"signature_{label}.csv",
            "fit": out / f"fit_{label}.json",
            "standardized": out / f"standardized_{label}.csv",
            "report": out / f"mdh_report_{label}.json",
            "acf_returns": out / f"acf_abs_returns_{label}.csv",
            "acf_standardized": out / f"acf_abs_standardized_{label}.csv",
        }
        write_rv_csv(res.rv, paths["rv"])
        write_signature_csv(res.signature, paths["signature"])
        write_fit_json(res.fit, paths["fit"])
        write_returns_csv(res.standardized, paths["standardized"])
        delta_bias = max(bias_at(res.fit, args.delta), 0.0)
        write_mdh_report_json(
            res.report,
            paths["report"],
            provenance={
                "instrument": ts.instrument,
                "session": label,
                "delta_min": args.delta,
                "fit": {"a0": res.fit.a0, "a1": res.fit.a1, "bias_at_delta": delta_bias},
            },
        )
        write_acf_csv(res.acf_abs_returns, paths["acf_returns"])
        write_acf_csv(res.acf_abs_standardized, paths["acf_standardized"])
        outputs.extend(paths.values())
        print(format_mdh_table(res.report, label, args.delta, delta_bias))
    _manifest(
        args,
        "pipeline",
        {"ticks": args.ticks, "sessions": _spec_path(args)},
        outputs,
    )
    return EXIT_OK


def _spec_path(args) -> str:
    return getattr(args, "sessions", None) or os.environ.get(ENV_SESSIONS, "")


def _add_ticks_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ticks", required=True, help="tick CSV (date,time,price)")
    p.add_argument(
        "--sessions",
        help=f"session spec file (default: ${ENV_SESSIONS})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rvmdh",
        description="Session-split realized volatility, noise-bias fitting, "
        "and normality tests of volatility-standardized returns.",
    )
    parser.add_argument("--version", action="version", version=f"rvmdh {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate synthetic ticks with ground truth")
    p.add_argument("--config", required=True, help="simulation config file")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("rv", help="per-day realized volatility of one session")
    _add_ticks_args(p)
    p.add_argument("--session", required=True)
    p.add_argument("--delta", type=int, required=True, help="sampling period, minutes")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_rv)

    p = sub.add_parser("signature", help="mean RV vs sampling period")
    _add_ticks_args(p)
    p.add_argument("--session", required=True)
    p.add_argument("--deltas", help="comma-separated minutes (default: standard grid)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("fit", help="fit a0*(1+a1/delta) to a signature CSV")
    p.add_argument("--signature", required=True, help="signature CSV path")
    p.add_argument("--weighted-fit", action="store_true", help="weight points by 1/se^2")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("standardize", help="session returns divided by sqrt(RV)")
    _add_ticks_args(p)
    p.add_argument("--session", required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_standardize)

    p = sub.add_parser("normtest", help="Anderson-Darling normality test on a value CSV")
    p.add_argument("--input", required=True, help="CSV with day,index,value rows")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_normtest)

    p = sub.add_parser("acf", help="autocorrelation function with 95% band")
    p.add_argument("--input", required=True, help="CSV with day,index,value rows")
    p.add_argument("--max-lag", type=int, default=DEFAULT_MAX_LAG)
    p.add_argument("--absolute", action="store_true", help="use absolute values")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_acf)

    p = sub.add_parser("pipeline", help="full per-session analysis in one run")
    _add_ticks_args(p)
    p.add_argument("--delta", type=int, required=True, help="sampling period, minutes")
    p.add_argument("--fit-deltas", help="comma-separated minutes for the signature fit")
    p.add_argument(
        "--session",
        action="append",
        help="restrict to this session (repeatable; default: all)",
    )
    p.add_argument("--weighted-fit", action="store_true")
    p.add_argument("--max-lag", type=int, default=DEFAULT_MAX_LAG)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.raw_argv = argv
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    raise SystemExit(main())

"""Readers, writers, and renderers for every file format the tools emit.

CSV and JSON files carry full round-trip float precision (shortest repr);
human-readable console output rounds to 6 significant digits.  JSON is
written with sorted keys so identical results are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .errors import ParseError
from .market_data import TickSeries, sec_to_time
from .noise_fit import NoiseFit, SignatureCurve, SignaturePoint, bias_at
from .realized_vol import RvSeries
from .sampling import ReturnSeries
from .simulator import SimOutput
from .stats_tests import AcfResult, MdhReport, StandardizedSeries


def fmt6(x: float) -> str:
    """Render a number with 6 significant digits for console output."""
    return format(x, ".6g")


def write_ticks_csv(ts: TickSeries, path: str | Path) -> None:
    """Write `date,time,price` rows (full precision, LF endings)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("date,time,price\n")
        for dt in ts.days:
            day = dt.day.isoformat()
            for sec, price in zip(dt.seconds.tolist(), dt.prices.tolist()):
                fh.write(f"{day},{sec_to_time(sec).isoformat()},{price!r}\n")


def write_true_iv_csv(output: SimOutput, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("day,session,iv\n")
        for e in output.true_iv:
            fh.write(f"{e.day.isoformat()},{e.session},{e.iv!r}\n")


def write_returns_csv(series: ReturnSeries | StandardizedSeries, path: str | Path) -> None:
    """Write per-day values as `day,index,value` (index left empty)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("day,index,value\n")
        for day, value in zip(series.days, series.values.tolist()):
            fh.write(f"{day.isoformat()},,{value!r}\n")


def read_values_csv(path: str | Path) -> np.ndarray:
    """Read the `value` column of a `day,index,value` file."""
    values: list[float] = []
    with open(path, encoding="utf-8-sig", newline="") as fh:
        header = fh.readline()
        cols = [c.strip().lower() for c in header.strip().split(",")]
        if cols != ["day", "index", "value"]:
            raise ParseError("expected header 'day,index,value'", path, 1)
        for lineno, raw in enumerate(fh, start=2):
            line = raw.strip()
            if not line:
                continue
            fields = line.split(",")
            if len(fields) != 3:
                raise ParseError(f"expected 3 fields, got {len(fields)}", path, lineno)
            try:
                values.append(float(fields[2]))
            except ValueError as exc:
                raise ParseError(f"bad value '{fields[2]}'", path, lineno) from exc
    return np.array(values)


def write_rv_csv(rv: RvSeries, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("day,delta_min,n,rv\n")
        for e in rv.entries:
            fh.write(f"{e.day.isoformat()},{rv.delta_min},{e.n},{e.rv!r}\n")


def write_signature_csv(curve: SignatureCurve, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("delta_min,mean_rv,se,n_days\n")
        for p in curve.points:
            fh.write(f"{p.delta_min},{p.mean_rv!r},{p.se!r},{p.n_days}\n")


def read_signature_csv(path: str | Path, session: str = "") -> SignatureCurve:
    points: list[SignaturePoint] = []
    with open(path, encoding="utf-8-sig", newline="") as fh:
        header = fh.readline()
        cols = [c.strip().lower() for c in header.strip().split(",")]
        if cols != ["delta_min", "mean_rv", "se", "n_days"]:
            raise ParseError("expected header 'delta_min,mean_rv,se,n_days'", path, 1)
        for lineno, raw in enumerate(fh, start=2):
            line = raw.strip()
            if not line:
                continue
            fields = line.split(",")
            if len(fields) != 4:
                raise ParseError(f"expected 4 fields, got {len(fields)}", path, lineno)
            try:
                points.append(
                    SignaturePoint(int(fields[0]), float(fields[1]), float(fields[2]), int(fields[3]))
                )
            except ValueError as exc:
                raise ParseError(f"bad row: {exc}", path, lineno) from exc
    return SignatureCurve(session, tuple(points))


def _dump_json(obj, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def fit_to_dict(fit: NoiseFit) -> dict:
    return {
        "a0": fit.a0,
        "a1": fit.a1,
        "residual_sse": fit.residual_sse,
        "deltas_used": list(fit.deltas_used),
        "weighted": fit.weighted,
        "bias": {str(d): bias_at(fit, d) for d in fit.deltas_used},
    }


def write_fit_json(fit: NoiseFit, path: str | Path) -> None:
    _dump_json(fit_to_dict(fit), path)


def write_mdh_report_json(
    report: MdhReport, path: str | Path, provenance: dict | None = None
) -> None:
    """Write the report plus provenance (instrument, session, delta, fit)."""
    payload = dict(provenance or {})
    payload["report"] = report.to_dict()
    _dump_json(payload, path)


def write_acf_csv(result: AcfResult, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("lag,acf,band\n")
        for lag, value in zip(result.lags.tolist(), result.acf.tolist()):
            fh.write(f"{lag},{value!r},{result.band!r}\n")


def format_mdh_table(report: MdhReport, label: str, delta: float, delta_bias: float) -> str:
    """Human-readable summary mirroring a one-stock results column."""
    rows = [
        (f"[{label}] standardized returns, delta = {fmt6(delta)} min, n = {report.n}", ""),
        ("std.dv. (= sigma)", f"{fmt6(report.std_dev)} ({fmt6(report.std_dev_se)})"),
        ("kurt.", f"{fmt6(report.kurtosis)} ({fmt6(report.kurtosis_se)})"),
        (
            f"sigma*(1+{fmt6(delta_bias)})^1/2",
            f"{fmt6(report.bias_corrected_std)} ({fmt6(report.bias_corrected_std_se)})",
        ),
        ("AD p-value", fmt6(report.ad_p_value)),
    ]
    width = max(len(name) for name, _ in rows)
    lines = [rows[0][0]]
    lines += [f"  {name.ljust(width)}  {value}" for name, value in rows[1:]]
    return "\n".join(lines)


@dataclass(frozen=True)
class RunManifest:
    """Reproducibility record written alongside every command's outputs."""

    command: str
    argv: list[str]
    inputs: dict[str, str]
    outputs: list[str]
    seed: int | None
    version: str
    timestamp: str

    @classmethod
    def create(cls, command, argv, inputs, outputs, seed, version) -> "RunManifest":
        return cls(
            command=command,
            argv=list(argv),
            inputs={k: str(v) for k, v in inputs.items()},
            outputs=[str(o) for o in outputs],
            seed=seed,
            version=version,
            timestamp=datetime.now(timezone.utc).isoformat(),
        )

    def write(self, path: str | Path) -> None:
        _dump_json(
            {
                "command": self.command,
                "argv": self.argv,
                "inputs": self.inputs,
                "outputs": self.outputs,
                "seed": self.seed,
                "version": self.version,
                "timestamp": self.timestamp,
            },
            path,
        )

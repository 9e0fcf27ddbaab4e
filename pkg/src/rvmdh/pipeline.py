"""End-to-end per-session analysis: RV, signature fit, standardization, report."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .market_data import TickSeries
from .noise_fit import NoiseFit, SignatureCurve, fit_noise_model, signature_curve
from .realized_vol import RvSeries, rv_series
from .sampling import ReturnSeries, default_delta_grid, zone_returns
from .stats_tests import (
    AcfResult,
    MdhReport,
    StandardizedSeries,
    acf,
    mdh_report,
    standardize,
)

DEFAULT_MAX_LAG = 50


@dataclass(frozen=True)
class SessionPipelineResult:
    """Everything the pipeline derives for one session."""

    label: str
    delta_min: int
    returns: ReturnSeries
    rv: RvSeries
    signature: SignatureCurve
    fit: NoiseFit
    standardized: StandardizedSeries
    report: MdhReport
    acf_abs_returns: AcfResult
    acf_abs_standardized: AcfResult


def run_session(
    ts: TickSeries,
    label: str,
    delta: int,
    fit_deltas: tuple[int, ...] | None = None,
    weighted: bool = False,
    max_lag: int = DEFAULT_MAX_LAG,
) -> SessionPipelineResult:
    """Run the full analysis for one session at sampling period ``delta``.

    ``fit_deltas`` defaults to the base sampling grid pruned to divisors
    of the session duration.  ``max_lag`` is capped at n-1 for short
    series.  Data-level failures are re-raised with the session label
    prefixed so batch callers can report which session degenerated.
    """
    try:
        sess = ts.spec.session(label)
        if fit_deltas is None:
            fit_deltas = default_delta_grid(sess.duration_min)
        returns = zone_returns(ts, label)
        rv = rv_series(ts, label, delta)
        curve = signature_curve(ts, label, fit_deltas)
        fit = fit_noise_model(curve, weighted=weighted)
        standardized = standardize(returns, rv)
        report = mdh_report(standardized, fit, delta)
        lag_r = min(max_lag, len(returns) - 1)
        lag_z = min(max_lag, len(standardized) - 1)
        acf_abs_r = acf(np.abs(returns.values), lag_r)
        acf_abs_z = acf(np.abs(standardized.values), lag_z)
    except DataError as exc:
        raise exc.__class__(f"session '{label}': {exc}") from exc
    return SessionPipelineResult(
        label=label,
        delta_min=delta,
        returns=returns,
        rv=rv,
        signature=curve,
        fit=fit,
        standardized=standardized,
        report=report,
        acf_abs_returns=acf_abs_r,
        acf_abs_standardized=acf_abs_z,
    )


def run_pipeline(
    ts: TickSeries,
    delta: int,
    sessions: tuple[str, ...] | None = None,
    fit_deltas: tuple[int, ...] | None = None,
    weighted: bool = False,
    max_lag: int = DEFAULT_MAX_LAG,
) -> dict[str, SessionPipelineResult]:
    """Run every requested session (default: all), in spec order."""
    labels = sessions if sessions is not None else ts.spec.labels
    return {
        label: run_session(ts, label, delta, fit_deltas, weighted, max_lag)
        for label in labels
    }

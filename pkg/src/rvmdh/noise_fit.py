"""Volatility signature curve and the microstructure-noise bias fit.

Independent observation noise on log-prices lifts the mean realized
volatility at short sampling periods.  The lift follows
``a0 * (1 + a1/delta)``, which is linear in ``(p, q) = (a0, a0*a1)`` with
model ``p + q/delta``, so the fit solves the 2x2 normal equations in
closed form; no iterative optimizer, no tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateDataError,
    DegenerateFitError,
    EmptyDataError,
    InsufficientDataError,
)
from .market_data import TickSeries
from .realized_vol import rv_series


@dataclass(frozen=True)
class SignaturePoint:
    delta_min: int
    mean_rv: float
    se: float
    n_days: int


@dataclass(frozen=True)
class SignatureCurve:
    """Mean RV (with standard error) per sampling period, for one session."""

    session: str
    points: tuple[SignaturePoint, ...]
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        deltas = [p.delta_min for p in self.points]
        if sorted(set(deltas)) != deltas:
            raise ValueError("signature points must have strictly increasing deltas")

    @property
    def deltas(self) -> tuple[int, ...]:
        return tuple(p.delta_min for p in self.points)


@dataclass(frozen=True)
class NoiseFit:
    """Fitted level a0, noise coefficient a1 (minutes), and fit residual."""

    a0: float
    a1: float
    residual_sse: float
    deltas_used: tuple[int, ...]
    weighted: bool = False


def signature_curve(ts: TickSeries, session: str, deltas: list[int] | tuple[int, ...]) -> SignatureCurve:
    """Mean realized volatility across days at each sampling period.

    ``se`` is the standard error of the mean (unbiased sample std over
    usable days / sqrt(n_days); 0 when a single day is usable).  Periods
    with zero usable days are omitted, with a warning record.
    """
    if not deltas:
        raise EmptyDataError(f"session '{session}': no sampling periods requested")
    points: list[SignaturePoint] = []
    warnings: list[str] = []
    for delta in sorted(set(int(d) for d in deltas)):
        try:
            series = rv_series(ts, session, delta)
        except EmptyDataError:
            warnings.append(f"delta={delta}min: no usable days, point omitted")
            continue
        values = series.values
        n_days = len(values)
        mean = float(values.mean())
        se = float(values.std(ddof=1) / np.sqrt(n_days)) if n_days > 1 else 0.0
        points.append(SignaturePoint(delta, mean, se, n_days))
    return SignatureCurve(session, tuple(points), tuple(warnings))


def fit_noise_model(curve: SignatureCurve, weighted: bool = False) -> NoiseFit:
    """Least-squares fit of mean_rv ~ a0 * (1 + a1/delta).

    Parameters
    ----------
    curve : SignatureCurve
        At least 3 points with distinct sampling periods.
    weighted : bool
        Weight each point by 1/se^2 instead of equally; requires every
        point's se to be positive.

    Returns
    -------
    NoiseFit
        ``residual_sse`` is the minimized (weighted) sum of squared
        residuals; exactly 0 for data generated from the model.

    Raises
    ------
    InsufficientDataError
        Fewer than 3 distinct sampling periods.
    DegenerateFitError
        Singular normal equations, or a fitted level a0 <= 0 (the curve
        carries no positive volatility level).
    """
    y = np.array([p.mean_rv for p in curve.points], dtype=float)
    deltas = np.array([p.delta_min for p in curve.points], dtype=float)
    if len(set(deltas.tolist())) < 3:
        raise InsufficientDataError("noise fit needs >= 3 distinct sampling periods")
    if weighted:
        ses = np.array([p.se for p in curve.points], dtype=float)
        if np.any(ses <= 0):
            raise DegenerateDataError("weighted fit requires positive standard errors")
        w = 1.0 / ses**2
    else:
        w = np.ones_like(y)

    u = 1.0 / deltas
    s_w = float(np.sum(w))
    s_u = float(np.sum(w * u))
    s_uu = float(np.sum(w * u * u))
    s_y = float(np.sum(w * y))
    s_uy = float(np.sum(w * u * y))
    det = s_w * s_uu - s_u * s_u
    if det <= 0 or not np.isfinite(det):
        raise DegenerateFitError("singular normal equations (sampling periods not distinct)")
    p = (s_y * s_uu - s_uy * s_u) / det
    q = (s_w * s_uy - s_u * s_y) / det
    if p <= 0:
        raise DegenerateFitError(f"fitted level a0 = {p:.6g} is not positive")
    resid = y - (p + q * u)
    return NoiseFit(
        a0=p,
        a1=q / p,
        residual_sse=float(np.sum(w * resid**2)),
        deltas_used=tuple(int(d) for d in deltas),
        weighted=weighted,
    )


def bias_at(fit: NoiseFit, delta: float) -> float:
    """Relative noise bias of mean RV at a sampling period: a1/delta."""
    if delta <= 0:
        raise ValueError(f"sampling period must be > 0, got {delta}")
    return fit.a1 / delta

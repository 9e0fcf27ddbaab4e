"""Per-session realized volatility and the Hansen-Lunde adjustment factor.

RV for a (day, session) is the plain sum of squared intraday grid returns
of that session; overnight and lunch-break moves never enter.  The
Hansen-Lunde factor is provided for whole-day use but is intentionally
never applied when sessions are analyzed separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date

import numpy as np

from .errors import (
    AlignmentError,
    DegenerateDataError,
    EmptyDataError,
    InsufficientDataError,
    MissingDayError,
)
from .market_data import TickSeries
from .sampling import ReturnSeries, SessionDayReturns, intraday_returns


@dataclass(frozen=True)
class RvEntry:
    """Realized volatility of one day: rv = sum of n squared grid returns."""

    day: date
    rv: float
    n: int


@dataclass(frozen=True)
class RvSeries:
    """Per-day realized volatilities of one session at one sampling period."""

    session: str
    delta_min: int
    entries: tuple[RvEntry, ...]
    skipped_days: tuple[date, ...] = ()

    @property
    def days(self) -> tuple[date, ...]:
        return tuple(e.day for e in self.entries)

    @property
    def values(self) -> np.ndarray:
        return np.array([e.rv for e in self.entries])

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class HlFactor:
    """Scale that matches average RV to the daily-return sample variance."""

    c: float
    n_days: int


def realized_volatility(day_returns: SessionDayReturns) -> float:
    """Sum of squared intraday log-returns for one (day, session)."""
    if day_returns.n == 0:
        raise MissingDayError(f"{day_returns.day}: no intraday returns")
    r = day_returns.returns
    return float(np.dot(r, r))


def rv_series(ts: TickSeries, session: str, delta: int) -> RvSeries:
    """Realized volatility per day, in date order.

    Days that cannot seed the sampling grid are skipped and listed in
    ``skipped_days``.

    Raises
    ------
    ConfigError
        Unknown session or delta not dividing the session duration.
    EmptyDataError
        No day is usable.
    """
    entries: list[RvEntry] = []
    skipped: list[date] = []
    for dt in ts.days:
        try:
            day_rets = intraday_returns(ts, dt.day, session, delta)
        except MissingDayError:
            skipped.append(dt.day)
            continue
        entries.append(RvEntry(dt.day, realized_volatility(day_rets), day_rets.n))
    if not entries:
        raise EmptyDataError(f"session '{session}': no usable days at delta={delta}")
    return RvSeries(session, delta, tuple(entries), tuple(skipped))


def hansen_lunde_factor(daily_returns: ReturnSeries, rv: RvSeries) -> HlFactor:
    """Adjustment factor c = sum((R_t - mean R)^2) / sum(RV_t).

    Both inputs must cover exactly the same days.  Multiplying every RV by
    c makes the average adjusted RV match the daily-return variance; it is
    only meaningful when RV misses part of the day's trading.
    """
    if daily_returns.days != rv.days:
        raise AlignmentError(
            "daily returns and RV series must cover the same days "
            f"({len(daily_returns.days)} vs {len(rv.days)} days)"
        )
    n = len(daily_returns)
    if n < 2:
        raise InsufficientDataError("need at least 2 days for the adjustment factor")
    r = daily_returns.values
    denom = float(np.sum(rv.values))
    if denom <= 0.0:
        raise DegenerateDataError("total realized volatility is zero")
    num = float(np.sum((r - r.mean()) ** 2))
    return HlFactor(num / denom, n)

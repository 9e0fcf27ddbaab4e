"""Intraday log-return sampling and per-day time-zone returns.

Grid prices use previous-tick alignment (most recent in-session tick at or
before each grid point; no interpolation, no look-ahead).  All returns are
chronological: later log-price minus earlier log-price.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date

import numpy as np

from .errors import ConfigError, EmptyDataError, MissingDayError
from .market_data import DayTicks, TickSeries

ZONE_BREAK = "break"
ZONE_OVERNIGHT = "overnight"

# Sampling periods used for signature analysis, pruned per session to
# divisors of its duration so n = h/delta stays integral.
BASE_DELTA_GRID = (1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 40, 60)


def default_delta_grid(duration_min: int) -> tuple[int, ...]:
    """Sampling periods from the base grid that divide a session's length."""
    return tuple(d for d in BASE_DELTA_GRID if duration_min % d == 0)


@dataclass(frozen=True)
class SessionDayReturns:
    """Intraday log-returns of one (day, session) on a uniform grid."""

    day: date
    session: str
    returns: np.ndarray
    open_price: float
    close_price: float
    delta_min: int

    def __post_init__(self):
        self.returns.flags.writeable = False

    @property
    def n(self) -> int:
        return len(self.returns)


@dataclass(frozen=True)
class ReturnSeries:
    """One log-return per day for a session or time zone."""

    values: np.ndarray
    instrument: str
    label: str
    days: tuple[date, ...]
    delta_min: int | None = None  # None: per-day series

    def __post_init__(self):
        if len(self.values) != len(self.days):
            raise ValueError("values and days must be parallel")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("returns must all be finite")
        self.values.flags.writeable = False

    def __len__(self) -> int:
        return len(self.values)


def _session_arrays(ts: TickSeries, dt: DayTicks, label: str):
    mask = ts.spec.in_session_mask(label, dt.seconds)
    return dt.seconds[mask], dt.prices[mask]


def intraday_returns(ts: TickSeries, day: date, session: str, delta: int) -> SessionDayReturns:
    """Sample a session onto the grid open, open+delta, ..., close and difference logs.

    Parameters
    ----------
    ts : TickSeries
    day : date
    session : str
        Session label in ``ts.spec``.
    delta : int
        Sampling period in minutes; must divide the session duration.

    Returns
    -------
    SessionDayReturns
        n = h/delta consecutive log-price differences.

    Raises
    ------
    ConfigError
        Unknown label, or delta does not divide the session duration.
    MissingDayError
        The day has no tick at or before the opening grid point; such
        days are skipped by series-level callers.
    """
    sess = ts.spec.session(session)
    h = sess.duration_min
    if delta <= 0 or h % delta != 0:
        raise ConfigError(
            f"delta {delta} min does not divide session '{session}' duration {h} min"
        )
    dt = ts.day_ticks(day)
    if dt is None:
        raise MissingDayError(f"{day}: no ticks")
    secs, prices = _session_arrays(ts, dt, session)
    if len(secs) == 0:
        raise MissingDayError(f"{day}: no ticks in session '{session}'")

    grid = np.arange(sess.open_sec, sess.close_sec + 1, delta * 60, dtype=np.int64)
    idx = np.searchsorted(secs, grid, side="right") - 1
    if idx[0] < 0:
        raise MissingDayError(
            f"{day}: session '{session}' has no tick at or before the open"
        )
    log_grid = np.log(prices[idx])
    returns = np.diff(log_grid)
    return SessionDayReturns(
        day=day,
        session=session,
        returns=returns,
        open_price=float(prices[idx[0]]),
        close_price=float(prices[idx[-1]]),
        delta_min=delta,
    )


def zone_returns(ts: TickSeries, zone: str) -> ReturnSeries:
    """One log-return per day for a trading zone.

    ``zone`` is a session label (open-to-close within the session), or
    ``"break"`` (first session close to second session open; requires a
    two-session spec), or ``"overnight"`` (previous available day's last
    close to this day's first open).  Days missing either endpoint are
    skipped.
    """
    if zone in ts.spec.labels:
        return _session_zone(ts, zone)
    if zone == ZONE_BREAK:
        return _break_zone(ts)
    if zone == ZONE_OVERNIGHT:
        return _overnight_zone(ts)
    raise ConfigError(
        f"unknown zone '{zone}' (session labels, '{ZONE_BREAK}', or '{ZONE_OVERNIGHT}')"
    )


def _session_zone(ts: TickSeries, label: str) -> ReturnSeries:
    days, values = [], []
    for dt in ts.days:
        _, prices = _session_arrays(ts, dt, label)
        if len(prices) == 0:
            continue
        days.append(dt.day)
        values.append(np.log(prices[-1]) - np.log(prices[0]))
    if not days:
        raise EmptyDataError(f"no day has ticks in session '{label}'")
    return ReturnSeries(np.array(values), ts.instrument, label, tuple(days))


def _break_zone(ts: TickSeries) -> ReturnSeries:
    if len(ts.spec.sessions) != 2:
        raise ConfigError("'break' zone requires a spec with exactly two sessions")
    first, second = ts.spec.labels
    days, values = [], []
    for dt in ts.days:
        _, p_first = _session_arrays(ts, dt, first)
        _, p_second = _session_arrays(ts, dt, second)
        if len(p_first) == 0 or len(p_second) == 0:
            continue
        days.append(dt.day)
        values.append(np.log(p_second[0]) - np.log(p_first[-1]))
    if not days:
        raise EmptyDataError("no day has both break endpoints")
    return ReturnSeries(np.array(values), ts.instrument, ZONE_BREAK, tuple(days))


def _overnight_zone(ts: TickSeries) -> ReturnSeries:
    first = ts.spec.labels[0]
    last = ts.spec.labels[-1]
    days, values = [], []
    prev_close: float | None = None
    for dt in ts.days:
        _, p_first = _session_arrays(ts, dt, first)
        _, p_last = _session_arrays(ts, dt, last)
        if prev_close is not None and len(p_first) > 0:
            days.append(dt.day)
            values.append(np.log(p_first[0]) - np.log(prev_close))
        if len(p_last) > 0:
            prev_close = float(p_last[-1])
    if not days:
        raise EmptyDataError("need at least 2 usable days for overnight returns")
    return ReturnSeries(np.array(values), ts.instrument, ZONE_OVERNIGHT, tuple(days))

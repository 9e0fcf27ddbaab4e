"""Price/time data model and tick ingestion split into trading sessions.

Timestamps are exchange-local wall-clock at second precision; no timezone
arithmetic is performed anywhere.  A tick exactly at a session open belongs
to that session, and a tick exactly at a close belongs to that session
unless another session opens at the same instant (open takes precedence),
so the sessions partition the in-session ticks of a day.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date, datetime, time
from functools import cached_property
from pathlib import Path
from typing import Iterator

import numpy as np

from .config import parse_kv_file, reject_unknown_keys, repeated_values
from .errors import (
    ConfigError,
    EmptyDataError,
    ParseError,
    ValidationError,
)

SECONDS_PER_DAY = 86_400


def time_to_sec(t: time) -> int:
    return t.hour * 3600 + t.minute * 60 + t.second


def sec_to_time(sec: int) -> time:
    return time(sec // 3600, (sec % 3600) // 60, sec % 60)


@dataclass(frozen=True)
class Tick:
    """One observed trade: exchange-local timestamp and a positive price."""

    timestamp: datetime
    price: float

    def __post_init__(self):
        if not (math.isfinite(self.price) and self.price > 0):
            raise ValueError(f"tick price must be finite and > 0, got {self.price}")


@dataclass(frozen=True)
class Session:
    """A trading session: label plus open/close clock times (whole minutes)."""

    label: str
    open: time
    close: time

    def __post_init__(self):
        if not self.label:
            raise ConfigError("session label must be non-empty")
        if self.open.second or self.close.second:
            raise ConfigError(
                f"session '{self.label}': open/close must be whole minutes"
            )
        if self.close_sec <= self.open_sec:
            raise ConfigError(
                f"session '{self.label}': close must be after open"
            )

    @property
    def open_sec(self) -> int:
        return time_to_sec(self.open)

    @property
    def close_sec(self) -> int:
        return time_to_sec(self.close)

    @property
    def duration_min(self) -> int:
        """Session length h in minutes."""
        return (self.close_sec - self.open_sec) // 60


@dataclass(frozen=True)
class SessionSpec:
    """Ordered, non-overlapping trading sessions of one exchange day."""

    sessions: tuple[Session, ...]

    def __post_init__(self):
        if not self.sessions:
            raise ConfigError("session spec needs at least one session")
        labels = [s.label for s in self.sessions]
        if len(set(labels)) != len(labels):
            raise ConfigError("session labels must be unique")
        for prev, cur in zip(self.sessions, self.sessions[1:]):
            if cur.open_sec < prev.close_sec:
                raise ConfigError(
                    f"sessions '{prev.label}' and '{cur.label}' overlap or are out of order"
                )

    @classmethod
    def tse(cls) -> "SessionSpec":
        """Tokyo Stock Exchange calendar: MS 9:00-11:00, AS 12:30-15:00."""
        return cls(
            (
                Session("MS", time(9, 0), time(11, 0)),
                Session("AS", time(12, 30), time(15, 0)),
            )
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "SessionSpec":
        """Load from a key-value file with `session = LABEL,HH:MM,HH:MM` lines."""
        entries = parse_kv_file(path)
        reject_unknown_keys(entries, {"session"}, path)
        return cls(tuple(_parse_session_line(v, path, ln)
                         for v, ln in repeated_values(entries, "session")))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.sessions)

    def session(self, label: str) -> Session:
        for s in self.sessions:
            if s.label == label:
                return s
        raise ConfigError(f"unknown session label '{label}' (have: {', '.join(self.labels)})")

    def session_of_sec(self, sec: int) -> str | None:
        """Label owning a time-of-day, or None if outside all sessions.

        A shared boundary (one session's close equals another's open) is
        owned by the opening session.
        """
        for s in self.sessions:
            if sec == s.open_sec:
                return s.label
        for s in self.sessions:
            if s.open_sec <= sec <= s.close_sec:
                return s.label
        return None

    def in_session_mask(self, label: str, seconds: np.ndarray) -> np.ndarray:
        """Vectorized membership of times-of-day (seconds) in a session."""
        s = self.session(label)
        mask = (seconds >= s.open_sec) & (seconds <= s.close_sec)
        for other in self.sessions:
            if other.label != label and other.open_sec == s.close_sec:
                mask &= seconds != s.close_sec
        return mask


def _parse_session_line(value: str, path, lineno: int) -> Session:
    parts = [p.strip() for p in value.split(",")]
    if len(parts) != 3:
        raise ParseError("expected 'LABEL,HH:MM,HH:MM'", path, lineno)
    label, open_s, close_s = parts
    try:
        open_t = _parse_hhmm(open_s)
        close_t = _parse_hhmm(close_s)
    except ValueError as exc:
        raise ParseError(f"bad session time: {exc}", path, lineno) from exc
    return Session(label, open_t, close_t)


def _parse_hhmm(s: str) -> time:
    hh, _, mm = s.partition(":")
    return time(int(hh), int(mm))


@dataclass(frozen=True)
class DayTicks:
    """All in-session ticks of one day as parallel arrays.

    ``seconds`` holds strictly increasing times-of-day; both arrays are
    read-only after construction.
    """

    day: date
    seconds: np.ndarray
    prices: np.ndarray

    def __post_init__(self):
        if self.seconds.shape != self.prices.shape or self.seconds.ndim != 1:
            raise ValueError("seconds/prices must be parallel 1-d arrays")
        if len(self.seconds) == 0:
            raise ValueError("a DayTicks must hold at least one tick")
        if np.any(np.diff(self.seconds) <= 0):
            raise ValueError(f"{self.day}: tick times must be strictly increasing")
        if not np.all(np.isfinite(self.prices)) or np.any(self.prices <= 0):
            raise ValueError(f"{self.day}: prices must be finite and > 0")
        self.seconds.flags.writeable = False
        self.prices.flags.writeable = False

    def __len__(self) -> int:
        return len(self.seconds)


@dataclass(frozen=True)
class TickSeries:
    """Immutable tick history of one instrument, restricted to in-session ticks.

    Safe to share across concurrent readers; all arrays are frozen.
    """

    instrument: str
    spec: SessionSpec
    days: tuple[DayTicks, ...]
    dropped_out_of_session: int = 0

    def __post_init__(self):
        for prev, cur in zip(self.days, self.days[1:]):
            if cur.day <= prev.day:
                raise ValueError("days must be strictly increasing")

    @cached_property
    def _by_day(self) -> dict[date, DayTicks]:
        return {d.day: d for d in self.days}

    @property
    def n_ticks(self) -> int:
        return sum(len(d) for d in self.days)

    @property
    def day_dates(self) -> tuple[date, ...]:
        return tuple(d.day for d in self.days)

    def day_ticks(self, day: date) -> DayTicks | None:
        return self._by_day.get(day)

    def iter_ticks(self) -> Iterator[Tick]:
        for dt in self.days:
            for sec, price in zip(dt.seconds.tolist(), dt.prices.tolist()):
                yield Tick(datetime.combine(dt.day, sec_to_time(sec)), price)

    @property
    def ticks(self) -> tuple[Tick, ...]:
        """Materialized tick objects; O(n), meant for inspection and tests."""
        return tuple(self.iter_ticks())


def session_slices(ts: TickSeries, day: date, label: str) -> list[Tick]:
    """Ticks of `day` owned by the labeled session, in time order.

    Returns an empty list when the day has no data.  Boundary ownership
    follows `SessionSpec.session_of_sec`, so slices over all labels
    partition the in-session ticks of the day.
    """
    ts.spec.session(label)
    dt = ts.day_ticks(day)
    if dt is None:
        return []
    mask = ts.spec.in_session_mask(label, dt.seconds)
    base = datetime.combine(day, time(0, 0))
    return [
        Tick(datetime.combine(day, sec_to_time(int(sec))), float(price))
        for sec, price in zip(dt.seconds[mask].tolist(), dt.prices[mask].tolist())
    ]


def ingest_csv(path: str | Path, spec: SessionSpec, instrument: str | None = None) -> TickSeries:
    """Read a `date,time,price` CSV into a TickSeries.

    Rows must be time-ordered.  Duplicate timestamps collapse to the last
    price; ticks outside every session are dropped and counted in
    ``dropped_out_of_session``.

    Parameters
    ----------
    path : str or Path
        CSV file with header ``date,time,price`` (YYYY-MM-DD, HH:MM:SS,
        positive decimal), UTF-8, LF or CRLF.
    spec : SessionSpec
        Trading calendar used to classify ticks.
    instrument : str, optional
        Identifier; defaults to the file stem.

    Raises
    ------
    ParseError
        Malformed header, row, number, or timestamp (names the line).
    ValidationError
        Non-positive or non-finite price (names the line).
    EmptyDataError
        No usable in-session ticks remain.
    """
    path = Path(path)
    if instrument is None:
        instrument = path.stem

    day_list: list[DayTicks] = []
    cur_day: date | None = None
    cur_secs: list[int] = []
    cur_prices: list[float] = []
    last_key: tuple[date, int] | None = None
    dropped = 0

    def flush():
        if cur_day is not None and cur_secs:
            day_list.append(
                DayTicks(cur_day, np.array(cur_secs, dtype=np.int64),
                         np.array(cur_prices, dtype=np.float64))
            )

    with open(path, encoding="utf-8-sig", newline="") as fh:
        header = fh.readline()
        if [c.strip().lower() for c in header.strip().split(",")] != ["date", "time", "price"]:
            raise ParseError("expected header 'date,time,price'", path, 1)
        for lineno, raw in enumerate(fh, start=2):
            line = raw.strip()
            if not line:
                continue
            fields = line.split(",")
            if len(fields) != 3:
                raise ParseError(f"expected 3 fields, got {len(fields)}", path, lineno)
            date_s, time_s, price_s = fields
            try:
                y, m, d = date_s.split("-")
                day = date(int(y), int(m), int(d))
                hh, mm, ss = time_s.split(":")
                sec = int(hh) * 3600 + int(mm) * 60 + int(ss)
                if not 0 <= sec < SECONDS_PER_DAY or not (0 <= int(hh) < 24 and 0 <= int(mm) < 60 and 0 <= int(ss) < 60):
                    raise ValueError("time out of range")
            except ValueError as exc:
                raise ParseError(f"bad timestamp '{date_s} {time_s}': {exc}", path, lineno) from exc
            try:
                price = float(price_s)
            except ValueError as exc:
                raise ParseError(f"bad price '{price_s}'", path, lineno) from exc
            if not math.isfinite(price) or price <= 0:
                raise ValidationError(f"price must be finite and > 0, got '{price_s}'", path, lineno)

            key = (day, sec)
            if last_key is not None and key < last_key:
                raise ParseError("timestamps must be non-decreasing", path, lineno)
            last_key = key

            if spec.session_of_sec(sec) is None:
                dropped += 1
                continue
            if day != cur_day:
                flush()
                cur_day = day
                cur_secs, cur_prices = [], []
            if cur_secs and cur_secs[-1] == sec:
                cur_prices[-1] = price  # duplicate timestamp: keep last trade
            else:
                cur_secs.append(sec)
                cur_prices.append(price)
    flush()

    if not day_list:
        raise EmptyDataError(f"{path}: no usable in-session ticks")
    return TickSeries(instrument, spec, tuple(day_list), dropped)

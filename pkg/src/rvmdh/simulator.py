"""Synthetic tick data: driftless log-price diffusion plus observation noise.

The latent log-price follows Euler steps d(ln P) = sigma * sqrt(dt) * z
inside trading sessions (for piecewise-constant spot vol this is exact in
distribution), and is frozen over lunch breaks and overnight unless
``diffuse_closed`` is set.  Each observed tick adds fresh Gaussian noise
on the log-price.  Spot volatility is constant, or follows a daily
lognormal Ornstein-Uhlenbeck chain (fat-tailed, clustering returns).

The exact integrated volatility per (day, session) is recorded alongside
the ticks, so every realized-volatility estimate can be checked against
ground truth.

Per-day randomness comes from counter-based Philox substreams keyed on
(seed, day index): identical configs give bit-identical output regardless
of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, timedelta
from functools import cached_property
from pathlib import Path

import numpy as np

from .config import (
    parse_bool,
    parse_kv_file,
    reject_unknown_keys,
    repeated_values,
    single_value,
)
from .errors import ConfigError, SimulationDivergedError
from .market_data import (
    DayTicks,
    SessionSpec,
    TickSeries,
    _parse_session_line,
)

_DAY_STREAM = 0
_VOL_STREAM = 1

_LN_PRICE_LIMIT = 300.0  # exp() overflows near 709; halve for headroom


@dataclass(frozen=True)
class ConstantVol:
    """Constant spot volatility, in log-price units per sqrt(minute)."""

    sigma: float

    def __post_init__(self):
        if not self.sigma >= 0:
            raise ConfigError(f"sigma must be >= 0, got {self.sigma}")


@dataclass(frozen=True)
class LognormalOuVol:
    """Daily lognormal OU spot volatility.

    log sigma_d mean-reverts to ``log_vol_mean`` at rate ``reversion``
    per day with diffusion coefficient ``vol_of_vol`` (per sqrt(day)),
    discretized exactly at daily steps and started from the stationary
    distribution.  Volatility is constant within each day.
    """

    log_vol_mean: float
    reversion: float
    vol_of_vol: float

    def __post_init__(self):
        if not self.reversion > 0:
            raise ConfigError(f"reversion must be > 0, got {self.reversion}")
        if not self.vol_of_vol >= 0:
            raise ConfigError(f"vol_of_vol must be >= 0, got {self.vol_of_vol}")

    @property
    def stationary_std(self) -> float:
        return self.vol_of_vol / np.sqrt(2.0 * self.reversion)


VolModel = ConstantVol | LognormalOuVol


@dataclass(frozen=True)
class SimConfig:
    """Full simulation recipe; equal configs give bit-identical output."""

    seed: int
    n_days: int
    spec: SessionSpec
    vol_model: VolModel
    noise_std: float = 0.0
    tick_interval: int = 60  # seconds; must divide 60
    initial_price: float = 100.0
    start_day: date = date(2020, 1, 6)
    instrument: str = "SIM"
    diffuse_closed: bool = False

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.n_days < 1:
            raise ConfigError(f"n_days must be >= 1, got {self.n_days}")
        if self.tick_interval < 1 or 60 % self.tick_interval != 0:
            raise ConfigError(
                f"tick_interval must divide 60 seconds, got {self.tick_interval}"
            )
        if not self.noise_std >= 0:
            raise ConfigError(f"noise_std must be >= 0, got {self.noise_std}")
        if not self.initial_price > 0:
            raise ConfigError(f"initial_price must be > 0, got {self.initial_price}")

    @classmethod
    def from_file(cls, path: str | Path) -> "SimConfig":
        return _config_from_file(path)


_CONFIG_KEYS = {
    "session",
    "seed",
    "n_days",
    "vol_model",
    "sigma",
    "log_vol_mean",
    "reversion",
    "vol_of_vol",
    "noise_std",
    "tick_interval",
    "initial_price",
    "start_day",
    "instrument",
    "diffuse_closed",
}


def _config_from_file(path) -> SimConfig:
    entries = parse_kv_file(path)
    reject_unknown_keys(entries, _CONFIG_KEYS, path)
    session_lines = repeated_values(entries, "session")
    if not session_lines:
        raise ConfigError(f"{path}: missing required key 'session'")
    spec = SessionSpec(tuple(_parse_session_line(v, path, ln) for v, ln in session_lines))

    def req(key):
        return single_value(entries, key, path)

    def opt(key, default):
        return single_value(entries, key, path, required=False, default=default)

    def num(key, value, cast):
        try:
            return cast(value)
        except ValueError as exc:
            raise ConfigError(f"{path}: key '{key}' has a bad value '{value}'") from exc

    model_name = req("vol_model")
    if model_name == "constant":
        vol_model: VolModel = ConstantVol(num("sigma", req("sigma"), float))
    elif model_name == "lognormal_ou":
        vol_model = LognormalOuVol(
            log_vol_mean=num("log_vol_mean", req("log_vol_mean"), float),
            reversion=num("reversion", req("reversion"), float),
            vol_of_vol=num("vol_of_vol", req("vol_of_vol"), float),
        )
    else:
        raise ConfigError(
            f"{path}: vol_model must be 'constant' or 'lognormal_ou', got '{model_name}'"
        )

    start_raw = opt("start_day", "2020-01-06")
    try:
        start_day = date.fromisoformat(start_raw)
    except ValueError as exc:
        raise ConfigError(f"{path}: bad start_day '{start_raw}'") from exc

    return SimConfig(
        seed=num("seed", req("seed"), int),
        n_days=num("n_days", req("n_days"), int),
        spec=spec,
        vol_model=vol_model,
        noise_std=num("noise_std", req("noise_std"), float),
        tick_interval=num("tick_interval", opt("tick_interval", "60"), int),
        initial_price=num("initial_price", opt("initial_price", "100.0"), float),
        start_day=start_day,
        instrument=opt("instrument", "SIM"),
        diffuse_closed=parse_bool(opt("diffuse_closed", "false"), "diffuse_closed", path),
    )


@dataclass(frozen=True)
class TrueIvEntry:
    """Exact integrated volatility of one (day, session)."""

    day: date
    session: str
    iv: float


@dataclass(frozen=True)
class SimOutput:
    """Observed ticks plus the latent path and exact per-session IV."""

    ticks: TickSeries
    true_iv: tuple[TrueIvEntry, ...]
    latent_log_prices: np.ndarray  # (n_days, ticks_per_day)
    tick_seconds: np.ndarray
    session_tick_ranges: dict[str, tuple[int, int]]
    day_spot_vol: np.ndarray  # sigma per day, per sqrt(minute)
    config: SimConfig

    def __post_init__(self):
        self.latent_log_prices.flags.writeable = False
        self.day_spot_vol.flags.writeable = False

    @cached_property
    def day_index(self) -> dict[date, int]:
        return {dt.day: i for i, dt in enumerate(self.ticks.days)}

    @cached_property
    def iv_index(self) -> dict[tuple[date, str], float]:
        return {(e.day, e.session): e.iv for e in self.true_iv}


def _rng(seed: int, spawn_key: tuple[int, ...]) -> np.random.Generator:
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=spawn_key))
    )


def _daily_spot_vol(config: SimConfig) -> np.ndarray:
    model = config.vol_model
    if isinstance(model, ConstantVol):
        return np.full(config.n_days, model.sigma)
    rng = _rng(config.seed, (_VOL_STREAM,))
    z = rng.standard_normal(config.n_days)
    phi = float(np.exp(-model.reversion))
    innov_std = model.vol_of_vol * np.sqrt(
        (1.0 - phi * phi) / (2.0 * model.reversion)
    )
    x = np.empty(config.n_days)
    x[0] = model.log_vol_mean + model.stationary_std * z[0]
    for d in range(1, config.n_days):
        x[d] = model.log_vol_mean + phi * (x[d - 1] - model.log_vol_mean) + innov_std * z[d]
    return np.exp(x)


def simulate(config: SimConfig) -> SimOutput:
    """Generate observed ticks and ground truth for ``config``.

    Returns
    -------
    SimOutput
        ``ticks`` hold observed prices exp(latent + noise) on the tick
        grid of every session; ``true_iv`` holds the exact integrated
        volatility sigma_d^2 * h per (day, session).

    Raises
    ------
    SimulationDivergedError
        The latent log-price left the representable range.
    """
    spec = config.spec
    dt_min = config.tick_interval / 60.0
    grids = [
        np.arange(s.open_sec, s.close_sec + 1, config.tick_interval, dtype=np.int64)
        for s in spec.sessions
    ]
    seconds = np.concatenate(grids)
    seconds.flags.writeable = False
    steps_per_session = [len(g) - 1 for g in grids]
    total_steps = sum(steps_per_session)
    n_ticks = len(seconds)

    ranges: dict[str, tuple[int, int]] = {}
    offset = 0
    for s, g in zip(spec.sessions, grids):
        ranges[s.label] = (offset, offset + len(g))
        offset += len(g)

    # Closed-market gaps in minutes: index 0 is overnight (into the first
    # session), the rest are breaks between consecutive sessions.
    first_open = spec.sessions[0].open_sec
    last_close = spec.sessions[-1].close_sec
    gaps_min = [(86_400 - last_close + first_open) / 60.0]
    gaps_min += [
        (nxt.open_sec - cur.close_sec) / 60.0
        for cur, nxt in zip(spec.sessions, spec.sessions[1:])
    ]

    sigma_day = _daily_spot_vol(config)
    sqrt_dt = np.sqrt(dt_min)

    latent = np.empty((config.n_days, n_ticks))
    observed = np.empty_like(latent)
    iv_entries: list[TrueIvEntry] = []
    days: list[date] = []
    carry = float(np.log(config.initial_price))

    for d in range(config.n_days):
        day = config.start_day + timedelta(days=d)
        days.append(day)
        sigma = float(sigma_day[d])
        rng = _rng(config.seed, (_DAY_STREAM, d))
        z = rng.standard_normal(total_steps)
        z_gap = rng.standard_normal(len(gaps_min)) if config.diffuse_closed else None

        row = latent[d]
        pos = 0
        z_pos = 0
        cur = carry
        for k, (g, n_steps) in enumerate(zip(grids, steps_per_session)):
            if z_gap is not None and not (d == 0 and k == 0):
                cur += sigma * np.sqrt(gaps_min[k]) * z_gap[k]
            seg = cur + np.concatenate(
                ([0.0], np.cumsum(sigma * sqrt_dt * z[z_pos : z_pos + n_steps]))
            )
            row[pos : pos + len(g)] = seg
            cur = float(seg[-1])
            pos += len(g)
            z_pos += n_steps
        carry = cur

        if np.max(np.abs(row)) > _LN_PRICE_LIMIT:
            raise SimulationDivergedError(
                f"latent log-price exceeded +/-{_LN_PRICE_LIMIT} on day {day}"
            )
        if config.noise_std > 0:
            observed[d] = row + config.noise_std * rng.standard_normal(n_ticks)
        else:
            observed[d] = row
        for s in spec.sessions:
            iv_entries.append(TrueIvEntry(day, s.label, sigma * sigma * s.duration_min))

    prices = np.exp(observed)
    day_ticks = tuple(
        DayTicks(day, seconds, prices[d]) for d, day in enumerate(days)
    )
    ticks = TickSeries(config.instrument, spec, day_ticks)
    return SimOutput(
        ticks=ticks,
        true_iv=tuple(iv_entries),
        latent_log_prices=latent,
        tick_seconds=seconds,
        session_tick_ranges=ranges,
        day_spot_vol=sigma_day,
        config=config,
    )


def true_session_return(output: SimOutput, day: date, session: str) -> float:
    """Latent (pre-noise) session return: log close minus log open."""
    output.config.spec.session(session)
    try:
        row = output.day_index[day]
    except KeyError:
        raise KeyError(f"day {day} was not simulated") from None
    start, stop = output.session_tick_ranges[session]
    latent = output.latent_log_prices[row]
    return float(latent[stop - 1] - latent[start])


def true_iv_lookup(output: SimOutput, day: date, session: str) -> float:
    """Exact integrated volatility for one (day, session)."""
    try:
        return output.iv_index[(day, session)]
    except KeyError:
        raise KeyError(f"no simulated ({day}, '{session}') entry") from None

from datetime import date, time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rvmdh import (
    ConfigError,
    EmptyDataError,
    ParseError,
    Session,
    SessionSpec,
    Tick,
    ValidationError,
    ingest_csv,
    session_slices,
)
from rvmdh.dataio import write_ticks_csv

from conftest import write_tick_csv


def test_ingest_minimal_file(tmp_path, tse_spec):
    path = write_tick_csv(
        tmp_path / "t.csv",
        [("2021-03-01", "09:00:00", "100.0"), ("2021-03-01", "09:05:00", "101.0")],
    )
    ts = ingest_csv(path, tse_spec)
    assert ts.n_ticks == 2
    assert ts.instrument == "t"
    assert ts.dropped_out_of_session == 0
    ticks = ts.ticks
    assert ticks[0].price == 100.0
    assert ticks[1].timestamp.time() == time(9, 5)


def test_ingest_negative_price_names_line(tmp_path, tse_spec):
    path = write_tick_csv(
        tmp_path / "t.csv",
        [("2021-03-01", "09:00:00", "100.0"), ("2021-03-01", "09:01:00", "-5")],
    )
    with pytest.raises(ValidationError) as exc:
        ingest_csv(path, tse_spec)
    assert exc.value.line == 3
    assert ":3" in str(exc.value)


def test_ingest_lunch_tick_dropped(tmp_path, tse_spec):
    path = write_tick_csv(
        tmp_path / "t.csv",
        [
            ("2021-03-01", "09:00:00", "100.0"),
            ("2021-03-01", "11:30:00", "101.0"),
            ("2021-03-01", "12:30:00", "102.0"),
        ],
    )
    ts = ingest_csv(path, tse_spec)
    assert ts.dropped_out_of_session == 1
    assert ts.n_ticks == 2


def test_ingest_duplicate_timestamp_keeps_last(tmp_path, tse_spec):
    path = write_tick_csv(
        tmp_path / "t.csv",
        [
            ("2021-03-01", "09:00:00", "100.0"),
            ("2021-03-01", "09:00:00", "105.0"),
            ("2021-03-01", "09:01:00", "101.0"),
        ],
    )
    ts = ingest_csv(path, tse_spec)
    assert ts.n_ticks == 2
    assert ts.days[0].prices[0] == 105.0


def test_ingest_out_of_order_rejected(tmp_path, tse_spec):
    path = write_tick_csv(
        tmp_path / "t.csv",
        [("2021-03-01", "09:05:00", "100.0"), ("2021-03-01", "09:00:00", "101.0")],
    )
    with pytest.raises(ParseError) as exc:
        ingest_csv(path, tse_spec)
    assert exc.value.line == 3


@pytest.mark.parametrize(
    "row",
    [
        ("2021-03-01", "09:00:00", "abc"),
        ("2021-03-01", "25:00:00", "100.0"),
        ("2021-13-01", "09:00:00", "100.0"),
        ("2021-03-01", "09:00", "100.0"),
    ],
)
def test_ingest_malformed_row(tmp_path, tse_spec, row):
    path = write_tick_csv(tmp_path / "t.csv", [("2021-03-01", "09:00:00", "100.0"), row])
    with pytest.raises(ParseError) as exc:
        ingest_csv(path, tse_spec)
    assert exc.value.line == 3


def test_ingest_bad_header(tmp_path, tse_spec):
    path = write_tick_csv(tmp_path / "t.csv", [], header="time,price")
    with pytest.raises(ParseError) as exc:
        ingest_csv(path, tse_spec)
    assert exc.value.line == 1


def test_ingest_no_usable_ticks(tmp_path, tse_spec):
    path = write_tick_csv(tmp_path / "t.csv", [("2021-03-01", "11:30:00", "100.0")])
    with pytest.raises(EmptyDataError):
        ingest_csv(path, tse_spec)


def test_ingest_crlf_and_bom(tmp_path, tse_spec):
    raw = "﻿date,time,price\r\n2021-03-01,09:00:00,100.0\r\n2021-03-01,09:01:00,101.0\r\n"
    path = tmp_path / "t.csv"
    path.write_bytes(raw.encode("utf-8"))
    ts = ingest_csv(path, tse_spec)
    assert ts.n_ticks == 2


def test_nonpositive_infinite_prices_rejected(tmp_path, tse_spec):
    for bad in ("0", "inf", "nan"):
        path = write_tick_csv(tmp_path / "t.csv", [("2021-03-01", "09:00:00", bad)])
        with pytest.raises(ValidationError):
            ingest_csv(path, tse_spec)


def test_session_slices_empty_and_subset(tmp_path, tse_spec):
    day = date(2021, 3, 1)
    path = write_tick_csv(
        tmp_path / "t.csv",
        [
            ("2021-03-01", "09:00:00", "100.0"),
            ("2021-03-01", "10:59:59", "101.0"),
            ("2021-03-01", "11:00:00", "102.0"),
        ],
    )
    ts = ingest_csv(path, tse_spec)
    assert session_slices(ts, day, "AS") == []
    ms = session_slices(ts, day, "MS")
    assert [t.price for t in ms] == [100.0, 101.0, 102.0]  # 11:00 close included


def test_session_slices_partition(tmp_path, tse_spec):
    day = date(2021, 3, 1)
    rows = [
        ("2021-03-01", "09:00:00", "100.0"),
        ("2021-03-01", "10:30:00", "101.0"),
        ("2021-03-01", "12:30:00", "102.0"),
        ("2021-03-01", "15:00:00", "103.0"),
    ]
    ts = ingest_csv(write_tick_csv(tmp_path / "t.csv", rows), tse_spec)
    ms = session_slices(ts, day, "MS")
    as_ = session_slices(ts, day, "AS")
    all_ticks = ts.ticks
    assert len(ms) + len(as_) == len(all_ticks)
    assert {t.timestamp for t in ms}.isdisjoint({t.timestamp for t in as_})


def test_session_slices_unknown_label(diffusion_sim):
    with pytest.raises(ConfigError):
        session_slices(diffusion_sim.ticks, diffusion_sim.ticks.days[0].day, "XX")


def test_session_slices_missing_day(diffusion_sim):
    assert session_slices(diffusion_sim.ticks, date(1999, 1, 1), "MS") == []


def test_boundary_open_takes_precedence(tmp_path):
    spec = SessionSpec(
        (Session("A", time(9, 0), time(10, 0)), Session("B", time(10, 0), time(11, 0)))
    )
    rows = [
        ("2021-03-01", "09:30:00", "100.0"),
        ("2021-03-01", "10:00:00", "101.0"),
        ("2021-03-01", "10:30:00", "102.0"),
    ]
    ts = ingest_csv(write_tick_csv(tmp_path / "t.csv", rows), spec)
    day = date(2021, 3, 1)
    a = session_slices(ts, day, "A")
    b = session_slices(ts, day, "B")
    assert [t.price for t in a] == [100.0]
    assert [t.price for t in b] == [101.0, 102.0]
    assert spec.session_of_sec(10 * 3600) == "B"


def test_per_session_tick_counts_match_simulator(diffusion_sim):
    # The generator lays down one tick per interval from open to close.
    ts = diffusion_sim.ticks
    for label, (start, stop) in diffusion_sim.session_tick_ranges.items():
        for dt in ts.days[:5]:
            assert len(session_slices(ts, dt.day, label)) == stop - start


def test_spec_from_file(tmp_path):
    path = tmp_path / "s.conf"
    path.write_text("# calendar\nsession = MS,09:00,11:00\nsession = AS,12:30,15:00\n")
    spec = SessionSpec.from_file(path)
    assert spec.labels == ("MS", "AS")
    assert spec.session("MS").duration_min == 120
    assert spec.session("AS").duration_min == 150


def test_spec_file_rejects_unknown_key(tmp_path):
    path = tmp_path / "s.conf"
    path.write_text("session = MS,09:00,11:00\nseeed = 3\n")
    with pytest.raises(ConfigError):
        SessionSpec.from_file(path)


def test_spec_file_bad_session_line(tmp_path):
    path = tmp_path / "s.conf"
    path.write_text("session = MS,09:00\n")
    with pytest.raises(ParseError):
        SessionSpec.from_file(path)


def test_spec_validation():
    with pytest.raises(ConfigError):
        SessionSpec(())
    with pytest.raises(ConfigError):
        Session("X", time(11, 0), time(9, 0))
    with pytest.raises(ConfigError):
        SessionSpec(
            (Session("A", time(9, 0), time(11, 0)), Session("B", time(10, 0), time(12, 0)))
        )
    with pytest.raises(ConfigError):
        SessionSpec(
            (Session("A", time(9, 0), time(10, 0)), Session("A", time(11, 0), time(12, 0)))
        )


def test_tick_validates_price():
    from datetime import datetime

    with pytest.raises(ValueError):
        Tick(datetime(2021, 3, 1, 9, 0), -1.0)


def test_tickseries_immutable(diffusion_sim):
    dt = diffusion_sim.ticks.days[0]
    with pytest.raises(ValueError):
        dt.prices[0] = 5.0


@st.composite
def tick_rows(draw):
    n_days = draw(st.integers(1, 3))
    rows = []
    for d in range(n_days):
        day = date(2021, 3, 1 + d)
        secs = draw(
            st.lists(
                st.integers(9 * 3600, 11 * 3600), min_size=1, max_size=8, unique=True
            )
        )
        for sec in sorted(secs):
            price = draw(st.floats(0.01, 1e4, allow_nan=False, allow_infinity=False))
            rows.append((day.isoformat(), f"{sec//3600:02d}:{sec%3600//60:02d}:{sec%60:02d}", repr(price)))
    return rows


@settings(max_examples=40, deadline=None)
@given(rows=tick_rows())
def test_ingest_write_ingest_idempotent(tmp_path_factory, tse_spec, rows):
    tmp = tmp_path_factory.mktemp("idem")
    first = write_tick_csv(tmp / "a.csv", rows)
    ts1 = ingest_csv(first, tse_spec)
    out = tmp / "b.csv"
    write_ticks_csv(ts1, out)
    ts2 = ingest_csv(out, tse_spec)
    assert ts1.day_dates == ts2.day_dates
    for d1, d2 in zip(ts1.days, ts2.days):
        assert np.array_equal(d1.seconds, d2.seconds)
        assert np.array_equal(d1.prices, d2.prices)
    round_trip = tmp / "c.csv"
    write_ticks_csv(ts2, round_trip)
    assert out.read_bytes() == round_trip.read_bytes()

import numpy as np
import pytest

from rvmdh import ConstantVol, SessionSpec, SimConfig, simulate


@pytest.fixture(scope="session")
def tse_spec():
    return SessionSpec.tse()


@pytest.fixture(scope="session")
def diffusion_sim(tse_spec):
    """100-day constant-vol diffusion, no observation noise."""
    cfg = SimConfig(
        seed=1234,
        n_days=100,
        spec=tse_spec,
        vol_model=ConstantVol(1.4e-3),
        noise_std=0.0,
    )
    return simulate(cfg)


@pytest.fixture(scope="session")
def noisy_sim(tse_spec):
    """200-day constant-vol diffusion with observation noise."""
    sigma = float(np.sqrt(2.5e-4 / 120.0))
    omega = float(np.sqrt(0.3525) * sigma)
    cfg = SimConfig(
        seed=42,
        n_days=200,
        spec=tse_spec,
        vol_model=ConstantVol(sigma),
        noise_std=omega,
    )
    return simulate(cfg)


def write_tick_csv(path, rows, header="date,time,price"):
    """Write a tick file from (date_str, time_str, price_str) rows."""
    lines = [header] + [",".join(str(f) for f in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def tse_spec_file(tmp_path):
    path = tmp_path / "sessions.conf"
    path.write_text("session = MS,09:00,11:00\nsession = AS,12:30,15:00\n")
    return path

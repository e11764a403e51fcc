import numpy as np
import pytest

from lambdagate import noise
from lambdagate.quantum_core import IDX_0, IDX_P1


def test_continuum_sigma_scale():
    var = noise.continuum_field_variance(0.004, 20.0)
    sigma_khz = np.sqrt(var) * 2.80 * 1e3
    assert 2.0 < sigma_khz < 5.0


def test_geometry_normalizes_variance():
    cfg = noise.SurfaceBathConfig()
    g = noise.sample_bath_geometry(cfg, np.random.default_rng(3))
    assert 0.25 * np.sum((g.scale * g.coef) ** 2) == pytest.approx(
        noise.continuum_field_variance(cfg.rho_s, cfg.depth_nm))


def test_pair_rates():
    assert noise.pair_rates(0.0, 5.0, 0.01) == pytest.approx(100.0)


def test_kmc_event_count_matches_total_rate():
    g = noise.sample_bath_geometry(noise.SurfaceBathConfig(tau_c_ns=1000.0), np.random.default_rng(1))
    rng = np.random.default_rng(2)
    T = 5.0
    counts = [len(noise.kmc_events(g, T, rng)[0]) for _ in range(400)]
    lam = g.total_rate * T
    assert np.mean(counts) == pytest.approx(lam, abs=4 * np.sqrt(lam / 400))


def test_swap_conserves_magnetization():
    g = noise.sample_bath_geometry(noise.SurfaceBathConfig(n_spins=6), np.random.default_rng(0))
    spins = [0.5, 0.5, 0.5, -0.5, -0.5, -0.5]
    tr = noise.kmc_field_trace(g, 0.5, np.random.default_rng(1), spins=spins)
    # field is piecewise constant and bounded by the extreme configurations
    bound = 0.5 * np.sum(np.abs(g.coef)) * g.scale
    assert np.all(np.abs(tr.B) <= bound + 1e-12)


def test_collapse_sets():
    assert len(noise.lindblad_collapse_set()) == 0
    nv = noise.lindblad_collapse_set(1000.0, 500.0)
    assert len(nv) == 5
    siv = noise.lindblad_collapse_set(platform="SiV", T1_orb=0.143)
    assert siv.rates == pytest.approx((0.5 / 0.143, 0.5 / 0.143))
    assert siv.ops[0][IDX_P1, IDX_0] == 1
    with pytest.raises(ValueError):
        noise.lindblad_collapse_set(-1.0)
    with pytest.raises(ValueError):
        noise.SurfaceBathConfig(hopping="teleport")


def test_trace_export(tmp_path):
    g = noise.sample_bath_geometry(noise.SurfaceBathConfig(), np.random.default_rng(0))
    tr = noise.kmc_field_trace(g, 1.0, np.random.default_rng(0), n_grid=50)
    p = noise.export_trace_csv(tr, tmp_path / "b.csv")
    assert len(open(p).read().splitlines()) == 51

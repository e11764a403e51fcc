import numpy as np
import pytest

from lambdagate import sectors


@pytest.mark.parametrize("s,f0,fB", [("A2", 1, 0), ("Ex", 0, 1), ("Ey", 0, 1)])
def test_routing(s, f0, fB):
    r = sectors.sector_injection(s, phase_sigmas=[])
    assert r.f0 == pytest.approx(f0, abs=1e-9) and r.fB == pytest.approx(fB, abs=1e-9)
    assert r.weight_slope == pytest.approx(2.0, abs=0.05)


def test_a1_uncoupled():
    r = sectors.sector_injection("A1")
    assert not r.coupled


def test_unknown_sector():
    with pytest.raises(ValueError):
        sectors.sector_operator("T2")


def test_parity_filter():
    assert sectors.parity_filter_check() < 1e-12


def test_mixed_scan_law():
    _, _, d0, dB = sectors.mixed_sector_scan(np.linspace(0, np.pi / 2, 5), np.linspace(0, np.pi, 3))
    assert max(d0, dB) < 1e-9
    with pytest.raises(ValueError):
        sectors.mixed_sector_scan([0.1], [0.0], sigma=0.1, omega_m=1.0)


def test_spurion_singles_follow_lorentzian():
    for x in (0.1, 0.05, 0.0873):
        _, fB = sectors.spurion_numeric(x)
        assert fB == pytest.approx(4 * x * x / (1 + 4 * x * x), abs=1e-9)


def test_spurion_bounds():
    with pytest.raises(ValueError):
        sectors.spurion_robustness(0.5)

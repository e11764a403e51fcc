import numpy as np
import pytest

from lambdagate import device


def test_membrane_defaults():
    m = device.membrane_modes()
    assert m["f_nm"][(1, 2)] == pytest.approx(78.8, abs=0.1)
    assert m["D_bend"] == pytest.approx(7.08e-10, rel=0.01)
    assert m["k_ss"] == pytest.approx(4310, rel=0.005)
    assert device.membrane_modes(device.MembraneSpec(boundary="clamped"))["k"] == pytest.approx(9530, rel=0.005)


def test_membrane_dimensional_consistency():
    m = device.membrane_modes()
    f = np.sqrt(m["k_ss"] / (m["m_eff_pg"] * 1e-15)) / (2 * np.pi) / 1e6
    assert f == pytest.approx(m["f_nm"][(1, 2)], rel=1e-3)


def test_bad_membrane():
    with pytest.raises(ValueError):
        device.MembraneSpec(poisson=0.6)


def test_tuning():
    t = device.electrostatic_tuning(0.01)
    assert t["delta_f_MHz"] == pytest.approx(0.47, abs=0.01)
    assert t["V_req"] == pytest.approx(21.6, abs=0.2)
    assert device.electrostatic_tuning(0.01, coverage=0.5)["V_req"] == pytest.approx(30.5, abs=0.2)
    # the closing voltage produces exactly the required shift
    assert device.electrostatic_shift(t["V_req"]) == pytest.approx(t["delta_f_MHz"], rel=1e-9)


def test_hbar():
    h = device.hbar_design()
    assert h["FSR_MHz"] == pytest.approx(274, abs=1)
    assert h["B_z_G"] == pytest.approx(49, abs=0.5)
    assert h["overtones"] == [10, 11]
    h2 = device.hbar_design(device.HbarSpec(h_d_um=46.8))
    assert h2["FSR_MHz"] == pytest.approx(h["FSR_MHz"] / 2, rel=1e-12)


def test_hbar_budget():
    b = device.hbar_budget()
    assert b["V_RF"] == pytest.approx(0.91, abs=0.01)
    assert b["Omega_m_kHz"] == pytest.approx(141.5, abs=0.1)
    assert b["power_mW"] == pytest.approx(8.3, abs=0.1)
    assert b["Q_max"] == pytest.approx(1.0e4, rel=0.01)
    assert b["pre_ring_us"] == pytest.approx(3.3, abs=0.05)


def test_stark_report():
    assert device.platform_stark_report()["ratio"] == pytest.approx(39.76, rel=0.005)

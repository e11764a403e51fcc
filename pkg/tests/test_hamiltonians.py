import numpy as np
import pytest
from scipy.special import j0

from lambdagate import control
from lambdagate import hamiltonians as H
from lambdagate.quantum_core import IDX_0, IDX_M1, IDX_P1, is_hermitian


def test_dark_state_is_null_vector():
    for th, ph in [(0.3, 0.1), (2.0, -1.2), (np.pi, 0.7)]:
        h = H.lambda_rwa(2.22, th, ph)
        assert is_hermitian(h)
        assert np.linalg.norm(h @ H.dark_state(th, ph)) < 1e-12
        assert abs(np.vdot(H.dark_state(th, ph), H.bright_state(th, ph))) < 1e-12


def test_bright_couples_to_aux_at_half_rabi():
    h = H.lambda_rwa(2.0, 1.0, 0.4)
    assert abs(h[IDX_0] @ H.bright_state(1.0, 0.4)) == pytest.approx(1.0)


def test_cd_element():
    # the counterdiabatic term i d/dt |D><D| has <+1|H|-1> = i (theta_dot/2) e^{i phi}
    th, ph, thd = 0.8, 0.3, 1.7
    re, im = control.satd_quadratures(thd, ph, 1.0)
    hcd = 0.5 * (re * H.OP_RE + im * H.OP_IM) * 2 * np.pi
    assert hcd[IDX_P1, IDX_M1] == pytest.approx(0.5j * thd * np.exp(1j * ph))


def test_stark_scale_and_ratio():
    nv = H.dq_stark_scale(2.22, H.NV)["delta_ac_kHz"]
    sic = H.dq_stark_scale(2.22, H.SIC_3C)["delta_ac_kHz"]
    assert nv == pytest.approx(20.72, abs=0.01)
    assert nv / sic == pytest.approx(39.76, abs=0.1)


def test_lune_cos_integral_is_bessel():
    tr = control.build_trajectory(control.COMPOSITE, 1.833)
    st = H.stark_terms(20.72, tr, H.NV)
    assert st["lune_cos_integral"] == pytest.approx(st["lune_cos_integral_analytic"], abs=1e-9)
    assert j0(np.pi) == pytest.approx(-0.304, abs=1e-3)
    assert not np.any(H.stark_terms(20.72, tr, H.NV, compensated=True)["envelope"])


def test_gate_assembly_hermitian_and_breakpoints():
    tr = control.build_trajectory(control.COMPOSITE, 1.833)
    a = H.gate_assembly(tr, 2.22)
    assert a.breakpoints == pytest.approx((1.833 / 2,))
    for t in (0.1, 0.9, 1.7):
        assert is_hermitian(a.at(t))


def test_projector_bus_closed_form():
    r = H.projector_bus_unitary(0.5, 0.5, 1.0)
    assert r["chi"] == pytest.approx(np.pi, abs=1e-12)
    # oracle: vacuum phase of a driven oscillator after one loop
    for g in (0.2, 0.35):
        amp = H.forced_oscillator_phase(g, 1.0)
        assert abs(amp) == pytest.approx(1.0, abs=1e-8)
        assert np.angle(amp) == pytest.approx(2 * np.pi * g ** 2, abs=1e-7)


def test_siv_platform():
    assert H.siv_platform(300.0)["T1_orb_ns"] == 143.0
    assert H.siv_platform(300.0, "4K")["T1_orb_ns"] == 40.0
    with pytest.raises(ValueError):
        H.siv_platform(300.0, "room")

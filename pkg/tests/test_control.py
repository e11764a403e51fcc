import numpy as np
import pytest

from lambdagate import control


def test_composite_closes_at_pole():
    tr = control.build_trajectory(control.COMPOSITE, 1.833)
    assert tr.n_lunes == 2
    assert tr.theta[0] == pytest.approx(0) and tr.theta[-1] == 0
    th, ph, _ = tr.evaluate(np.array([0.25 * 1.833, 0.75 * 1.833]))
    assert np.allclose(th, np.pi)
    # second lune starts pi later in azimuth
    assert tr.lune_offsets[1] - tr.lune_offsets[0] == pytest.approx(np.pi)


def test_analytic_theta_dot_matches_gradient():
    tr = control.build_trajectory(control.COMPOSITE, 2.0, n_samples=4001)
    num = np.gradient(tr.theta[:2000], tr.t[:2000])
    assert np.max(np.abs(num[5:-5] - tr.theta_dot[5:1995])) < 1e-3 * np.max(abs(tr.theta_dot))


@pytest.mark.parametrize("kw", [dict(kind="bogus", T_gate=1.0), dict(kind="composite", T_gate=-1),
                                dict(kind="composite", T_gate=1.0, n_samples=10),
                                dict(kind="phase_cycled", T_gate=1.0)])
def test_bad_trajectory(kw):
    with pytest.raises(ValueError):
        control.build_trajectory(**kw)


def test_satd_quadratures_magnitude():
    re, im = control.satd_quadratures(np.array([2.0]), np.array([0.3]), 1.0)
    assert np.hypot(re, im)[0] == pytest.approx(2.0 / (2 * np.pi))


def test_dq_hardware_phase_branch():
    tr = control.build_trajectory(control.COMPOSITE, 1.833)
    hw = control.dq_satd_hardware(tr, 48.9, 19660.0)
    assert hw["carrier_MHz"] == pytest.approx(2 * 2.80 * 48.9)
    k = np.argmax(tr.theta_dot < 0)
    assert np.mod(hw["phase_rad"][k] - tr.phi[k] - np.pi / 2, 2 * np.pi) == pytest.approx(0, abs=1e-9)


def test_single_shot_unit_area():
    for env in ("sin2", "flat_top"):
        cmd = control.single_shot_controls((0.4, 0.2), 0.3, 2.0, env, n_samples=20001)
        assert np.trapezoid(cmd.envelope, cmd.t) == pytest.approx(1.0, rel=1e-6)


def test_single_shot_alpha_bound():
    with pytest.raises(ValueError):
        control.single_shot_controls((0, 0), np.pi / 2, 1.0)


def test_commutator_prediction():
    r = control.su2_gate_and_commutator([1, 0, 0], 1.1, [0, 1, 0], 0.7)
    assert r["commutator_op"] == pytest.approx(r["predicted_commutator_norm"], abs=1e-12)


def test_waveform_export(tmp_path):
    tr = control.build_trajectory(control.COMPOSITE, 1.0, n_samples=500)
    p = control.export_waveform_csv(tmp_path / "w.csv", tr, control.satd_waveform(tr, 1.0))
    lines = open(p).read().splitlines()
    assert lines[0].split(",")[:3] == ["t", "theta", "phi"] and len(lines) == 501

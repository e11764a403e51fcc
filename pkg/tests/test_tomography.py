import numpy as np
import pytest

from lambdagate.control import su2_gate, unitary_average_fidelity
from lambdagate.propagation import ChannelRun
from lambdagate.quantum_core import embed_qubit_operator, pauli
from lambdagate.tomography import (NOMINAL_CHANNEL, BiasedErasureChannel, choi_from_kraus,
                                   choi_reconstruct, effective_fidelity, extract_biased_erasure,
                                   gate_fidelities, ic_states, ic_states_qubit, process_metrics,
                                   state_average_fidelity, unitary_outputs)

Z = np.diag([1.0, -1.0]).astype(complex)


def _embed_u(U2):
    U3 = np.eye(3, dtype=complex)
    U3[np.ix_((2, 0), (2, 0))] = U2
    return U3


def test_identity_channel_perfect():
    outs = unitary_outputs(_embed_u(Z))
    fe, fa = gate_fidelities(choi_reconstruct(outs), Z)
    assert fe == pytest.approx(1) and fa == pytest.approx(1)


def test_horodecki_against_unitary_oracle():
    V = su2_gate([0.3, 0.4, np.sqrt(0.75)], 0.2) @ Z
    outs = unitary_outputs(_embed_u(V))
    _, fa = gate_fidelities(choi_reconstruct(outs), Z)
    assert fa == pytest.approx(unitary_average_fidelity(Z, V), abs=1e-12)


def test_choi_reconstruction_matches_kraus():
    p = 0.1
    _, x, y, z = pauli()
    kraus = [np.sqrt(1 - p) * np.eye(2), np.sqrt(p) * z]
    outs = [embed_qubit_operator(sum(K @ r @ K.conj().T for K in kraus)) for r in ic_states_qubit()]
    assert np.allclose(choi_reconstruct(outs), choi_from_kraus(kraus), atol=1e-12)


def test_dephasing_twirl_and_conditional_fidelity():
    p = 0.02
    _, _, _, z = pauli()
    outs = []
    for r in ic_states_qubit():
        rr = Z @ r @ Z
        rr = (1 - p) * rr + p * z @ rr @ z
        outs.append(embed_qubit_operator(rr))
    ch = extract_biased_erasure(np.array(outs), 0.975, Z)
    assert ch.p_Z == pytest.approx(p, abs=1e-12)
    assert ch.p_era == 0 and ch.p_XY_floor


def test_leakage_split():
    outs = []
    L = 0.01
    for r in ic_states():
        o = (1 - L) * r
        o[1, 1] = L
        outs.append(o)
    ch = extract_biased_erasure(np.array(outs), 0.975, np.eye(2))
    assert ch.p_era == pytest.approx(0.975 * L) and ch.p_dep == pytest.approx(0.025 * L)


def test_state_average_counts_leakage():
    outs = [0.9 * r for r in ic_states()]
    assert state_average_fidelity(outs, np.eye(2)) == pytest.approx(0.9)


def test_effective_fidelity_bounds():
    assert effective_fidelity(0.99, 0.99) == pytest.approx(0.9801)
    with pytest.raises(ValueError):
        effective_fidelity(1.2, 0.5)


def test_bootstrap_brackets_point_estimate():
    rng = np.random.default_rng(0)
    outs = []
    for _ in range(20):
        V = su2_gate([0, 0, 1], rng.normal(0, 0.05)) @ Z
        outs.append(unitary_outputs(_embed_u(V)))
    outs = np.array(outs)
    run = ChannelRun(tuple(ic_states()), outs, np.zeros(outs.shape[:2]), tuple(range(20)), 20)
    m = process_metrics(run, Z, n_boot=300)
    assert m.ci_lo <= m.F_avg <= m.ci_hi and m.ci_lo < m.ci_hi


def test_nominal_channel_sums():
    assert NOMINAL_CHANNEL.p_undetected == pytest.approx(0.0018)
    with pytest.raises(ValueError):
        BiasedErasureChannel(-0.1, 0, 0, 0, 1)

import numpy as np
import pytest

from lambdagate import hamiltonians as H
from lambdagate.noise import NoiseModel, SurfaceBathConfig, lindblad_collapse_set
from lambdagate.propagation import (NumericalError, PropagationGrid, child_seed,
                                    monte_carlo_channel, process_map, propagate,
                                    propagate_unitary)
from lambdagate.protocols import GateProtocol, rabi_baseline
from lambdagate.quantum_core import IDX_M1, IDX_P1, is_unitary, outer
from lambdagate.tomography import ic_states


def test_t1_decay_matches_exponential():
    asm = H.HamiltonianAssembly((H.X_M,), lambda t: (0.0,), np.linspace(0, 2, 10))
    cs = lindblad_collapse_set(T1=1.5)
    rho = propagate(asm, cs, outer(IDX_P1, IDX_P1), T=2.0)
    assert rho[IDX_P1, IDX_P1].real == pytest.approx(np.exp(-2 / 1.5), abs=1e-8)


def test_rabi_two_pi_returns_with_sign():
    p = rabi_baseline(2.22)
    U = propagate_unitary(p.build())
    assert is_unitary(U, 1e-8)
    assert U[IDX_M1, IDX_M1] == pytest.approx(-1, abs=1e-8)


def test_unitary_and_lindblad_agree():
    p = GateProtocol(n_samples=1000)
    asm = p.build()
    U = propagate_unitary(asm)
    phi = process_map(asm, p.T_gate, grid=PropagationGrid(1000))
    rho0 = ic_states()[0]
    out = (phi @ rho0.reshape(-1)).reshape(3, 3)
    assert np.max(np.abs(out - U @ rho0 @ U.conj().T)) < 1e-6


def test_trace_drift_raises(monkeypatch):
    from lambdagate import propagation
    real = propagation.solve_ivp

    def lossy(*a, **k):
        sol = real(*a, **k)
        sol.y = sol.y * 0.99
        return sol
    monkeypatch.setattr(propagation, "solve_ivp", lossy)
    asm = H.HamiltonianAssembly((H.X_M,), lambda t: (1.0,), np.linspace(0, 1, 10))
    with pytest.raises(NumericalError):
        process_map(asm, 1.0, grid=PropagationGrid(200))


def test_child_seed_deterministic_and_distinct():
    assert child_seed(1, 2, 3) == child_seed(1, 2, 3)
    assert len({child_seed(1, k) for k in range(50)}) == 50


def test_monte_carlo_is_worker_independent():
    p = GateProtocol(n_samples=500)
    nm = NoiseModel(SurfaceBathConfig(), lindblad_collapse_set(1000.0, 500.0))
    a = monte_carlo_channel(p, nm, ic_states()[:2], 2, 11, PropagationGrid(200))
    b = monte_carlo_channel(p, nm, ic_states()[:2], 2, 11, PropagationGrid(200), workers=2)
    assert np.array_equal(a.outputs, b.outputs)
    assert a.seeds == b.seeds

"""Lindblad propagation and Monte Carlo trajectory averaging.

The master equation is integrated for the full 9x9 process map (row-major
vectorization), so the six tomography inputs share one integration per noise
realization.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .quantum_core import IDX_0, spin1_operators


class NumericalError(RuntimeError):
    """Integrator failure or loss of trace beyond tolerance."""


@dataclass(frozen=True)
class PropagationGrid:
    n_steps: int = 2000
    atol: float = 1e-10
    rtol: float = 1e-8

    def __post_init__(self):
        if self.n_steps < 100:
            raise ValueError("n_steps must be >= 100")


def child_seed(master, *keys):
    """Deterministic child seed from a master seed and integer keys."""
    ss = np.random.SeedSequence(entropy=int(master), spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def _ham_super(h):
    d = h.shape[0]
    eye = np.eye(d)
    return -2j * np.pi * (np.kron(h, eye) - np.kron(eye, h.T))


def dissipator_super(collapse_ops, d=3):
    eye = np.eye(d)
    out = np.zeros((d * d, d * d), complex)
    for L in collapse_ops:
        ld = L.conj().T @ L
        out += np.kron(L, L.conj()) - 0.5 * np.kron(ld, eye) - 0.5 * np.kron(eye, ld.T)
    return out


def vec(rho):
    return np.asarray(rho).reshape(-1)


def unvec(v, d=3):
    return np.asarray(v).reshape(d, d)


def _segments(T, breakpoints):
    pts = [0.0] + sorted(b for b in breakpoints if 0 < b < T) + [T]
    return list(zip(pts[:-1], pts[1:]))


def _field_fn(field, gamma_e):
    if field is None:
        return None
    t, b = np.asarray(field.t), np.asarray(field.B)
    return lambda s: gamma_e * np.interp(s, t, b)


def process_map(assembly, T, collapse=None, field=None, gamma_e=2.80, grid=PropagationGrid()):
    """9x9 superoperator of the Lindblad evolution over [0, T]."""
    d = assembly.dim
    sup_ops = [_ham_super(op) for op in assembly.ops]
    static = _ham_super(assembly.static)
    if collapse is not None and len(collapse):
        static = static + dissipator_super(collapse.scaled(), d)
    _, _, sz = spin1_operators()
    sz_sup = _ham_super(sz)
    bfn = _field_fn(field, gamma_e)
    max_step = 2.0 * T / grid.n_steps

    def rhs(t, y):
        gen = static.copy()
        for c, s in zip(assembly.coeffs(t), sup_ops):
            if c != 0.0:
                gen += c * s
        if bfn is not None:
            gen += bfn(t) * sz_sup
        return (gen @ y.reshape(d * d, d * d)).reshape(-1)

    y = np.eye(d * d, dtype=complex).reshape(-1)
    for a, b in _segments(T, assembly.breakpoints):
        sol = solve_ivp(rhs, (a, b), y, method="DOP853", rtol=grid.rtol, atol=grid.atol,
                        max_step=max_step)
        if not sol.success:
            raise NumericalError(f"integration failed on [{a}, {b}]: {sol.message}")
        y = sol.y[:, -1]
    phi = y.reshape(d * d, d * d)
    # trace preservation: sum_i Phi[(i,i), :] = vec(I)
    tr_row = sum(phi[i * d + i] for i in range(d))
    drift = np.max(np.abs(tr_row - np.eye(d).reshape(-1)))
    if drift > 1e-6:
        raise NumericalError(f"trace drift {drift:.2e} exceeds 1e-6")
    return phi


def apply_map(phi, rho):
    d = rho.shape[0]
    return unvec(phi @ vec(rho), d)


def propagate(assembly, collapse, rho0, grid=PropagationGrid(), T=None, field=None, gamma_e=2.80):
    """Final density matrix of the time-dependent Lindblad equation."""
    rho0 = np.asarray(rho0, complex)
    if rho0.shape != (assembly.dim, assembly.dim):
        raise ValueError("rho0 dimension does not match the generator")
    T = float(assembly.t_grid[-1]) if T is None else T
    return apply_map(process_map(assembly, T, collapse, field, gamma_e, grid), rho0)


def propagate_unitary(assembly, T=None, rtol=1e-10, atol=1e-12, field=None, gamma_e=2.80,
                      n_steps=2000):
    """Closed-system propagator U(T) (3x3)."""
    T = float(assembly.t_grid[-1]) if T is None else T
    d = assembly.dim
    bfn = _field_fn(field, gamma_e)
    _, _, sz = spin1_operators()

    def rhs(t, y):
        h = assembly.at(t)
        if bfn is not None:
            h = h + bfn(t) * sz
        return (-2j * np.pi * h @ y.reshape(d, d)).reshape(-1)

    y = np.eye(d, dtype=complex).reshape(-1)
    for a, b in _segments(T, assembly.breakpoints):
        sol = solve_ivp(rhs, (a, b), y, method="DOP853", rtol=rtol, atol=atol,
                        max_step=T / n_steps)
        if not sol.success:
            raise NumericalError(sol.message)
        y = sol.y[:, -1]
    return y.reshape(d, d)


@dataclass(frozen=True)
class ChannelRun:
    inputs: tuple               # 3x3 input states
    outputs: np.ndarray         # (n_traj, n_inputs, 3, 3)
    leakage: np.ndarray         # (n_traj, n_inputs) |0> population
    seeds: tuple
    n_traj: int

    @property
    def mean_outputs(self):
        # fixed-order reduction
        return np.sum(self.outputs, axis=0) / self.n_traj


def _one_trajectory(args):
    protocol, noise, inputs, seed, geometry, grid = args
    from .noise import kmc_field_trace
    assembly = protocol.build()
    T = protocol.T_gate
    field = None
    if geometry is not None:
        rng = np.random.default_rng(seed)
        field = kmc_field_trace(geometry, T, rng, n_grid=grid.n_steps, seed=seed)
    phi = process_map(assembly, T, noise.collapse, field, noise.gamma_e, grid)
    outs = np.array([apply_map(phi, r) for r in inputs])
    return outs


def monte_carlo_channel(protocol, noise, inputs, n_traj, master_seed, grid=PropagationGrid(),
                        workers=1, keys=()):
    """Average the process over n_traj independent bath realizations.

    Every input of a trajectory sees the same frozen field trace.  The bath
    geometry is drawn once per run from the run seed.
    """
    from .noise import sample_bath_geometry
    if n_traj < 1:
        raise ValueError("n_traj must be >= 1")
    inputs = tuple(np.asarray(r, complex) for r in inputs)
    geometry = None
    if noise.has_bath:
        geometry = sample_bath_geometry(noise.bath, np.random.default_rng(child_seed(master_seed, *keys, 0)))
    seeds = tuple(child_seed(master_seed, *keys, 1, i) for i in range(n_traj))
    if geometry is None:
        # deterministic channel: one integration serves every trajectory
        outs = _one_trajectory((protocol, noise, inputs, seeds[0], None, grid))
        outputs = np.broadcast_to(outs, (n_traj,) + outs.shape).copy()
    else:
        jobs = [(protocol, noise, inputs, s, geometry, grid) for s in seeds]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=min(workers, os.cpu_count() or 1)) as ex:
                results = list(ex.map(_one_trajectory, jobs, chunksize=max(1, n_traj // (4 * workers))))
        else:
            results = [_one_trajectory(j) for j in jobs]
        outputs = np.array(results)
    leak = np.real(outputs[:, :, IDX_0, IDX_0])
    return ChannelRun(inputs, outputs, leak, seeds, n_traj)

"""Control waveform synthesis.

Trajectories are stored both as samples (for export and inspection) and as an
analytic evaluator, so propagators can query (theta, phi, theta_dot) at any
time without interpolation error.  Times are in us, angles in rad, rates in
rad/us and drive amplitudes in MHz (cycle frequency).
"""

import csv
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .quantum_core import pauli

COMPOSITE = "composite"
ORANGE_SLICE = "orange_slice"
PHASE_CYCLED = "phase_cycled"

# calibrated azimuth-ramp width (fraction of T) for the single-lune Orange-Slice path
ORANGE_SLICE_RAMP = 0.19516
ORANGE_SLICE_DPHI = np.pi / 2


@dataclass(frozen=True)
class TrajectorySamples:
    t: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    theta_dot: np.ndarray
    kind: str
    T_gate: float
    dphi: float
    n_lunes: int
    theta_max: float = np.pi
    step_width: float = 0.0
    phi0: float = 0.0
    lune_offsets: tuple = field(default_factory=tuple)

    def evaluate(self, t):
        """Analytic (theta, phi, theta_dot) at time(s) t."""
        return _evaluate(self, np.asarray(t, dtype=float))


def _lune(tl, tau, theta_max, dphi, width, start):
    th = theta_max * np.sin(np.pi * tl / tau)
    thd = theta_max * np.pi / tau * np.cos(np.pi * tl / tau)
    ph = start + dphi * 0.5 * (1.0 + np.tanh((tl - tau / 2) / width))
    return th, ph, thd


def _evaluate(tr, t):
    tau = tr.T_gate / tr.n_lunes
    k = np.clip(np.floor(t / tau).astype(int), 0, tr.n_lunes - 1)
    tl = t - k * tau
    start = np.asarray(tr.lune_offsets)[k]
    return _lune(tl, tau, tr.theta_max, tr.dphi, tr.step_width, start)


def build_trajectory(kind, T_gate, theta_max=np.pi, dphi=None, step_width=None,
                     n_samples=2000, n_lunes=None, phi0=0.0):
    """Build a closed control loop starting and ending at the North Pole.

    kind: 'composite' (two echo lunes, second offset by pi), 'orange_slice'
    (one lune with a wide azimuth ramp) or 'phase_cycled' (n_lunes lunes with
    starting azimuths phi0 + 2 pi j / N).  step_width is the tanh half-width
    in us; the default is 1% of the lune duration for the echo paths.
    """
    if T_gate <= 0:
        raise ValueError("T_gate must be positive")
    if n_samples < 500:
        raise ValueError("n_samples must be at least 500")
    if kind == COMPOSITE:
        n = 2
    elif kind == ORANGE_SLICE:
        n = 1
    elif kind == PHASE_CYCLED:
        if n_lunes is None or n_lunes < 1:
            raise ValueError("phase_cycled requires n_lunes >= 1")
        n = int(n_lunes)
    else:
        raise ValueError(f"unknown trajectory kind {kind!r}")
    if n_lunes is not None and kind != PHASE_CYCLED and n_lunes != n:
        raise ValueError(f"{kind} has exactly {n} lune(s)")
    tau = T_gate / n
    if dphi is None:
        dphi = ORANGE_SLICE_DPHI if kind == ORANGE_SLICE else np.pi / 4
    if step_width is None:
        step_width = ORANGE_SLICE_RAMP * T_gate if kind == ORANGE_SLICE else 0.01 * tau
    dt = T_gate / (n_samples - 1)
    if step_width < 2 * dt:
        raise ValueError("azimuth step not resolvable on the sample grid")
    offsets = tuple(phi0 + 2 * np.pi * j / n for j in range(n))
    t = np.linspace(0.0, T_gate, n_samples)
    proto = TrajectorySamples(t, t, t, t, kind, float(T_gate), float(dphi), n,
                              float(theta_max), float(step_width), float(phi0), offsets)
    th, ph, thd = proto.evaluate(t)
    # the last sample belongs to the closing point of the final lune
    th[-1] = 0.0
    return TrajectorySamples(t, th, ph, thd, kind, float(T_gate), float(dphi), n,
                             float(theta_max), float(step_width), float(phi0), offsets)


def step_centers(traj):
    """Times at which each azimuth step is centered."""
    tau = traj.T_gate / traj.n_lunes
    return np.array([(j + 0.5) * tau for j in range(traj.n_lunes)])


def lune_solid_angle(theta_max, dphi):
    return dphi * (1.0 - np.cos(theta_max))


@dataclass(frozen=True)
class SATDWaveform:
    t: np.ndarray
    omega_re: np.ndarray
    omega_im: np.ndarray
    alpha_cd: float


def satd_quadratures(theta_dot, phi, alpha_cd):
    """Counterdiabatic quadratures (MHz) multiplying Op_re/2 and Op_im/2."""
    om_re = -alpha_cd * theta_dot * np.sin(phi) / (2 * np.pi)
    om_im = alpha_cd * theta_dot * np.cos(phi) / (2 * np.pi)
    return om_re, om_im


def satd_waveform(traj, alpha_cd):
    re, im = satd_quadratures(traj.theta_dot, traj.phi, alpha_cd)
    return SATDWaveform(traj.t, re, im, float(alpha_cd))


def dq_satd_hardware(traj, B_z, h16, gamma_e=2.80):
    """Resonant double-quantum tone realizing the SATD term.

    The tone is written as -(Omega_DQ/2)[e^{i psi}|+1><-1| + h.c.]; psi is
    chosen so that this reproduces the counterdiabatic matrix element.
    """
    if B_z <= 0:
        raise ValueError("B_z must be positive")
    env = np.abs(traj.theta_dot) / (2 * np.pi)
    psi = traj.phi - np.pi / 2 + np.pi * (traj.theta_dot < 0)
    peak_rabi = np.pi / traj.T_gate
    return {
        "carrier_MHz": 2 * gamma_e * B_z,
        "rabi_envelope_MHz": env,
        "phase_rad": np.mod(psi, 2 * np.pi),
        "peak_rabi_MHz": peak_rabi,
        "peak_strain": peak_rabi / abs(h16),
    }


@dataclass(frozen=True)
class SingleShotCommand:
    axis: tuple            # (vartheta, phi_axis)
    alpha: float
    t: np.ndarray
    envelope: np.ndarray
    omega0: np.ndarray
    omega1: np.ndarray
    delta: np.ndarray
    T_gate: float
    shape: str
    omega_max: float
    ramp: float = 0.0

    def envelope_at(self, t):
        return _envelope(self.shape, np.asarray(t, dtype=float), self.T_gate, self.omega_max, self.ramp)

    @property
    def u0(self):
        th, ph = self.axis
        a = self.alpha
        return np.array([np.cos(a) * np.cos(th / 2),
                         np.cos(a) * np.exp(-1j * ph) * np.sin(th / 2),
                         np.sin(a)], dtype=complex)


def _envelope(shape, t, T, omax, ramp):
    if shape == "sin2":
        return omax * np.sin(np.pi * t / T) ** 2
    if shape == "flat_top":
        up = np.clip(t / ramp, 0, 1)
        down = np.clip((T - t) / ramp, 0, 1)
        return omax * np.sin(0.5 * np.pi * np.minimum(up, down)) ** 2
    raise ValueError(f"unknown envelope {shape!r}")


def single_shot_controls(axis, alpha, omega_max, envelope="sin2", ramp_fraction=0.25, n_samples=2001):
    """Proportional single-shot command with unit pulse area.

    sin2: Omega_max sin^2(pi t / T) with T = 2 / Omega_max.  flat_top: sin^2
    ramps of length r on both sides, area Omega_max (T - r) = 1.
    """
    if abs(alpha) >= np.pi / 2:
        raise ValueError("|alpha| must be below pi/2")
    if omega_max <= 0:
        raise ValueError("omega_max must be positive")
    if envelope == "sin2":
        T, ramp = 2.0 / omega_max, 0.0
    elif envelope == "flat_top":
        # T - r = 1/omega_max with r = ramp_fraction * T
        T = 1.0 / (omega_max * (1.0 - ramp_fraction))
        ramp = ramp_fraction * T
    else:
        raise ValueError(f"unknown envelope {envelope!r}")
    t = np.linspace(0.0, T, n_samples)
    env = _envelope(envelope, t, T, omega_max, ramp)
    th, ph = axis
    u0 = np.array([np.cos(alpha) * np.cos(th / 2),
                   np.cos(alpha) * np.exp(-1j * ph) * np.sin(th / 2),
                   np.sin(alpha)], dtype=complex)
    return SingleShotCommand(tuple(axis), float(alpha), t, env, env * u0[0], env * u0[1],
                             (env * u0[2]).real, float(T), envelope, float(omega_max), float(ramp))


def predicted_rotation_angle(alpha):
    return np.pi * (1.0 + np.sin(alpha))


def axis_vector(axis):
    th, ph = axis
    return np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])


def su2_gate(n, gamma):
    """exp(-i gamma n.sigma / 2) for a unit 3-vector n."""
    _, x, y, z = pauli()
    n = np.asarray(n, dtype=float)
    return expm(-0.5j * gamma * (n[0] * x + n[1] * y + n[2] * z))


def unitary_average_fidelity(u, v):
    """Average gate fidelity between two unitaries."""
    d = u.shape[0]
    return (abs(np.trace(u.conj().T @ v)) ** 2 + d) / (d * (d + 1))


def su2_gate_and_commutator(n1, gamma1, n2, gamma2):
    u1 = su2_gate(n1, gamma1)
    u2 = su2_gate(n2, gamma2)
    ab = u2 @ u1      # apply u1 first
    ba = u1 @ u2
    comm = u1 @ u2 - u2 @ u1
    return {
        "U1": u1, "U2": u2, "order_AB": ab, "order_BA": ba,
        "fidelity": unitary_average_fidelity(ab, ba),
        "commutator_fro": float(np.linalg.norm(comm)),
        "commutator_op": float(np.linalg.norm(comm, 2)),
        "predicted_commutator_norm": float(2 * abs(np.sin(gamma1 / 2) * np.sin(gamma2 / 2))
                                           * np.linalg.norm(np.cross(n1, n2))),
    }


def export_waveform_csv(path, traj=None, satd=None, cmd=None):
    """Write t, theta, phi, Omega_re, Omega_im, Omega_0, Omega_1, Delta columns."""
    if traj is not None:
        t = traj.t
    elif cmd is not None:
        t = cmd.t
    else:
        raise ValueError("need a trajectory or a single-shot command")
    n = len(t)
    z = np.zeros(n)
    cols = {
        "t": t,
        "theta": traj.theta if traj is not None else z,
        "phi": traj.phi if traj is not None else z,
        "Omega_re": satd.omega_re if satd is not None else z,
        "Omega_im": satd.omega_im if satd is not None else z,
        "Omega_0": np.abs(cmd.omega0) if cmd is not None else z,
        "Omega_1": np.abs(cmd.omega1) if cmd is not None else z,
        "Delta": cmd.delta if cmd is not None else z,
    }
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(list(cols))
        for i in range(n):
            w.writerow([f"{cols[k][i]:.12g}" for k in cols])
    return path

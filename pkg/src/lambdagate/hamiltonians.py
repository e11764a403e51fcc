"""Time-dependent generators for the Lambda-system gates.

All Hamiltonians are in cycle frequency (MHz).  A HamiltonianAssembly is a
list of Hermitian operators with real coefficient functions of time, which is
what the propagator consumes.
"""

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.special import j0

from .quantum_core import IDX_0, IDX_M1, IDX_P1, outer, spin1_operators
from .control import satd_quadratures

GAMMA_E = 2.80  # MHz/G


@dataclass(frozen=True)
class PlatformParams:
    platform: str
    D: float                 # zero-field splitting, MHz
    gamma_e: float = GAMMA_E
    B_z: float = 50.0        # G
    h26: float = 2830.0      # MHz/strain, magnitudes
    h25: float = 2600.0
    h16: float = 19660.0
    h43: float = 2300.0
    f_perp: float = 0.0      # SiV orbital-strain susceptibility, MHz/strain
    delta_so: float = 0.0    # SiV spin-orbit splitting, MHz

    def __post_init__(self):
        for name in ("D", "h26", "h25", "h16", "h43", "f_perp", "delta_so"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be stored as a magnitude")


NV = PlatformParams("NV", D=2870.0)
SIC_3C = PlatformParams("SiC-VV", D=1330.0, h26=1800.0, h16=1350.0)
SIV = PlatformParams("SiV", D=0.0, h26=0.0, h25=0.0, h16=0.0, h43=0.0,
                     f_perp=1.3e9, delta_so=48000.0)
PLATFORMS = {"NV": NV, "SiC-VV": SIC_3C, "SiV": SIV}


@dataclass(frozen=True)
class HamiltonianAssembly:
    """H(t) = H_static + sum_k c_k(t) ops[k]."""
    ops: tuple
    coeffs: object                  # callable t -> sequence of real coefficients
    t_grid: np.ndarray
    static: np.ndarray = field(default_factory=lambda: np.zeros((3, 3), complex))
    breakpoints: tuple = ()         # times where coefficients may be non-smooth
    labels: tuple = ()

    def __post_init__(self):
        for op in self.ops:
            if np.max(np.abs(op - op.conj().T)) > 1e-12:
                raise ValueError("assembly operators must be Hermitian")

    @property
    def dim(self):
        return self.static.shape[0]

    def at(self, t):
        h = self.static.copy()
        for c, op in zip(self.coeffs(t), self.ops):
            h = h + c * op
        return h

    def envelopes(self):
        return np.array([self.coeffs(t) for t in self.t_grid]).T

    def with_extra(self, ops, coeffs, labels=()):
        """Return an assembly with additional operator terms."""
        base = self.coeffs

        def merged(t):
            return np.concatenate([np.asarray(base(t), float), np.asarray(coeffs(t), float)])
        return replace(self, ops=self.ops + tuple(ops), coeffs=merged, labels=self.labels + tuple(labels))


def nv_static(params):
    if params.platform not in ("NV", "SiC-VV"):
        raise ValueError("nv_static applies to NV or SiC-VV parameters")
    _, _, sz = spin1_operators()
    return params.D * sz @ sz + params.gamma_e * params.B_z * sz


# Lambda-leg generators
X_M = outer(IDX_0, IDX_M1) + outer(IDX_M1, IDX_0)
X_P = outer(IDX_0, IDX_P1) + outer(IDX_P1, IDX_0)
Y_P = -1j * outer(IDX_0, IDX_P1) + 1j * outer(IDX_P1, IDX_0)
P_AUX = outer(IDX_0, IDX_0)
OP_RE = outer(IDX_M1, IDX_P1) + outer(IDX_P1, IDX_M1)
OP_IM = 1j * (outer(IDX_P1, IDX_M1) - outer(IDX_M1, IDX_P1))


def lambda_coefficients(omega_m, theta, phi, ellipticity=0.0, arm_ratio=1.0, arm_phase=0.0):
    """Coefficients of (X_M, X_P, Y_P) in the Lambda Hamiltonian.

    ellipticity scales the |-1> leg by (1+eta) and the |+1> leg by (1-eta);
    arm_ratio and arm_phase multiply the |+1> leg by r e^{-i dphi}.
    """
    a_m = 0.5 * omega_m * np.sin(theta / 2) * (1 + ellipticity)
    a_p = -0.5 * omega_m * np.cos(theta / 2) * (1 - ellipticity) * arm_ratio
    ph = phi + arm_phase
    return a_m, a_p * np.cos(ph), a_p * np.sin(ph)


def lambda_rwa(omega_m, theta, phi, ellipticity=0.0, arm_ratio=1.0, arm_phase=0.0):
    """Rotating-frame Lambda Hamiltonian (MHz) with dark state cos(theta/2)|-1> + e^{i phi} sin(theta/2)|+1>."""
    if omega_m <= 0:
        raise ValueError("omega_m must be positive")
    c = lambda_coefficients(omega_m, theta, phi, ellipticity, arm_ratio, arm_phase)
    return c[0] * X_M + c[1] * X_P + c[2] * Y_P


def dark_state(theta, phi):
    v = np.zeros(3, complex)
    v[IDX_M1] = np.cos(theta / 2)
    v[IDX_P1] = np.exp(1j * phi) * np.sin(theta / 2)
    return v


def bright_state(theta, phi):
    v = np.zeros(3, complex)
    v[IDX_M1] = np.sin(theta / 2)
    v[IDX_P1] = -np.exp(1j * phi) * np.cos(theta / 2)
    return v


def cd_operator(phi):
    """(Op_re, Op_im, direction) with H_CD = theta_dot/(2 pi) * direction."""
    direction = 0.5 * (-np.sin(phi) * OP_RE + np.cos(phi) * OP_IM)
    return OP_RE.copy(), OP_IM.copy(), direction


def dq_stark_scale(omega_m, params):
    """AC Stark scale of the parasitic DQ drive; returns a dict (delta_ac in kHz)."""
    if omega_m <= 0:
        raise ValueError("omega_m must be positive")
    eps0 = omega_m / params.h26
    omega_dq = params.h16 * eps0
    delta_ac = omega_dq ** 2 / (4 * params.D)
    return {"eps0": eps0, "omega_dq_MHz": omega_dq, "delta_ac_kHz": 1e3 * delta_ac}


def stark_coefficient(theta, delta_ac_khz, params, alpha_s=1.0):
    """S_z coefficient (MHz) of the uncompensated Stark term."""
    return -alpha_s * 1e-3 * delta_ac_khz * (np.cos(theta) + params.gamma_e * params.B_z / params.D)


def stark_terms(delta_ac_khz, traj, params, compensated=False, alpha_s=1.0):
    """Stark envelope on S_z (zero on |0>) plus its accumulated phase.

    Returns a dict with the sampled envelope (MHz), the accumulated phase
    Phi_z = 2 pi int c dt (rad), and the analytic check tau J0(pi) of the
    per-lune integral of cos(theta).
    """
    th, _, _ = traj.evaluate(traj.t)
    env = stark_coefficient(th, delta_ac_khz, params, alpha_s)
    if compensated:
        env = np.zeros_like(env)
    phase = 2 * np.pi * np.trapezoid(env, traj.t)
    tau = traj.T_gate / traj.n_lunes
    tm = traj.theta_max
    num, _ = quad(lambda s: np.cos(tm * np.sin(np.pi * s / tau)), 0, tau, limit=200)
    return {
        "envelope": env,
        "phase": phase,
        "lune_cos_integral": num,
        "lune_cos_integral_analytic": tau * j0(tm),
        "j0": j0(tm),
    }


def gate_assembly(traj, omega_m, alpha_cd=1.0, params=NV, stark_alpha=0.0, compensated=True,
                  detuning=0.0, ellipticity=0.0, arm_ratio=1.0, arm_phase=0.0):
    """Full protocol generator: Lambda legs, SATD term, optional Stark and detuning.

    detuning (MHz) is a common-mode offset of the drive placed on |0>.
    stark_alpha scales delta_AC; compensated removes the Stark term exactly.
    """
    _, _, sz = spin1_operators()
    delta_ac = dq_stark_scale(omega_m, params)["delta_ac_kHz"] if params.platform != "SiV" else 0.0
    use_stark = stark_alpha != 0 and not compensated and delta_ac > 0
    ops = (X_M, X_P, Y_P, OP_RE, OP_IM, sz, P_AUX)
    labels = ("X_m", "X_p", "Y_p", "Op_re", "Op_im", "S_z", "P_0")

    def coeffs(t):
        th, ph, thd = traj.evaluate(t)
        a, b, c = lambda_coefficients(omega_m, th, ph, ellipticity, arm_ratio, arm_phase)
        re, im = satd_quadratures(thd, ph, alpha_cd)
        st = stark_coefficient(th, delta_ac, params, stark_alpha) if use_stark else 0.0
        return (a, b, c, 0.5 * re, 0.5 * im, st, detuning)

    tau = traj.T_gate / traj.n_lunes
    bps = tuple(tau * j for j in range(1, traj.n_lunes))
    return HamiltonianAssembly(ops, coeffs, traj.t, breakpoints=bps, labels=labels)


def rabi_assembly(omega_m, T_gate, n_samples=2000):
    """Resonant square pulse on the |-1> leg (dynamical baseline)."""
    t = np.linspace(0, T_gate, n_samples)
    return HamiltonianAssembly((X_M,), lambda s: (0.5 * omega_m,), t, labels=("X_m",))


def single_shot_hamiltonian(cmd):
    """K(t) = Delta|a><a| + (Omega0|a><0_L| + Omega1|a><1_L| + h.c.)/2 on (|-1>,|+1>,|0>)."""
    u0 = cmd.u0
    ops = (X_M, X_P, Y_P, P_AUX)
    w = np.array([0.5 * u0[0].real, 0.5 * u0[1].real, -0.5 * u0[1].imag, u0[2].real])
    # Omega1 |0><+1| + h.c. = Re(Omega1) X_P - Im(Omega1) Y_P
    def coeffs(t):
        return w * cmd.envelope_at(t)
    return HamiltonianAssembly(ops, coeffs, cmd.t, labels=("X_m", "X_p", "Y_p", "P_0"))


def single_shot_block(alpha):
    """Bright/auxiliary block of M_alpha."""
    return np.array([[0.0, np.cos(alpha) / 2], [np.cos(alpha) / 2, np.sin(alpha)]])


def single_shot_target(axis, alpha):
    """Ideal logical gate |d><d| + e^{-i gamma}|b><b| on (|0_L>, |1_L>)."""
    th, ph = axis
    b = np.array([np.cos(th / 2), np.exp(1j * ph) * np.sin(th / 2)])
    gamma = np.pi * (1 + np.sin(alpha))
    pb = np.outer(b, b.conj())
    return np.eye(2) - pb + np.exp(-1j * gamma) * pb


def projector_bus_unitary(f1, f2, delta):
    """Two-qubit phase gate of a projector-coupled bus after one loop, T = 1/delta.

    U(T) = exp[i 2 pi (f1 P1 + f2 P2)^2 / delta^2] in the bright-projector basis
    ordered |p1 p2> = |00>, |01>, |10>, |11>.
    """
    if delta == 0:
        raise ValueError("delta must be nonzero")
    g = np.array([0.0, f2, f1, f1 + f2])
    phases = 2 * np.pi * g ** 2 / delta ** 2
    chi = 4 * np.pi * f1 * f2 / delta ** 2
    return {
        "U": np.diag(np.exp(1j * phases)),
        "phases": phases,
        "chi": chi,
        "single_phases": (2 * np.pi * f1 ** 2 / delta ** 2, 2 * np.pi * f2 ** 2 / delta ** 2),
        "nonlocal": np.diag(np.exp(1j * chi * np.array([0, 0, 0, 1.0]))),
        "T": 1.0 / abs(delta),
    }


def forced_oscillator_phase(g, delta, n_fock=40, rtol=1e-11, atol=1e-12):
    """Vacuum return amplitude of H = delta a^dag a + g (a + a^dag) after T = 1/delta.

    Integrates the truncated-Fock Schroedinger equation; returns the complex
    amplitude <0|U(T)|0>, whose phase should be 2 pi g^2 / delta^2.
    """
    a = np.diag(np.sqrt(np.arange(1, n_fock)), 1).astype(complex)
    h = delta * a.conj().T @ a + g * (a + a.conj().T)
    psi0 = np.zeros(n_fock, complex)
    psi0[0] = 1.0
    T = 1.0 / abs(delta)
    sol = solve_ivp(lambda t, y: -2j * np.pi * (h @ y), (0, T), psi0, method="DOP853",
                    rtol=rtol, atol=atol)
    return sol.y[0, -1]


SIV_T1_ORB_NS = {"mK": 143.0, "4K": 40.0}


def siv_platform(omega_m, regime="mK"):
    """Regime-C SiV orbital Lambda control: no SATD channel."""
    if regime not in SIV_T1_ORB_NS:
        raise ValueError("regime must be 'mK' or '4K'")
    if omega_m <= 0:
        raise ValueError("omega_m must be positive")
    return {
        "params": SIV,
        "omega_m": omega_m,
        "alpha_cd": 0.0,
        "strain_peak": omega_m / SIV.f_perp,
        "T1_orb_ns": SIV_T1_ORB_NS[regime],
    }

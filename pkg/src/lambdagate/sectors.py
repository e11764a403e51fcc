"""Sector-injection, mixed-sector and spurion diagnostics of the ideal Lambda manifold.

A weak perturbation V acting on the dark state |D> of the Lambda Hamiltonian
H produces the first-order correction D1 = -H^+ V|D>, where H^+ is the
pseudo-inverse on the bright/auxiliary subspace.  Its split between |0> and
|B> identifies the sector of V.
"""

from dataclasses import dataclass

import numpy as np

from . import control
from .hamiltonians import P_AUX, bright_state, dark_state, lambda_rwa
from .quantum_core import IDX_0, ket, spin1_operators

DEFAULT_POINT = (np.pi / 2, 0.3)    # generic (theta, phi) for static diagnostics


def sector_operator(sector):
    sx, sy, sz = spin1_operators()
    ops = {"A1": sz @ sz, "A2": sz, "Ex": sx, "Ey": sy}
    if sector not in ops:
        raise ValueError(f"unknown sector {sector!r}")
    op = ops[sector]
    return op / np.sqrt(np.real(np.trace(op.conj().T @ op)))


def first_order_correction(H, V, D, tol=1e-12):
    """D1 = -H^+ (1 - |D><D|) V |D>."""
    v = V @ D
    v = v - D * np.vdot(D, v)
    return -np.linalg.pinv(H, rcond=tol, hermitian=True) @ v


def routing_fractions(D1, theta, phi, tol=1e-20):
    """(f0, f_B, coupled) of a first-order direction in the ideal frame."""
    a0 = abs(D1[IDX_0]) ** 2
    aB = abs(np.vdot(bright_state(theta, phi), D1)) ** 2
    tot = a0 + aB
    if tot <= tol:
        return 0.0, 0.0, False
    return a0 / tot, aB / tot, True


def _dark_branch(H, ref):
    w, v = np.linalg.eigh(H)
    k = int(np.argmax(np.abs(v.conj().T @ ref)))
    x = v[:, k]
    return x * np.exp(-1j * np.angle(np.vdot(ref, x)))


def perturbed_weight(V, sigma, omega_m, theta, phi):
    """Out-of-dark weight 1 - |<D|D~>|^2 of the exact perturbed dark eigenstate."""
    D = dark_state(theta, phi)
    x = _dark_branch(lambda_rwa(omega_m, theta, phi) + sigma * V, D)
    return 1.0 - abs(np.vdot(D, x)) ** 2


def lune_geometric_phase(V, sigma, omega_m, n_lunes, T_lune=0.9165, n_samples=4000):
    """Geometric phase of the perturbed dark state along n phase-cycled lunes.

    The Berry connection -Im<D~|dD~> is accumulated along the sampled path
    as a product of neighbouring overlaps in the gauge <D|D~> > 0.
    """
    traj = control.build_trajectory(control.PHASE_CYCLED, T_lune * n_lunes, n_lunes=n_lunes,
                                    n_samples=n_samples)
    states = [_dark_branch(lambda_rwa(omega_m, th, ph) + sigma * V, dark_state(th, ph))
              for th, ph in zip(traj.theta, traj.phi)]
    ov = [np.vdot(a, b) for a, b in zip(states[:-1], states[1:])]
    return -float(np.sum(np.angle(ov)))


def loglog_slope(x, y):
    x, y = np.asarray(x, float), np.asarray(y, float)
    if np.any(y <= 0):
        raise ValueError("log-log fit needs positive responses")
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


@dataclass(frozen=True)
class SectorInjectionResult:
    sector: str
    f0: float
    fB: float
    coupled: bool
    weight_slope: float
    phase_slope_1: float
    phase_slope_n: float
    n_lunes: int


def sector_injection(sector, sigmas=None, n_lunes=2, omega_m=2.22, point=DEFAULT_POINT,
                     phase_sigmas=None):
    """First-order routing, response-weight slope and lune phase slopes for one sector."""
    V = sector_operator(sector)
    th, ph = point
    H = lambda_rwa(omega_m, th, ph)
    D = dark_state(th, ph)
    f0, fB, coupled = routing_fractions(first_order_correction(H, V, D), th, ph)
    sigmas = omega_m * np.logspace(-4, -2, 5) if sigmas is None else np.asarray(sigmas)
    if np.max(sigmas) > 0.1 * omega_m:
        raise ValueError("sigma must be small compared with omega_m")
    w_slope = float("nan")
    if coupled:
        w = [perturbed_weight(V, s, omega_m, th, ph) for s in sigmas]
        w_slope = loglog_slope(sigmas / omega_m, w)
    slopes = [float("nan"), float("nan")]
    ps = omega_m * np.logspace(-3, -1.5, 5) if phase_sigmas is None else np.asarray(phase_sigmas)
    if sector in ("Ex", "Ey") and len(ps):
        for k, n in enumerate((1, n_lunes)):
            g0 = lune_geometric_phase(V, 0.0, omega_m, n)
            dg = [abs(lune_geometric_phase(V, s, omega_m, n) - g0) for s in ps]
            slopes[k] = loglog_slope(ps / omega_m, dg)
    return SectorInjectionResult(sector, f0, fB, coupled, w_slope, slopes[0], slopes[1], n_lunes)


def parity_filter_check(sigma=1e-3, omega_m=2.22, point=DEFAULT_POINT):
    """Max deviation between D1 under sigma S_z and -[sigma <B|S_z|D>/(Omega/2)] |0>."""
    _, _, sz = spin1_operators()
    th, ph = point
    D, B = dark_state(th, ph), bright_state(th, ph)
    d1 = first_order_correction(lambda_rwa(omega_m, th, ph), sigma * sz, D)
    pred = -(sigma * np.vdot(B, sz @ D) / (omega_m / 2)) * ket(IDX_0)
    return float(np.max(np.abs(d1 - pred)))


def lambda_frame_generators(theta, phi):
    """Port-normalized A2 and E generators |B><D| + h.c. and |0><D| + h.c."""
    D, B = dark_state(theta, phi), bright_state(theta, phi)
    z = ket(IDX_0)
    a2 = np.outer(B, D.conj()) + np.outer(D, B.conj())
    return a2, lambda beta: (np.exp(1j * beta) * np.outer(z, D.conj())
                             + np.exp(-1j * beta) * np.outer(D, z.conj()))


def mixed_sector_scan(alphas, betas, sigma=1e-3, omega_m=2.22, point=DEFAULT_POINT):
    """Routing fractions of V = sigma[cos a V_A2 + sin a V_E(beta)].

    Returns (f0 grid, fB grid, max |f0 - cos^2 a|, max |fB - sin^2 a|).
    """
    if sigma / omega_m > 1e-2:
        raise ValueError("sigma / omega_m must be <= 1e-2")
    th, ph = point
    H = lambda_rwa(omega_m, th, ph)
    D = dark_state(th, ph)
    a2, e_gen = lambda_frame_generators(th, ph)
    f0 = np.zeros((len(alphas), len(betas)))
    fB = np.zeros_like(f0)
    for i, a in enumerate(alphas):
        for j, b in enumerate(betas):
            V = sigma * (np.cos(a) * a2 + np.sin(a) * e_gen(b))
            f0[i, j], fB[i, j], _ = routing_fractions(first_order_correction(H, V, D), th, ph)
    ca = np.cos(np.asarray(alphas))[:, None] ** 2
    return f0, fB, float(np.max(np.abs(f0 - ca))), float(np.max(np.abs(fB - (1 - ca))))


def spurion_effective_detuning(delta_over_omega=0.0, amp_skew=0.0, phase_skew=0.0):
    """Effective dressed-state detuning x of each spurion (and their quadrature sum)."""
    xs = (delta_over_omega, amp_skew / 2, phase_skew / 2)
    return xs, float(np.sqrt(np.sum(np.square(xs))))


def spurion_analytic(delta_over_omega=0.0, amp_skew=0.0, phase_skew=0.0):
    x = delta_over_omega
    return {"delta": 4 * x * x / (1 + 4 * x * x), "amp": amp_skew ** 2, "phase": np.sin(phase_skew) ** 2}


def spurion_numeric(x, omega_m=1.0, point=DEFAULT_POINT):
    """(f0, fB) of the A2 response on the Lambda Hamiltonian with detuning x*Omega on |0>."""
    _, _, sz = spin1_operators()
    th, ph = point
    H = lambda_rwa(omega_m, th, ph) + x * omega_m * P_AUX
    D = dark_state(th, ph)
    f0, fB, _ = routing_fractions(first_order_correction(H, sz, D), th, ph)
    return f0, fB


def spurion_robustness(delta_over_omega=0.0, amp_skew=0.0, phase_skew=0.0, omega_m=1.0):
    """Numeric and analytic routing of the A2 response under detuning and arm skews.

    Arm amplitude and phase skews enter through their effective dressed-state
    detunings a/2 and dphi/2; simultaneous spurions add in quadrature.
    """
    if abs(delta_over_omega) > 0.2 or abs(amp_skew) > 0.2 or abs(phase_skew) > np.deg2rad(20):
        raise ValueError("spurions must be small (<= 0.2, 20%, 20 deg)")
    xs, x_tot = spurion_effective_detuning(delta_over_omega, amp_skew, phase_skew)
    singles = {k: spurion_numeric(x, omega_m) for k, x in zip(("delta", "amp", "phase"), xs)}
    return {
        "f0": spurion_numeric(x_tot, omega_m)[0],
        "fB": spurion_numeric(x_tot, omega_m)[1],
        "single_fB": {k: v[1] for k, v in singles.items()},
        "analytic_fB": spurion_analytic(delta_over_omega, amp_skew, phase_skew),
    }

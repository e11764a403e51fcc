"""Surface-spin bath (Gillespie KMC) and Lindblad collapse sets.

Lengths are in nm, times in us, fields in gauss.  Surface spins sit in the
z = 0 plane above an NV at depth d; each spin contributes a secular dipolar
field coef_i * s_i along the NV axis with s_i = +-1/2.
"""

import csv
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .quantum_core import IDX_0, IDX_M1, IDX_P1, embed_qubit_operator, outer, pauli

MU0_MUB_4PI = 1e-7 * 9.27401e-24     # T m^3
NM = 1e-9
TESLA_TO_GAUSS = 1e4


@dataclass(frozen=True)
class SurfaceBathConfig:
    n_spins: int = 20
    rho_s: float = 0.004          # nm^-2
    r_c: float = 5.0              # nm
    tau_c_ns: float = 10.0        # ns
    depth_nm: float = 20.0
    hopping: str = "swap"         # or "pair_flip"
    field_scale: float = 1.0      # extra multiplier for sensitivity sweeps

    def __post_init__(self):
        if self.n_spins < 1:
            raise ValueError("n_spins must be >= 1")
        if self.hopping not in ("swap", "pair_flip"):
            raise ValueError("hopping must be 'swap' or 'pair_flip'")

    @property
    def patch_area(self):
        return self.n_spins / self.rho_s

    @property
    def tau_c_us(self):
        return 1e-3 * self.tau_c_ns


@dataclass(frozen=True)
class BathGeometry:
    cfg: SurfaceBathConfig
    positions: np.ndarray         # (N, 3) nm, z = 0
    coef: np.ndarray              # gauss per unit s_i, before normalization
    rates: np.ndarray             # (n_pairs,) 1/us
    pairs: np.ndarray             # (n_pairs, 2)
    scale: float                  # static variance-normalization factor

    @property
    def total_rate(self):
        return float(self.rates.sum())


@dataclass(frozen=True)
class FieldTrace:
    t: np.ndarray
    B: np.ndarray                 # gauss
    seed: int
    n_events: int = 0


def dipolar_coefficient(positions, depth_nm):
    """Secular dipolar field (gauss) at the NV per unit spin projection."""
    rel = positions - np.array([0.0, 0.0, -depth_nm])
    r = np.linalg.norm(rel, axis=1) * NM
    cos_a = rel[:, 2] * NM / r
    return MU0_MUB_4PI * (3 * cos_a ** 2 - 1) / r ** 3 * TESLA_TO_GAUSS


def continuum_field_variance(rho_s, depth_nm):
    """Field variance (G^2) of a uniform half-plane of s = +-1/2 spins."""
    d = depth_nm * NM
    rho = rho_s / NM ** 2
    # int d^2r (3cos^2-1)^2/r^6 = (pi/d^4) * int_1^inf (3/v-1)^2 / v^3 dv
    radial, _ = quad(lambda v: (3 / v - 1) ** 2 / v ** 3, 1, np.inf)
    return 0.25 * rho * (MU0_MUB_4PI * TESLA_TO_GAUSS) ** 2 * np.pi * radial / d ** 4


def sample_bath_geometry(cfg, rng):
    """Uniform positions on a square patch of area N/rho_s centred above the NV."""
    side = np.sqrt(cfg.patch_area)
    xy = rng.uniform(-side / 2, side / 2, size=(cfg.n_spins, 2))
    pos = np.column_stack([xy, np.zeros(cfg.n_spins)])
    coef = dipolar_coefficient(pos, cfg.depth_nm)
    iu = np.triu_indices(cfg.n_spins, k=1)
    pairs = np.column_stack(iu)
    r = np.linalg.norm(pos[iu[0]] - pos[iu[1]], axis=1)
    rates = pair_rates(r, cfg.r_c, cfg.tau_c_us)
    discrete_var = 0.25 * np.sum(coef ** 2)
    scale = np.sqrt(continuum_field_variance(cfg.rho_s, cfg.depth_nm) / discrete_var)
    return BathGeometry(cfg, pos, coef, rates, pairs, float(scale * cfg.field_scale))


def pair_rates(r, r_c, tau_c):
    """Gamma_ij = exp(-r_ij / r_c) / tau_c."""
    return np.exp(-np.asarray(r, float) / r_c) / tau_c


def initial_spins(n, rng):
    return rng.choice(np.array([0.5, -0.5]), size=n)


def kmc_events(geom, T, rng):
    """Event times and pair indices of a Gillespie run over [0, T].

    Rates depend only on positions, so the total rate is constant and the
    waiting times are i.i.d. exponentials.
    """
    R = geom.total_rate
    if R <= 0 or len(geom.rates) == 0:
        return np.zeros(0), np.zeros(0, int)
    times = []
    t = 0.0
    # draw waiting times in blocks
    block = max(16, int(1.2 * R * T) + 16)
    while True:
        w = rng.exponential(1.0 / R, size=block)
        ts = t + np.cumsum(w)
        keep = ts[ts <= T]
        times.append(keep)
        if len(keep) < block:
            break
        t = ts[-1]
    times = np.concatenate(times)
    idx = rng.choice(len(geom.rates), size=len(times), p=geom.rates / R)
    return times, idx


def kmc_field_trace(geom, T, rng, n_grid=1000, spins=None, seed=0):
    """Sample B_z^surf(t) (gauss, normalized) on a uniform grid of n_grid points."""
    if T <= 0:
        raise ValueError("T must be positive")
    s = initial_spins(geom.cfg.n_spins, rng) if spins is None else np.array(spins, float)
    times, idx = kmc_events(geom, T, rng)
    grid = np.linspace(0.0, T, n_grid)
    out = np.empty(n_grid)
    coef = geom.coef
    B = float(coef @ s)
    pairs = geom.pairs
    swap = geom.cfg.hopping == "swap"
    k = 0
    for e_t, e_i in zip(times, idx):
        while k < n_grid and grid[k] < e_t:
            out[k] = B
            k += 1
        i, j = pairs[e_i]
        si, sj = s[i], s[j]
        if swap:
            if si != sj:
                s[i], s[j] = sj, si
                B += (coef[i] - coef[j]) * (sj - si)
        else:
            s[i], s[j] = -si, -sj
            B -= 2 * (coef[i] * si + coef[j] * sj)
    out[k:] = B
    return FieldTrace(grid, geom.scale * out, int(seed), len(times))


def export_trace_csv(trace, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "B_z_surf"])
        for a, b in zip(trace.t, trace.B):
            w.writerow([f"{a:.12g}", f"{b:.12g}"])
    return path


@dataclass(frozen=True)
class CollapseSet:
    ops: tuple = ()
    rates: tuple = ()
    labels: tuple = ()

    def __post_init__(self):
        if len(self.ops) != len(self.rates):
            raise ValueError("ops and rates must have equal length")
        if any(r < 0 for r in self.rates):
            raise ValueError("rates must be non-negative")

    def scaled(self):
        """Operators multiplied by sqrt(rate)."""
        return [np.sqrt(r) * op for op, r in zip(self.ops, self.rates) if r > 0]

    def __len__(self):
        return len(self.ops)


def lindblad_collapse_set(T1=np.inf, T1rho=np.inf, platform="NV", T1_orb=None):
    """Collapse operators (rates in 1/us).

    NV: |+-1> -> |0> at 1/T1 each, and Pauli depolarization on the
    computational doublet with total rate 1/T1rho split over sigma_x, y, z.
    SiV: |0> -> |+-1> at 1/(2 T1_orb) each (T1_orb in us).
    """
    ops, rates, labels = [], [], []
    if platform in ("NV", "SiC-VV"):
        if np.isfinite(T1):
            if T1 <= 0:
                raise ValueError("T1 must be positive")
            ops += [outer(IDX_0, IDX_P1), outer(IDX_0, IDX_M1)]
            rates += [1.0 / T1, 1.0 / T1]
            labels += ["T1:+1->0", "T1:-1->0"]
        if np.isfinite(T1rho):
            if T1rho <= 0:
                raise ValueError("T1rho must be positive")
            _, x, y, z = pauli()
            for lab, p in (("x", x), ("y", y), ("z", z)):
                ops.append(embed_qubit_operator(p))
                rates.append(1.0 / (3 * T1rho))
                labels.append(f"T1rho:{lab}")
    elif platform == "SiV":
        if T1_orb is None or T1_orb <= 0:
            raise ValueError("SiV needs a positive T1_orb")
        ops += [outer(IDX_P1, IDX_0), outer(IDX_M1, IDX_0)]
        rates += [0.5 / T1_orb, 0.5 / T1_orb]
        labels += ["orb:0->+1", "orb:0->-1"]
    else:
        raise ValueError(f"unknown platform {platform!r}")
    return CollapseSet(tuple(ops), tuple(rates), tuple(labels))


@dataclass(frozen=True)
class NoiseModel:
    """Everything that defines a noise realization except the random draws."""
    bath: SurfaceBathConfig = None
    collapse: CollapseSet = field(default_factory=CollapseSet)
    gamma_e: float = 2.80

    @property
    def has_bath(self):
        return self.bath is not None


def nv_default_noise(T1=1000.0, T1rho=500.0, bath=None):
    return NoiseModel(bath if bath is not None else SurfaceBathConfig(),
                      lindblad_collapse_set(T1, T1rho, "NV"))

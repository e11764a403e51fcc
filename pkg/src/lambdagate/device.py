"""Closed-form device calculators: membrane, electrostatic tuning, HBAR budget."""

from dataclasses import dataclass

import numpy as np

from .hamiltonians import GAMMA_E, NV, SIC_3C, dq_stark_scale

EPS0_VAC = 8.85419e-12      # F/m
MU0 = 1.25664e-6            # N/A^2
MU_B = 9.27401e-24          # J/T
CLAMPED_STIFFNESS_RATIO = 2.21
V_BREAKDOWN = 35.0          # V
D33_ALN = 5.5e-12           # m/V
R_MOT = 50.0                # ohm
KAPPA_DIAMOND = 2200.0      # W/(m K)


@dataclass(frozen=True)
class MembraneSpec:
    L_um: float = 10.0
    h_nm: float = 200.0
    young_GPa: float = 1050.0
    poisson: float = 0.104
    density: float = 3515.0
    boundary: str = "simply-supported"

    def __post_init__(self):
        if self.L_um <= 0 or self.h_nm <= 0 or self.young_GPa <= 0 or self.density <= 0:
            raise ValueError("membrane dimensions and moduli must be positive")
        if not 0 < self.poisson < 0.5:
            raise ValueError("Poisson ratio must lie in (0, 0.5)")
        if self.boundary not in ("simply-supported", "clamped"):
            raise ValueError("boundary must be simply-supported or clamped")


@dataclass(frozen=True)
class HbarSpec:
    h_d_um: float = 23.4
    radius_um: float = 25.0
    v_shear: float = 12822.0
    h_aln_um: float = 1.0
    Q: float = 1e4
    eta_sh: float = 1e-3

    def __post_init__(self):
        if self.Q < 1:
            raise ValueError("Q must be >= 1")
        if not 0 < self.eta_sh <= 1:
            raise ValueError("eta_sh must lie in (0, 1]")
        if self.h_d_um <= 0 or self.v_shear <= 0 or self.h_aln_um <= 0 or self.radius_um <= 0:
            raise ValueError("HBAR dimensions must be positive")


def membrane_modes(spec=MembraneSpec(), modes=((1, 1), (1, 2), (2, 2))):
    """Flexural rigidity, mode frequencies (MHz), effective mass (pg) and stiffness (N/m).

    The stiffness refers to the (1,2) mode used for the doublet.
    """
    L = spec.L_um * 1e-6
    h = spec.h_nm * 1e-9
    Y = spec.young_GPa * 1e9
    D = Y * h ** 3 / (12 * (1 - spec.poisson ** 2))
    base = np.pi / (2 * L * L) * np.sqrt(D / (spec.density * h))
    f = {(n, m): base * (n * n + m * m) / 1e6 for n, m in modes}
    f0 = base * 5
    m_eff = spec.density * L * L * h / 4
    k_ss = m_eff * (2 * np.pi * f0) ** 2
    k = k_ss * (CLAMPED_STIFFNESS_RATIO if spec.boundary == "clamped" else 1.0)
    return {"D_bend": D, "f_nm": f, "f0_MHz": f0 / 1e6, "m_eff_pg": m_eff * 1e15,
            "k_ss": k_ss, "k": k}


def electrostatic_tuning(delta, spec=MembraneSpec(), gap_nm=200.0, coverage=1.0):
    """Splitting from a fractional asymmetry and the voltage that closes it.

    The softened frequency obeys f = f0 sqrt(1 - x) with x = eps0 A V^2/(k d^3).
    """
    if gap_nm <= 0:
        raise ValueError("gap must be positive")
    if not 0 < coverage <= 1:
        raise ValueError("coverage must lie in (0, 1]")
    mm = membrane_modes(spec)
    frac = 0.6 * delta
    if frac >= 1:
        raise ValueError("asymmetry too large to close")
    x = 1 - (1 - frac) ** 2
    A = coverage * (spec.L_um * 1e-6) ** 2
    d = gap_nm * 1e-9
    v_req = float(np.sqrt(x * mm["k"] * d ** 3 / (EPS0_VAC * A)))
    return {"delta_f_MHz": frac * mm["f0_MHz"], "V_req": v_req,
            "headroom": V_BREAKDOWN - v_req, "exceeds_breakdown": v_req > V_BREAKDOWN}


def electrostatic_shift(V, spec=MembraneSpec(), gap_nm=200.0, coverage=1.0):
    """Downward frequency shift (MHz) at bias V."""
    mm = membrane_modes(spec)
    x = EPS0_VAC * coverage * (spec.L_um * 1e-6) ** 2 * np.asarray(V, float) ** 2 / (mm["k"] * (gap_nm * 1e-9) ** 3)
    return mm["f0_MHz"] * (1 - np.sqrt(np.clip(1 - x, 0, None)))


def hbar_design(spec=HbarSpec(), gamma_e=GAMMA_E, targets=None, n_max=20):
    """Overtone comb, FSR and the field that makes the FSR equal the Zeeman gap."""
    fsr = spec.v_shear / (2 * spec.h_d_um * 1e-6) / 1e6
    B = fsr / (2 * gamma_e)
    targets = (NV.D - gamma_e * B, NV.D + gamma_e * B) if targets is None else targets
    n_idx = [int(round(t / fsr)) for t in targets]
    return {"FSR_MHz": fsr, "B_z_G": B, "f_n": [n * fsr for n in range(1, n_max + 1)],
            "targets_MHz": list(targets), "overtones": n_idx,
            "detuning_MHz": [n * fsr - t for n, t in zip(n_idx, targets)]}


def hbar_budget(eps0=5e-5, eta_q=10.0, h26=NV.h26, T_gate_us=7.0, f0_GHz=2.87, Q=1e4,
                h_aln_um=1.0, h_d_um=23.4, radius_um=25.0):
    """Drive voltage, Rabi rate (kHz), power (mW), bandwidth limit on Q and pre-ring (us)."""
    if min(eps0, eta_q, T_gate_us, f0_GHz, Q) <= 0:
        raise ValueError("targets must be positive")
    v_rf = eps0 * h_aln_um * 1e-6 / (eta_q * D33_ALN)
    p = v_rf ** 2 / (2 * R_MOT)
    f0 = f0_GHz * 1e9
    return {"V_RF": v_rf, "Omega_m_kHz": abs(h26) * eps0 * 1e3, "power_mW": p * 1e3,
            "Q_max": f0 * T_gate_us * 1e-6 / 2, "pre_ring_us": 3 * Q / (np.pi * f0) * 1e6,
            "delta_T_K": thermal_rise(p, h_d_um, radius_um)}


def thermal_rise(power_W, h_d_um=23.4, radius_um=25.0, kappa=KAPPA_DIAMOND):
    """One-dimensional steady-state temperature rise across the substrate."""
    return power_W * h_d_um * 1e-6 / (kappa * np.pi * (radius_um * 1e-6) ** 2)


def platform_stark_report(omega_m=2.22):
    """AC Stark scale on NV and SiC at the same Rabi target, and their ratio."""
    nv, sic = dq_stark_scale(omega_m, NV), dq_stark_scale(omega_m, SIC_3C)
    return {"omega_m_MHz": omega_m, "NV_delta_ac_kHz": nv["delta_ac_kHz"],
            "SiC_delta_ac_kHz": sic["delta_ac_kHz"],
            "ratio": nv["delta_ac_kHz"] / sic["delta_ac_kHz"]}


def device_report():
    """Flat key/value summary of the default device calculators."""
    out = {}
    mm = membrane_modes()
    out.update({"D_bend_J": mm["D_bend"], "f12_MHz": mm["f_nm"][(1, 2)], "m_eff_pg": mm["m_eff_pg"],
                "k_ss_N_per_m": mm["k_ss"],
                "k_clamped_N_per_m": membrane_modes(MembraneSpec(boundary="clamped"))["k"]})
    t1, t2 = electrostatic_tuning(0.01), electrostatic_tuning(0.01, coverage=0.5)
    out.update({"tuning_delta_f_MHz": t1["delta_f_MHz"], "V_req_full": t1["V_req"],
                "V_req_half": t2["V_req"], "V_breakdown": V_BREAKDOWN})
    hb = hbar_design()
    out.update({"FSR_MHz": hb["FSR_MHz"], "B_z_G": hb["B_z_G"],
                "overtone_minus": hb["overtones"][0], "overtone_plus": hb["overtones"][1]})
    out.update({f"hbar_{k}": v for k, v in hbar_budget().items()})
    out.update({f"stark_{k}": v for k, v in platform_stark_report().items()})
    return out

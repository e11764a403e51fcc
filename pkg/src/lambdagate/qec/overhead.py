"""Pauli-equivalent error rate and code-distance extrapolation."""

import math

import numpy as np

TH_DEP = 0.103
TH_ERA = 0.5
TARGET_PL = 1e-10
PREFACTOR = 0.1
BASELINE_D = 15


def p_eff(channel):
    """p_undet + (TH_DEP/TH_ERA) p_era."""
    return channel.p_undetected + (TH_DEP / TH_ERA) * channel.p_era


def threshold_ratio(channel, family):
    """Sum of per-mechanism rates over their thresholds.

    XZZX treats pure dephasing at the infinite-bias threshold; CSS sees it at
    the depolarizing threshold.  Erasure uses its own threshold in both.
    """
    th_z = TH_ERA if family == "XZZX" else TH_DEP
    return channel.p_era / TH_ERA + channel.p_Z / th_z + (channel.p_dep + channel.p_XY) / TH_DEP


def _odd_up(x):
    d = math.ceil(x - 1e-12)
    return d if d % 2 else d + 1


def required_distance(ratio, target=TARGET_PL, prefactor=PREFACTOR):
    """Smallest odd d with prefactor ratio^((d+1)/2) <= target."""
    if not 0 < ratio < 1:
        raise ValueError("below-threshold operation requires 0 < ratio < 1")
    k = math.ceil(math.log(target / prefactor) / math.log(ratio) - 1e-12)
    return _odd_up(2 * k - 1)


def fit_distance_scaling(ds, pls, target=TARGET_PL, window=(1e-4, 1e-1)):
    """Least-squares log p_L = a + b d on sub-threshold points, solved for p_L = target."""
    ds, pls = np.asarray(ds, float), np.asarray(pls, float)
    keep = (pls >= window[0]) & (pls <= window[1])
    if keep.sum() < 2:
        raise ValueError("need at least two sub-threshold points to fit")
    b, a = np.polyfit(ds[keep], np.log(pls[keep]), 1)
    if b >= 0:
        raise ValueError("p_L does not decrease with distance")
    return _odd_up((math.log(target) - a) / b), float(a), float(b)


def overhead_model(channel, baseline_d=BASELINE_D, target=TARGET_PL):
    """Distances and data-qubit counts for XZZX and erasure-aware CSS codes."""
    out = {"p_eff": p_eff(channel), "baseline_d": baseline_d, "baseline_qubits": baseline_d ** 2}
    for fam in ("XZZX", "CSS"):
        d = required_distance(threshold_ratio(channel, fam), target)
        out[fam] = {"d": d, "qubits": d * d,
                    "saving": (baseline_d ** 2 - d * d) / baseline_d ** 2}
    return out


def baseline_distance(channel, target=TARGET_PL):
    """Distance when every gate error is treated as depolarizing."""
    r = (channel.p_era + channel.p_undetected) / TH_DEP
    return required_distance(r, target)

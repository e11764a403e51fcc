"""Biased-erasure code-capacity noise sampler."""

from dataclasses import dataclass

import numpy as np

I, X, Y, Z = 0, 1, 2, 3


@dataclass(frozen=True)
class NoiseDraw:
    pauli: np.ndarray      # per qubit 0=I, 1=X, 2=Y, 3=Z
    erased: np.ndarray     # per qubit bool

    def symplectic(self):
        """Error as a binary vector [x | z]."""
        x = (self.pauli == X) | (self.pauli == Y)
        z = (self.pauli == Z) | (self.pauli == Y)
        return np.concatenate([x, z]).astype(np.uint8)


def scaled_rates(channel, s):
    rates = np.array([channel.p_era, channel.p_Z, channel.p_dep, channel.p_XY]) * s
    if np.any(rates < 0) or np.any(rates >= 1) or rates.sum() > 1:
        raise ValueError(f"scaled probabilities overflow at s={s}: {rates}")
    return rates


def sample_noise(code, channel, s, rng, erasure_identity=False):
    """Independent per-qubit draw: erasure, else Z, else depolarizing, else X/Y.

    Erased qubits receive a uniform Pauli from {X, Y, Z}, or from {I, X, Y, Z}
    when erasure_identity is set.
    """
    p_era, p_z, p_dep, p_xy = scaled_rates(channel, s)
    n = code.n
    u = rng.random(n)
    pauli = np.zeros(n, dtype=np.int8)
    erased = u < p_era
    lo = 0 if erasure_identity else 1
    pauli[erased] = rng.integers(lo, 4, erased.sum())
    c1 = p_era + p_z
    pauli[(u >= p_era) & (u < c1)] = Z
    c2 = c1 + p_dep
    dep = (u >= c1) & (u < c2)
    pauli[dep] = rng.integers(1, 4, dep.sum())
    xy = (u >= c2) & (u < c2 + p_xy)
    pauli[xy] = rng.integers(1, 3, xy.sum())
    return NoiseDraw(pauli, erased)

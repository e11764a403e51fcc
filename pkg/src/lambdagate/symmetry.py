"""Point-group machinery for the strain selection rule and noise sectors.

The two-dimensional E irrep of C3v is realized by the rotations by 0, 120 and
240 degrees and the three reflections across lines at 0, 60 and 120 degrees.
D3d acts on its E_g doublet through the same six matrices (inversion acts
trivially on gerade irreps), so it is stored as twelve elements carrying a
parity flag.
"""

from dataclasses import dataclass, field

import numpy as np

from .quantum_core import spin1_operators


def _rot(beta):
    c, s = np.cos(beta), np.sin(beta)
    return np.array([[c, -s], [s, c]])


def _refl(beta):
    c, s = np.cos(2 * beta), np.sin(2 * beta)
    return np.array([[c, s], [s, -c]])


@dataclass(frozen=True)
class PointGroup:
    name: str
    elements: tuple          # 2x2 real matrices of the doublet irrep (1x1 for trivial)
    parities: tuple          # +1 / -1 inversion parity per element
    characters: dict = field(default_factory=dict)   # irrep -> tuple of characters
    doublet: str = "E"

    @property
    def order(self):
        return len(self.elements)

    def character(self, irrep):
        return np.asarray(self.characters[irrep], dtype=float)


def c3v():
    els = [_rot(2 * np.pi * k / 3) for k in range(3)] + [_refl(np.pi * k / 3) for k in range(3)]
    det = [round(np.linalg.det(m)) for m in els]
    tr = [np.trace(m) for m in els]
    chars = {"A1": tuple(1.0 for _ in els), "A2": tuple(float(d) for d in det), "E": tuple(tr)}
    return PointGroup("C3v", tuple(els), tuple(1 for _ in els), chars, "E")


def d3d():
    base = c3v()
    els = list(base.elements) * 2
    par = [1] * 6 + [-1] * 6
    det = [round(np.linalg.det(m)) for m in els]
    tr = [np.trace(m) for m in els]
    chars = {
        "A1g": tuple(1.0 for _ in els),
        "A2g": tuple(float(d) for d in det),
        "Eg": tuple(tr),
        "A1u": tuple(float(p) for p in par),
        "A2u": tuple(float(d * p) for d, p in zip(det, par)),
        "Eu": tuple(t * p for t, p in zip(tr, par)),
    }
    return PointGroup("D3d", tuple(els), tuple(par), chars, "Eg")


def trivial():
    return PointGroup("trivial", (np.eye(1),), (1,), {"A": (1.0,)}, "A")


def get_group(name):
    groups = {"C3v": c3v, "D3d": d3d, "trivial": trivial}
    if name not in groups:
        raise ValueError(f"unknown point group {name!r}")
    return groups[name]()


def character_orthogonality(group):
    """Gram matrix (1/|G|) sum_g chi_a chi_b over the stored irreps."""
    names = list(group.characters)
    chi = np.array([group.character(n) for n in names])
    return names, chi @ chi.T / group.order


def tensor_square_decomposition(group, tol=1e-9):
    """Multiplicities of the irreps in the tensor square of the doublet."""
    chi_d = group.character(group.doublet)
    out = {}
    for name in group.characters:
        n = float(np.sum(chi_d ** 2 * group.character(name)) / group.order)
        k = int(round(n))
        if abs(n - k) > tol:
            raise ValueError(f"non-integer multiplicity {n} for {name}: inconsistent group data")
        if k:
            out[name] = k
    return out


def schur_average_coupling(group, C):
    """Group average (1/|G|) sum_g R(g)^T C R(g) of a 2x2 coupling matrix."""
    C = np.asarray(C, dtype=float)
    acc = np.zeros_like(C)
    for R in group.elements:
        acc += R.T @ C @ R
    return acc / group.order


def bilinear_sectors(eps, ops):
    """Bilinear A1, A2 and E combinations of two doublets.

    eps, ops: length-2 sequences (numbers or arrays).  Returns
    (B_A1, B_A2, (B_E1, B_E2)).
    """
    e1, e2 = eps
    o1, o2 = ops
    b_a1 = e1 * o1 + e2 * o2
    b_a2 = e1 * o2 - e2 * o1
    b_e = (e1 * o1 - e2 * o2, -(e1 * o2 + e2 * o1))
    return b_a1, b_a2, b_e


@dataclass(frozen=True)
class SectorWeights:
    w_A1: float
    w_A2: float
    w_Ex: float
    w_Ey: float
    zero: bool = False

    def as_tuple(self):
        return (self.w_A1, self.w_A2, self.w_Ex, self.w_Ey)


def sector_representatives():
    """Unit Hilbert-Schmidt norm representatives (S_z^2, S_z, S_x, S_y)."""
    sx, sy, sz = spin1_operators()
    reps = [sz @ sz, sz, sx, sy]
    return [r / np.sqrt(np.real(np.trace(r.conj().T @ r))) for r in reps]


def hs_sector_weights(V, tol=1e-14):
    """Squared Hilbert-Schmidt overlap fractions of V with the sector representatives."""
    V = np.asarray(V, dtype=complex)
    if np.max(np.abs(V - V.conj().T)) > 1e-10:
        raise ValueError("V must be Hermitian")
    ov = np.array([abs(np.trace(r.conj().T @ V)) ** 2 for r in sector_representatives()])
    tot = ov.sum()
    if tot <= tol:
        return SectorWeights(0.0, 0.0, 0.0, 0.0, zero=True)
    w = ov / tot
    return SectorWeights(*map(float, w))

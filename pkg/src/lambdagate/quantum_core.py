"""Qutrit basis conventions, spin-1 operators and state-fidelity primitives.

Basis ordering is fixed repo-wide as (|+1>, |0>, |-1>).  The computational
subspace Q is {|-1>, |+1>} with logical |0_L> = |-1> and |1_L> = |+1>; the
auxiliary level is |0>.  Hamiltonians are stored in cycle frequency (MHz) and
time in microseconds; propagators supply the 2*pi.
"""

import numpy as np

IDX_P1 = 0
IDX_0 = 1
IDX_M1 = 2
BASIS_LABELS = ("+1", "0", "-1")
# logical order used for every 2x2 block: (|0_L>, |1_L>) = (|-1>, |+1>)
Q_INDICES = (IDX_M1, IDX_P1)

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10


class FullyLeakedError(ValueError):
    """Raised when a state has no weight left on the computational subspace."""


def ket(i, dim=3):
    v = np.zeros(dim, dtype=complex)
    v[i] = 1.0
    return v


def outer(i, j, dim=3):
    """Matrix unit |i><j|."""
    m = np.zeros((dim, dim), dtype=complex)
    m[i, j] = 1.0
    return m


def dag(a):
    return np.conj(np.swapaxes(a, -1, -2))


def is_hermitian(a, tol=HERMITIAN_TOL):
    return bool(np.max(np.abs(a - dag(a)), initial=0.0) <= tol)


def is_unitary(u, tol=UNITARY_TOL):
    d = u.shape[0]
    return bool(np.max(np.abs(u @ dag(u) - np.eye(d))) <= tol)


def spin1_operators():
    """Return (S_x, S_y, S_z) for spin 1 in the (|+1>, |0>, |-1>) basis."""
    r = 1.0 / np.sqrt(2.0)
    sx = r * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex)
    sy = r * np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex)
    sz = np.diag([1.0, 0.0, -1.0]).astype(complex)
    return sx, sy, sz


def anticommutator(a, b):
    return a @ b + b @ a


def commutator(a, b):
    return a @ b - b @ a


def dq_operators():
    """Double-quantum pair (S_x^2 - S_y^2, {S_x, S_y})."""
    sx, sy, _ = spin1_operators()
    return sx @ sx - sy @ sy, anticommutator(sx, sy)


def pauli():
    """Pauli matrices (I, X, Y, Z)."""
    return (np.eye(2, dtype=complex),
            np.array([[0, 1], [1, 0]], dtype=complex),
            np.array([[0, -1j], [1j, 0]], dtype=complex),
            np.array([[1, 0], [0, -1]], dtype=complex))


def embed_qubit_operator(a2):
    """Embed a 2x2 operator on (|0_L>, |1_L>) into the qutrit, zero on |0>."""
    a3 = np.zeros((3, 3), dtype=complex)
    a3[np.ix_(Q_INDICES, Q_INDICES)] = a2
    return a3


def qubit_block(a3):
    """2x2 block of a qutrit operator on (|0_L>, |1_L>)."""
    return np.asarray(a3)[np.ix_(Q_INDICES, Q_INDICES)]


def validate_density_matrix(rho, tol_trace=1e-9, tol_herm=1e-10, tol_eig=1e-9):
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    if abs(np.trace(rho) - 1.0) > tol_trace:
        raise ValueError(f"trace {np.trace(rho).real:.3e} != 1")
    if np.max(np.abs(rho - dag(rho))) > tol_herm:
        raise ValueError("density matrix is not Hermitian")
    if np.linalg.eigvalsh(0.5 * (rho + dag(rho)))[0] < -tol_eig:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def psd_sqrt(a):
    """Square root of a Hermitian PSD matrix with eigenvalue clipping at 0."""
    w, v = np.linalg.eigh(0.5 * (a + dag(a)))
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ dag(v)


def uhlmann_fidelity(rho_id, rho_act, tol=1e-9):
    """Uhlmann-Jozsa fidelity (Tr sqrt(sqrt(r) s sqrt(r)))^2 clipped to [0, 1]."""
    rho_id = np.asarray(rho_id)
    rho_act = np.asarray(rho_act)
    if rho_id.shape != rho_act.shape:
        raise ValueError("dimension mismatch")
    for r in (rho_id, rho_act):
        if np.linalg.eigvalsh(0.5 * (r + dag(r)))[0] < -tol:
            raise ValueError("input is not positive semidefinite")
    s = psd_sqrt(rho_id)
    m = s @ rho_act @ s
    w = np.clip(np.linalg.eigvalsh(0.5 * (m + dag(m))), 0.0, None)
    f = float(np.sum(np.sqrt(w)) ** 2)
    if f > 1.0 + tol or f < -tol:
        raise ValueError(f"fidelity {f} outside [0, 1] beyond tolerance")
    return min(max(f, 0.0), 1.0)


def project_computational(rho3):
    """Project a qutrit state onto Q and renormalize.

    Returns (rho2, leakage) where leakage is the |0> population.
    """
    rho3 = np.asarray(rho3)
    leak = float(np.real(rho3[IDX_0, IDX_0]))
    p_surv = 1.0 - leak
    if p_surv <= 1e-12:
        raise FullyLeakedError("state is fully leaked; renormalization undefined")
    rho2 = qubit_block(rho3) / p_surv
    return rho2, leak

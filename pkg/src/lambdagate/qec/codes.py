"""Stabilizer codes as binary symplectic matrices [x | z].

Toric lattice: horizontal edge h(i,j) = i d + j, vertical edge
v(i,j) = d^2 + i d + j.  Faces carry X on {h(i,j), h(i+1,j), v(i,j), v(i,j+1)}
and vertices carry Z on {h(i,j), h(i,j-1), v(i,j), v(i-1,j)}.  The XZZX
variant applies a Hadamard to every vertical edge.

Rectangular planar XZZX: qubits (r, c) on a d_r x d_c grid; plaquette (i, j)
acts as X, Z, Z, X on its TL, TR, BL, BR corners, with weight-2 boundary
plaquettes on alternating sites.
"""

from dataclasses import dataclass

import numpy as np


def gf2_rank(M):
    M = np.array(M, dtype=np.uint8) % 2
    r = 0
    rows, cols = M.shape
    for c in range(cols):
        piv = np.nonzero(M[r:, c])[0]
        if len(piv) == 0:
            continue
        p = r + piv[0]
        M[[r, p]] = M[[p, r]]
        hit = np.nonzero(M[:, c])[0]
        hit = hit[hit != r]
        M[hit] ^= M[r]
        r += 1
        if r == rows:
            break
    return r


def gf2_nullspace(M):
    """Basis of {x : M x = 0 mod 2} as rows."""
    M = np.array(M, dtype=np.uint8) % 2
    rows, cols = M.shape
    pivcols = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = np.nonzero(M[r:, c])[0]
        if len(piv) == 0:
            continue
        p = r + piv[0]
        M[[r, p]] = M[[p, r]]
        hit = np.nonzero(M[:, c])[0]
        hit = hit[hit != r]
        M[hit] ^= M[r]
        pivcols.append(c)
        r += 1
    free = [c for c in range(cols) if c not in set(pivcols)]
    basis = []
    for f in free:
        x = np.zeros(cols, np.uint8)
        x[f] = 1
        for i, pc in enumerate(pivcols):
            if M[i, f]:
                x[pc] = 1
        basis.append(x)
    return np.array(basis, dtype=np.uint8).reshape(len(basis), cols)


def symp(A, B, n):
    """Symplectic products (mod 2) between rows of A and rows of B."""
    A = np.atleast_2d(A).astype(np.int64)
    B = np.atleast_2d(B).astype(np.int64)
    return (A[:, :n] @ B[:, n:].T + A[:, n:] @ B[:, :n].T) % 2


def logical_pairs(S, n):
    """Symplectic basis of the centralizer of S modulo S, as (a, b) pairs."""
    swapped = np.concatenate([S[:, n:], S[:, :n]], axis=1)
    cands = gf2_nullspace(swapped)
    base = gf2_rank(S)
    L = []
    for c in cands:
        if gf2_rank(np.vstack([S] + L + [c[None]])) > base + len(L):
            L.append(c[None])
    L = [x[0] for x in L]
    pairs = []
    while L:
        a = L.pop(0)
        idx = next(i for i, b in enumerate(L) if symp(a, b, n)[0, 0])
        b = L.pop(idx)
        rest = []
        for c in L:
            if symp(c, b, n)[0, 0]:
                c = c ^ a
            if symp(c, a, n)[0, 0]:
                c = c ^ b
            rest.append(c)
        L = rest
        pairs.append((a, b))
    return pairs


@dataclass(frozen=True)
class Sector:
    H: np.ndarray          # checks x qubits incidence (uint8)
    rel: np.ndarray        # per qubit index into the 2n error vector flipping these checks


@dataclass(frozen=True)
class StabilizerCode:
    name: str
    variant: str
    n: int
    dims: tuple
    stabilizers: np.ndarray        # (m, 2n)
    sector_rows: tuple             # two index arrays into stabilizers
    sectors: tuple                 # two Sector objects
    logicals_a: np.ndarray         # logicals whose anticommutation flags sector-a failure
    logicals_b: np.ndarray
    planar: bool = False

    @property
    def logicals(self):
        return np.vstack([self.logicals_a, self.logicals_b])

    @property
    def label(self):
        return "x".join(map(str, self.dims))


def make_sector(M, n):
    """Incidence matrix and relevant error bit for a block of checks.

    A check acting as X on a qubit is flipped by the z bit of the error;
    acting as Z, by the x bit.  Within one sector every qubit must be seen
    with a single Pauli type.
    """
    H = ((M[:, :n] | M[:, n:]) > 0).astype(np.uint8)
    rel = np.empty(n, dtype=np.int64)
    for q in range(n):
        ks = np.nonzero(H[:, q])[0]
        kinds = {"X" if M[k, q] and not M[k, n + q] else "Z" for k in ks}
        if len(kinds) > 1:
            raise ValueError(f"qubit {q} mixes Pauli types within a sector")
        rel[q] = n + q if kinds == {"X"} else q
    return Sector(H, rel)


def _pauli_row(n, xs=(), zs=()):
    v = np.zeros(2 * n, np.uint8)
    for q in xs:
        v[q] = 1
    for q in zs:
        v[n + q] = 1
    return v


def _hadamard_cols(M, qubits, n):
    M = M.copy()
    for q in qubits:
        tmp = M[..., q].copy()
        M[..., q] = M[..., n + q]
        M[..., n + q] = tmp
    return M


def build_toric(d, variant="CSS"):
    if d < 3 or d % 2 == 0:
        raise ValueError("toric distance must be odd and >= 3")
    if variant not in ("CSS", "XZZX"):
        raise ValueError("variant must be CSS or XZZX")
    n = 2 * d * d

    def h(i, j):
        return (i % d) * d + (j % d)

    def v(i, j):
        return d * d + (i % d) * d + (j % d)

    F = np.zeros((d * d, 2 * n), np.uint8)
    V = np.zeros((d * d, 2 * n), np.uint8)
    for i in range(d):
        for j in range(d):
            k = i * d + j
            for q in (h(i, j), h(i + 1, j), v(i, j), v(i, j + 1)):
                F[k, q] = 1
            for q in (h(i, j), h(i, j - 1), v(i, j), v(i - 1, j)):
                V[k, n + q] = 1
    la = np.array([_pauli_row(n, zs=[v(0, j) for j in range(d)]),
                   _pauli_row(n, zs=[h(i, 0) for i in range(d)])])
    lb = np.array([_pauli_row(n, xs=[v(i, 0) for i in range(d)]),
                   _pauli_row(n, xs=[h(0, j) for j in range(d)])])
    if variant == "XZZX":
        vert = range(d * d, n)
        F, V = _hadamard_cols(F, vert, n), _hadamard_cols(V, vert, n)
        la, lb = _hadamard_cols(la, vert, n), _hadamard_cols(lb, vert, n)
    S = np.vstack([F, V])
    rows = (np.arange(d * d), np.arange(d * d, 2 * d * d))
    return StabilizerCode(f"toric-{variant}", variant, n, (d,), S, rows,
                          (make_sector(F, n), make_sector(V, n)), la, lb)


def build_rect_planar(d_r, d_c):
    """Rotated planar XZZX code on a d_r x d_c qubit grid."""
    for x in (d_r, d_c):
        if x < 3 or x % 2 == 0:
            raise ValueError("planar dimensions must be odd and >= 3")
    n = d_r * d_c

    def q(r, c):
        return r * d_c + c

    plaquettes = []   # (color, [(qubit, pauli)])
    for i in range(-1, d_r):
        for j in range(-1, d_c):
            corners = [((i, j), "X"), ((i, j + 1), "Z"), ((i + 1, j), "Z"), ((i + 1, j + 1), "X")]
            inside = [((r, c), p) for (r, c), p in corners if 0 <= r < d_r and 0 <= c < d_c]
            bulk = 0 <= i < d_r - 1 and 0 <= j < d_c - 1
            if not bulk:
                if len(inside) != 2:
                    continue
                if i == -1 and j % 2 == 0:
                    continue
                if i == d_r - 1 and j % 2 == 1:
                    continue
                if j == -1 and i % 2 == 1:
                    continue
                if j == d_c - 1 and i % 2 == 0:
                    continue
            plaquettes.append(((i + j) % 2, [(q(r, c), p) for (r, c), p in inside]))
    rows = []
    colors = []
    for col, ops in plaquettes:
        v = np.zeros(2 * n, np.uint8)
        for qq, p in ops:
            v[qq if p == "X" else n + qq] = 1
        rows.append(v)
        colors.append(col)
    S = np.array(rows)
    colors = np.array(colors)
    sec_rows = (np.nonzero(colors == 0)[0], np.nonzero(colors == 1)[0])
    sectors = tuple(make_sector(S[r], n) for r in sec_rows)
    pairs = logical_pairs(S, n)
    if len(pairs) != 1:
        raise RuntimeError("planar code should encode exactly one qubit")
    a, b = pairs[0]
    # label so that logicals_a flags residuals detected by sector 0's matching direction
    la, lb = _min_weight_rep(a, S, n), _min_weight_rep(b, S, n)
    return StabilizerCode("rect-XZZX", "XZZX", n, (d_r, d_c), S, sec_rows, sectors,
                          la[None], lb[None], planar=True)


def _min_weight_rep(x, S, n, sweeps=3):
    """Greedy weight reduction of a logical by stabilizer multiplication."""
    def wt(v):
        return int(np.count_nonzero(v[:n] | v[n:]))
    best = x.copy()
    for _ in range(sweeps):
        improved = False
        for s in S:
            c = best ^ s
            if wt(c) < wt(best):
                best, improved = c, True
        if not improved:
            break
    return best


def column_weights(code):
    """Number of stabilizers touching each qubit."""
    n = code.n
    return ((code.stabilizers[:, :n] | code.stabilizers[:, n:]) > 0).sum(axis=0)


def check_code(code):
    """Raise if stabilizers fail to commute or logicals are inconsistent."""
    n = code.n
    S = code.stabilizers
    if symp(S, S, n).any():
        raise AssertionError("stabilizers do not commute")
    L = code.logicals
    if symp(L, S, n).any():
        raise AssertionError("logicals do not commute with stabilizers")
    G = symp(code.logicals_a, code.logicals_b, n)
    if not np.array_equal(G, np.eye(len(code.logicals_a), dtype=G.dtype)):
        raise AssertionError("logical pairs are not symplectically paired")
    if symp(code.logicals_a, code.logicals_a, n).any() or symp(code.logicals_b, code.logicals_b, n).any():
        raise AssertionError("logicals within a family must commute")
    return True

"""Erasure-aware minimum-weight perfect matching per syndrome sector."""

import numpy as np
import pymatching
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

ERASED_WEIGHT = 1e-6


def edge_weights(erased):
    return np.where(np.asarray(erased, bool), ERASED_WEIGHT, 1.0)


def sector_syndrome(code, sector, error):
    sec = code.sectors[sector]
    return (sec.H.astype(np.int64) @ error[sec.rel]) % 2


def decode_mwpm(code, sector, syndrome, erased):
    """Qubit correction (0/1 per qubit) of minimum total edge weight for one sector."""
    sec = code.sectors[sector]
    syndrome = np.asarray(syndrome, np.uint8)
    if not syndrome.any():
        return np.zeros(code.n, np.uint8)
    if not code.planar and syndrome.sum() % 2:
        raise RuntimeError("odd defect count on a closed lattice")
    m = pymatching.Matching.from_check_matrix(sec.H, weights=edge_weights(erased))
    return m.decode(syndrome).astype(np.uint8)


def decode_error(code, error, erased):
    """Full symplectic correction from both sectors."""
    corr = np.zeros(2 * code.n, np.uint8)
    for k, sec in enumerate(code.sectors):
        c = decode_mwpm(code, k, sector_syndrome(code, k, error), erased)
        corr[sec.rel] ^= c
    return corr


def _graph(code, sector, erased):
    """Sparse decoding graph; the last node is the boundary for planar codes."""
    H = code.sectors[sector].H
    m = H.shape[0]
    w = edge_weights(erased)
    nb = m + (1 if code.planar else 0)
    best = {}
    for q in range(code.n):
        ch = np.nonzero(H[:, q])[0]
        if len(ch) == 2:
            a, b = int(ch[0]), int(ch[1])
        elif len(ch) == 1 and code.planar:
            a, b = int(ch[0]), m
        else:
            continue
        key = (min(a, b), max(a, b))
        best[key] = min(best.get(key, np.inf), w[q])
    rows, cols, vals = [], [], []
    for (a, b), v in best.items():
        rows += [a, b]
        cols += [b, a]
        vals += [v, v]
    return csr_matrix((vals, (rows, cols)), shape=(nb, nb)), m


def correction_weight(correction, erased):
    return float(np.sum(edge_weights(erased)[np.asarray(correction, bool)]))


def brute_force_matching_weight(code, sector, syndrome, erased, max_defects=16):
    """Exhaustive minimum pairing weight by bitmask dynamic programming."""
    defects = np.nonzero(np.asarray(syndrome))[0]
    k = len(defects)
    if k == 0:
        return 0.0
    if k > max_defects:
        raise ValueError("too many defects for exhaustive matching")
    G, m = _graph(code, sector, erased)
    D = dijkstra(G, directed=False, indices=defects)
    pair = D[:, defects]
    bnd = D[:, m] if code.planar else np.full(k, np.inf)
    full = (1 << k) - 1
    f = np.full(1 << k, np.inf)
    f[0] = 0.0
    for mask in range(1 << k):
        if not np.isfinite(f[mask]) or mask == full:
            continue
        i = next(b for b in range(k) if not mask >> b & 1)
        mi = mask | 1 << i
        f[mi] = min(f[mi], f[mask] + bnd[i])
        for j in range(i + 1, k):
            if not mask >> j & 1:
                mj = mi | 1 << j
                f[mj] = min(f[mj], f[mask] + pair[i, j])
    return float(f[full])

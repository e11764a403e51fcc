"""Logical-failure Monte Carlo over code-capacity noise."""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..propagation import child_seed
from .codes import build_rect_planar, build_toric, symp
from .decoder import decode_error
from .noise import sample_noise

CHUNK = 250
WILSON_Z = 1.959963984540054


def logical_failure(code, residual):
    """(failure_a, failure_b): anticommutation with any logical of each family."""
    residual = np.asarray(residual, np.uint8)
    fa = bool(symp(residual, code.logicals_a, code.n).any())
    fb = bool(symp(residual, code.logicals_b, code.n).any())
    return fa, fb


def wilson_interval(k, n, z=WILSON_Z):
    if n <= 0:
        raise ValueError("need at least one trial")
    p = k / n
    den = 1 + z * z / n
    c = (p + z * z / (2 * n)) / den
    h = z * np.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / den
    lo = 0.0 if k == 0 else max(0.0, c - h)
    hi = 1.0 if k == n else min(1.0, c + h)
    return lo, hi


@dataclass(frozen=True)
class CodeSpec:
    family: str                 # toric | rect
    variant: str = "XZZX"
    dims: tuple = (3,)

    def build(self):
        if self.family == "toric":
            return build_toric(self.dims[0], self.variant)
        if self.family == "rect":
            return build_rect_planar(*self.dims)
        raise ValueError(f"unknown code family {self.family!r}")

    @property
    def label(self):
        return "x".join(map(str, self.dims))


@dataclass(frozen=True)
class QecPoint:
    code: str
    variant: str
    dims: str
    s: float
    trials: int
    failures: int
    p_L: float
    ci_lo: float
    ci_hi: float

    def as_dict(self):
        return dict(self.__dict__)


def _chunk(args):
    spec, channel, s, n, seed, erasure_identity = args
    code = spec.build()
    rng = np.random.default_rng(seed)
    fails = 0
    for _ in range(n):
        draw = sample_noise(code, channel, s, rng, erasure_identity)
        e = draw.symplectic()
        res = e ^ decode_error(code, e, draw.erased)
        fa, fb = logical_failure(code, res)
        fails += fa or fb
    return fails


def count_failures(spec, channel, s, trials, seed, workers=1, erasure_identity=False, keys=()):
    """Either-family logical failures over trials; chunk seeds make counts worker-independent."""
    sizes = [CHUNK] * (trials // CHUNK) + ([trials % CHUNK] if trials % CHUNK else [])
    jobs = [(spec, channel, s, n, child_seed(seed, *keys, c), erasure_identity)
            for c, n in enumerate(sizes)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, os.cpu_count() or 1)) as ex:
            return int(sum(ex.map(_chunk, jobs)))
    return int(sum(_chunk(j) for j in jobs))


def run_threshold_sweep(specs, scales, trials, channel, master_seed=0, workers=1,
                        erasure_identity=False):
    if trials < 100:
        raise ValueError("trials must be >= 100")
    out = []
    for ci, spec in enumerate(specs):
        for si, s in enumerate(scales):
            k = count_failures(spec, channel, s, trials, master_seed, workers,
                               erasure_identity, keys=(ci, si))
            lo, hi = wilson_interval(k, trials)
            out.append(QecPoint(f"{spec.family}-{spec.variant}", spec.variant, spec.label,
                                float(s), trials, k, k / trials, float(lo), float(hi)))
    return out

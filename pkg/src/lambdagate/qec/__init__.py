"""Code-capacity QEC engine."""

from .codes import build_rect_planar, build_toric, check_code, column_weights
from .decoder import brute_force_matching_weight, decode_error, decode_mwpm
from .montecarlo import CodeSpec, QecPoint, logical_failure, run_threshold_sweep, wilson_interval
from .noise import NoiseDraw, sample_noise
from .overhead import fit_distance_scaling, overhead_model, p_eff

__all__ = [
    "build_rect_planar", "build_toric", "check_code", "column_weights",
    "brute_force_matching_weight", "decode_error", "decode_mwpm",
    "CodeSpec", "QecPoint", "logical_failure", "run_threshold_sweep", "wilson_interval",
    "NoiseDraw", "sample_noise", "fit_distance_scaling", "overhead_model", "p_eff",
]

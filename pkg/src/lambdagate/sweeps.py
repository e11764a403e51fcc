"""Numbered parameter sweeps, result records and report emission."""

import csv
import dataclasses
import io
import json
import os
import time
from dataclasses import dataclass, field

import numpy as np

from . import control
from .noise import NoiseModel, SurfaceBathConfig, lindblad_collapse_set
from .propagation import PropagationGrid, child_seed, monte_carlo_channel
from .protocols import GateProtocol, rabi_baseline, target_unitary
from .tomography import ic_states, process_metrics

DESK = {"n_traj": 100, "n_steps": 1000}
PAPER = {"n_traj": 500, "n_steps": 2000}
ORANGE_SLICE_AREA = 34.0            # Omega_m * T_gate of the Orange-Slice baseline
CLAMPED_OMEGA_MAX = 2.22 / 2.21      # MHz, same voltage on the stiffer clamped membrane
HBAR_SCENARIOS = {"conservative": 0.00283, "moderate": 0.0283, "optimistic": 0.1415}

DEFAULT_GRIDS = {
    1: {"omega_m": [0.5, 1.0, 1.5, 2.22]},
    2: {"hop_rate_hz": [1e6, 1e7, 1e8, 1e9, 1e10]},
    3: {"detuning_khz": [0.0, 100.0, 250.0, 500.0]},
    4: {"boundary": ["simply-supported", "clamped"], "drive_fraction": [0.25, 0.5, 1.0]},
    5: {"lambda": [0.0, 0.5, 1.0, 1.5, 2.0]},
    6: {"alpha_cd": [0.0, 0.5, 0.9, 0.95, 0.98, 1.0, 1.02, 1.05, 1.1, 1.5, 2.0]},
    7: {"T_gate": [1.0, 1.333, 1.833, 2.0]},
    8: {"stark_alpha": [0.0, 1.0, 5.0, 10.0], "platform": ["NV"]},
    9: {"scenario": list(HBAR_SCENARIOS)},
    10: {"arm_ratio": [0.94, 1.0, 1.06], "phase_deg": [-6.0, 0.0, 6.0]},
}
NOISELESS_DEFAULT = {6}
SWEEP_NAMES = {
    1: "fidelity vs Rabi rate", 2: "holonomic vs dynamical over hopping rate",
    3: "common-mode detuning", 4: "boundary condition", 5: "DRAG lambda scan",
    6: "SATD strength scan", 7: "gate-time scan", 8: "Stark injection",
    9: "HBAR Rabi scenarios", 10: "quadrature imbalance",
}
PROCESS_COLUMNS = ("sweep", "point", "seed", "params", "F_leg", "F_e", "F_avg", "leakage",
                   "p_surv", "F_eff", "F_state", "ci_lo", "ci_hi", "ci_eff_lo", "ci_eff_hi",
                   "n_traj")
QEC_COLUMNS = ("code", "variant", "dims", "s", "trials", "failures", "p_L", "ci_lo", "ci_hi")


class ConfigError(ValueError):
    """Invalid sweep configuration."""


@dataclass
class SweepConfig:
    sweep: int = 7
    grid: dict = None
    n_traj: int = DESK["n_traj"]
    n_steps: int = DESK["n_steps"]
    seed: int = 0
    workers: int = 1
    out: str = None
    format: str = "json"
    noise: bool = None
    n_boot: int = 2000
    T1: float = 1000.0
    T1rho: float = 500.0
    bath: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.sweep not in DEFAULT_GRIDS:
            raise ConfigError(f"unknown sweep id {self.sweep!r}")
        if self.grid is None:
            self.grid = {k: list(v) for k, v in DEFAULT_GRIDS[self.sweep].items()}
        if not isinstance(self.grid, dict) or not self.grid:
            raise ConfigError("grid must be a non-empty mapping")
        allowed = set(DEFAULT_GRIDS[self.sweep])
        for k, v in self.grid.items():
            if k not in allowed:
                raise ConfigError(f"sweep {self.sweep} has no parameter {k!r}")
            if not isinstance(v, (list, tuple)) or len(v) == 0:
                raise ConfigError(f"grid entry {k!r} must be a non-empty list")
        for k, v in DEFAULT_GRIDS[self.sweep].items():
            self.grid.setdefault(k, list(v))
        if self.n_traj < 1:
            raise ConfigError("n_traj must be >= 1")
        if self.n_steps < 100:
            raise ConfigError("n_steps must be >= 100")
        if self.format not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        if self.noise is None:
            self.noise = self.sweep not in NOISELESS_DEFAULT
        try:
            SurfaceBathConfig(**self.bath)
        except TypeError as exc:
            raise ConfigError(f"bad bath settings: {exc}") from None

    def to_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in dataclasses.fields(cls)}
        extra = set(d) - names
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        return cls(**d)


@dataclass(frozen=True)
class ResultRecord:
    sweep: int
    point: int
    params: dict
    metrics: dict
    seed: int
    wall_time: float = 0.0

    def as_dict(self, timing=False):
        d = {"sweep": self.sweep, "point": self.point, "params": self.params,
             "metrics": self.metrics, "seed": self.seed}
        if timing:
            d["wall_time"] = self.wall_time
        return d


def _grid_points(grid):
    keys = list(grid)
    idx = np.indices([len(grid[k]) for k in keys]).reshape(len(keys), -1).T
    return [{k: grid[k][i] for k, i in zip(keys, row)} for row in idx]


def _noise(cfg, tau_c_ns=None):
    if not cfg.noise:
        return NoiseModel(None, lindblad_collapse_set())
    collapse = lindblad_collapse_set(cfg.T1, cfg.T1rho, "NV")
    bath = dict(cfg.bath)
    if tau_c_ns is not None:
        bath["tau_c_ns"] = tau_c_ns
    return NoiseModel(SurfaceBathConfig(**bath), collapse)


def point_jobs(cfg, p):
    """(label, protocol, noise) tuples for one grid point."""
    s = cfg.sweep
    base = GateProtocol(n_samples=max(500, cfg.n_steps))
    rep = dataclasses.replace
    if s == 1:
        return [("holonomic", rep(base, omega_m=float(p["omega_m"])), _noise(cfg))]
    if s == 2:
        tau_ns = 1e9 / float(p["hop_rate_hz"])
        nm = _noise(cfg, tau_ns)
        rabi = rep(rabi_baseline(base.omega_m), n_samples=base.n_samples)
        return [("holonomic", base, nm), ("dynamical", rabi, nm)]
    if s == 3:
        return [("holonomic", rep(base, detuning=float(p["detuning_khz"]) * 1e-3), _noise(cfg))]
    if s == 4:
        om_max = 2.22 if p["boundary"] == "simply-supported" else CLAMPED_OMEGA_MAX
        if p["boundary"] not in ("simply-supported", "clamped"):
            raise ConfigError(f"unknown boundary {p['boundary']!r}")
        return [("holonomic", rep(base, omega_m=om_max * float(p["drive_fraction"])), _noise(cfg))]
    if s == 5:
        return [("orange_slice", rep(base, kind=control.ORANGE_SLICE, alpha_cd=float(p["lambda"]),
                                     T_gate=ORANGE_SLICE_AREA / base.omega_m), _noise(cfg))]
    if s == 6:
        return [("holonomic", rep(base, alpha_cd=float(p["alpha_cd"])), _noise(cfg))]
    if s == 7:
        return [("holonomic", rep(base, T_gate=float(p["T_gate"])), _noise(cfg))]
    if s == 8:
        return [("holonomic", rep(base, stark_alpha=float(p["stark_alpha"]), compensated=False,
                                  platform=p["platform"]), _noise(cfg))]
    if s == 9:
        if p["scenario"] not in HBAR_SCENARIOS:
            raise ConfigError(f"unknown HBAR scenario {p['scenario']!r}")
        return [("holonomic", rep(base, omega_m=HBAR_SCENARIOS[p["scenario"]], T_gate=2.0), _noise(cfg))]
    if s == 10:
        return [("holonomic", rep(base, arm_ratio=float(p["arm_ratio"]),
                                  arm_phase=float(np.deg2rad(p["phase_deg"]))), _noise(cfg))]
    raise ConfigError(f"unknown sweep id {s!r}")


def _clean(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def run_sweep(cfg, progress=None):
    """Run every grid point; each point carries its own child seed."""
    grid = PropagationGrid(cfg.n_steps)
    U = target_unitary()
    records = []
    k = 0
    for p in _grid_points(cfg.grid):
        for label, proto, nm in point_jobs(cfg, p):
            seed = child_seed(cfg.seed, cfg.sweep, k)
            t0 = time.perf_counter()
            run = monte_carlo_channel(proto, nm, ic_states(), cfg.n_traj, seed, grid,
                                      workers=cfg.workers)
            m = process_metrics(run, U, n_boot=cfg.n_boot, seed=seed)
            params = {kk: _clean(v) for kk, v in p.items()}
            params["protocol"] = label
            rec = ResultRecord(cfg.sweep, k, params, {kk: _clean(v) for kk, v in m.as_dict().items()},
                               seed, time.perf_counter() - t0)
            records.append(rec)
            if progress:
                progress(rec)
            k += 1
    return records


def _params_str(params):
    return ";".join(f"{k}={params[k]}" for k in sorted(params))


def _csv_text(rows, columns):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({c: (repr(float(r[c])) if isinstance(r.get(c), float) else r.get(c)) for c in columns})
    return buf.getvalue()


def report_text(records, fmt="json", config=None, timing=False):
    """Serialized report; QecPoint and ResultRecord lists are both accepted."""
    if not records:
        raise ValueError("no records to emit")
    is_qec = not isinstance(records[0], ResultRecord)
    if fmt == "json":
        if is_qec:
            recs = [r.as_dict() for r in records]
        else:
            recs = [r.as_dict(timing) for r in records]
        return json.dumps({"config": config or {}, "records": recs}, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        if is_qec:
            return _csv_text([r.as_dict() for r in records], QEC_COLUMNS)
        rows = []
        for r in records:
            row = {"sweep": r.sweep, "point": r.point, "seed": r.seed, "params": _params_str(r.params)}
            row.update(r.metrics)
            rows.append(row)
        return _csv_text(rows, PROCESS_COLUMNS)
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(records, path, fmt="json", config=None, timing=False):
    text = report_text(records, fmt, config, timing)
    d = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(d) or not os.access(d, os.W_OK):
        raise OSError(f"cannot write to {path}")
    with open(path, "w", newline="") as f:
        f.write(text)
    return path


def load_config(path=None, overrides=None, env=os.environ):
    """Read a JSON config, then apply environment and explicit overrides."""
    data = {}
    if path:
        try:
            with open(path) as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    if "LAMBDAGATE_SEED" in env:
        try:
            data["seed"] = int(env["LAMBDAGATE_SEED"])
        except ValueError:
            raise ConfigError("LAMBDAGATE_SEED must be an integer") from None
    if "LAMBDAGATE_OUT_DIR" in env and data.get("out"):
        data["out"] = os.path.join(env["LAMBDAGATE_OUT_DIR"], os.path.basename(data["out"]))
    for k, v in (overrides or {}).items():
        if v is not None:
            data[k] = v
    return data

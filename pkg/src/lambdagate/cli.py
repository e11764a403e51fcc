"""Command-line entry point: sweep, qec, sector, device and overhead reports.

Exit codes: 0 on success, 2 on configuration errors, 3 on numerical failure.
"""

import argparse
import csv
import io
import json
import logging
import sys

import numpy as np

from . import device, sectors
from .propagation import NumericalError
from .qec import CodeSpec, overhead_model, run_threshold_sweep
from .qec.overhead import baseline_distance
from .sweeps import PAPER, ConfigError, SweepConfig, load_config, report_text, run_sweep
from .tomography import NOMINAL_CHANNEL, BiasedErasureChannel

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3
log = logging.getLogger("lambdagate")

QEC_DEFAULTS = {"codes": ["toric-CSS:3", "toric-CSS:11", "toric-XZZX:3", "toric-XZZX:11", "rect:3x7"],
                "scales": [1, 10, 50, 100], "trials": 1000, "erasure_identity": False,
                "channel": {}}
QEC_PAPER_TRIALS = 5000


def _common(p):
    p.add_argument("--config", help="JSON configuration file")
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--workers", type=int, default=None, help="worker processes")
    p.add_argument("--out", help="output file (stdout when omitted)")
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--paper-scale", action="store_true", help="full trajectory/trial counts")


def build_parser():
    parser = argparse.ArgumentParser(prog="lambdagate", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("sweep", help="run a numbered sweep (1-10)")
    _common(p)
    p.add_argument("--id", type=int, dest="sweep", help="sweep id")
    p.add_argument("--n-traj", type=int, dest="n_traj")
    p = sub.add_parser("qec", help="code-capacity logical failure Monte Carlo")
    _common(p)
    p.add_argument("--codes", nargs="+", help="e.g. toric-XZZX:11 rect:3x7")
    p.add_argument("--scales", nargs="+", type=float)
    p.add_argument("--trials", type=int)
    for name in ("sector", "device"):
        _common(sub.add_parser(name, help=f"{name} report"))
    p = sub.add_parser("overhead", help="distance and qubit-count extrapolation")
    _common(p)
    p.add_argument("--p-xy-floor", nargs="+", type=float, dest="p_xy",
                   help="scan transverse Pauli floors")
    return parser


def parse_code(text):
    try:
        fam, dims = text.split(":")
        ds = tuple(int(x) for x in dims.split("x"))
        if fam == "rect":
            if len(ds) != 2:
                raise ValueError
            return CodeSpec("rect", "XZZX", ds)
        family, variant = fam.split("-")
        if family != "toric" or variant not in ("CSS", "XZZX") or len(ds) != 1:
            raise ValueError
        return CodeSpec("toric", variant, ds)
    except ValueError:
        raise ConfigError(f"bad code spec {text!r} (use toric-CSS:11, toric-XZZX:5, rect:3x7)") from None


def _flat_text(doc, fmt):
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True, default=_jsonable) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k in sorted(doc):
        w.writerow([k, json.dumps(doc[k], default=_jsonable) if isinstance(doc[k], (dict, list)) else doc[k]])
    return buf.getvalue()


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(type(x))


def _write(text, out):
    if out:
        try:
            with open(out, "w", newline="") as f:
                f.write(text)
        except OSError as exc:
            raise ConfigError(f"cannot write {out}: {exc}") from None
    else:
        sys.stdout.write(text)


def cmd_sweep(args):
    data = load_config(args.config, {"seed": args.seed, "workers": args.workers, "out": args.out,
                                     "format": args.format, "sweep": args.sweep, "n_traj": args.n_traj})
    if args.paper_scale:
        data.update(PAPER)
    try:
        cfg = SweepConfig.from_dict(data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    records = run_sweep(cfg, progress=lambda r: log.info("point %d %s F_avg=%.5f", r.point, r.params,
                                                         r.metrics["F_avg"]))
    _write(report_text(records, cfg.format, cfg.to_dict()), cfg.out)


def cmd_qec(args):
    data = dict(QEC_DEFAULTS)
    data.update(load_config(args.config, {"seed": args.seed, "workers": args.workers, "out": args.out,
                                          "format": args.format, "codes": args.codes,
                                          "scales": args.scales, "trials": args.trials}))
    if args.paper_scale:
        data["trials"] = QEC_PAPER_TRIALS
    unknown = set(data) - set(QEC_DEFAULTS) - {"seed", "workers", "out", "format"}
    if unknown:
        raise ConfigError(f"unknown qec config keys: {sorted(unknown)}")
    specs = [parse_code(c) for c in data["codes"]]
    try:
        channel = BiasedErasureChannel(**{**NOMINAL_CHANNEL.__dict__, **data["channel"]})
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    trials = int(data["trials"])
    if trials < 100:
        raise ConfigError("trials must be >= 100")
    try:
        pts = run_threshold_sweep(specs, [float(s) for s in data["scales"]], trials, channel,
                                  int(data.get("seed") or 0), int(data.get("workers") or 1),
                                  bool(data["erasure_identity"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    cfg = {k: data[k] for k in sorted(data)}
    _write(report_text(pts, data.get("format") or "json", cfg), data.get("out"))


def sector_report():
    out = {}
    for s in ("A1", "A2", "Ex", "Ey"):
        r = sectors.sector_injection(s)
        out[s] = {k: v for k, v in r.__dict__.items() if k != "sector"}
    out["parity_filter_deviation"] = sectors.parity_filter_check()
    a = np.linspace(0, np.pi / 2, 7)
    b = np.linspace(0, 2 * np.pi, 5)
    _, _, d0, dB = sectors.mixed_sector_scan(a, b)
    out["mixed_scan_deviation"] = max(d0, dB)
    out["spurion"] = sectors.spurion_robustness(0.1, 0.1, np.deg2rad(10))
    return out


def cmd_simple(args, builder):
    data = load_config(args.config, {"out": args.out, "format": args.format})
    doc = builder(data)
    _write(_flat_text(doc, data.get("format") or "json"), data.get("out"))


def _overhead_doc(data, p_xy=None):
    ch = dict(NOMINAL_CHANNEL.__dict__)
    ch.update(data.get("channel", {}))
    try:
        channel = BiasedErasureChannel(**ch)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    doc = overhead_model(channel)
    doc["baseline_depolarizing_d"] = baseline_distance(channel)
    if p_xy:
        doc["p_xy_scan"] = []
        for v in p_xy:
            c = BiasedErasureChannel(**{**ch, "p_XY": v})
            m = overhead_model(c)
            doc["p_xy_scan"].append({"p_XY": v, "XZZX_d": m["XZZX"]["d"], "CSS_d": m["CSS"]["d"]})
    return doc


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "sweep":
            cmd_sweep(args)
        elif args.command == "qec":
            cmd_qec(args)
        elif args.command == "sector":
            cmd_simple(args, lambda d: sector_report())
        elif args.command == "device":
            cmd_simple(args, lambda d: device.device_report())
        elif args.command == "overhead":
            cmd_simple(args, lambda d: _overhead_doc(d, args.p_xy))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Code-capacity logical failure under the biased-erasure channel and the
resulting distance and qubit-count savings.

Run: python3 demos/qec_overhead.py [trials]
"""

import sys

from lambdagate.qec import CodeSpec, overhead_model, p_eff, run_threshold_sweep
from lambdagate.tomography import NOMINAL_CHANNEL


def main(trials=1000):
    ch = NOMINAL_CHANNEL
    print(f"effective error rate p_eff = {100 * p_eff(ch):.4f}%")

    # At s=10 larger codes suppress failures; at s=50 both families sit above threshold.
    specs = [CodeSpec("toric", "CSS", (3,)), CodeSpec("toric", "CSS", (7,)),
             CodeSpec("toric", "XZZX", (3,)), CodeSpec("toric", "XZZX", (7,))]
    print("\ncode         s     p_L      95% CI")
    for p in run_threshold_sweep(specs, [10.0, 50.0], trials, ch, master_seed=3):
        print(f"{p.code:10s} {p.dims:>3s} {p.s:5.0f} {p.p_L:8.4f}  [{p.ci_lo:.4f}, {p.ci_hi:.4f}]")

    m = overhead_model(ch)
    print(f"\nbaseline: d={m['baseline_d']} qubits={m['baseline_qubits']}")
    for fam in ("XZZX", "CSS"):
        r = m[fam]
        print(f"{fam:5s}: d={r['d']} qubits={r['qubits']} saving={100 * r['saving']:.0f}%")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 1000)

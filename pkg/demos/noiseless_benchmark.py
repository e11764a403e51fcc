"""Noiseless gate benchmarks and the counter-diabatic strength scan.

Run: python3 demos/noiseless_benchmark.py
"""

import numpy as np

from lambdagate import control
from lambdagate.propagation import propagate_unitary
from lambdagate.protocols import GateProtocol, target_unitary
from lambdagate.tomography import state_average_fidelity, unitary_outputs

U_T = target_unitary()


def fidelity(proto):
    U = propagate_unitary(proto.build())
    return 100 * state_average_fidelity(unitary_outputs(U), U_T)


def main():
    # The composite loop only reaches the target when the counter-diabatic
    # term is on; without it the adiabatic error dominates.
    print("protocol                    F (%)")
    rows = [("composite, CD on", GateProtocol()),
            ("composite, CD off", GateProtocol(alpha_cd=0.0)),
            ("orange slice, DRAG", GateProtocol(kind=control.ORANGE_SLICE, T_gate=34 / 2.22)),
            ("orange slice, bare", GateProtocol(kind=control.ORANGE_SLICE, T_gate=34 / 2.22,
                                                alpha_cd=0.0))]
    for name, p in rows:
        print(f"{name:26s} {fidelity(p):8.3f}")

    # Sharp optimum at full strength, symmetric falloff on both sides.
    print("\nalpha_cd    F (%)")
    for a in np.round(np.linspace(0.9, 1.1, 11), 3):
        print(f"{a:7.3f} {fidelity(GateProtocol(alpha_cd=float(a))):9.3f}")


if __name__ == "__main__":
    main()

"""Picklable gate-protocol descriptions that build their own generators.

Worker processes receive a GateProtocol (plain data) and call build(), so no
closures cross process boundaries.
"""

from dataclasses import asdict, dataclass

import numpy as np

from . import control, hamiltonians


@dataclass(frozen=True)
class GateProtocol:
    kind: str = control.COMPOSITE      # composite | orange_slice | phase_cycled | rabi
    T_gate: float = 1.833              # us
    omega_m: float = 2.22              # MHz
    alpha_cd: float = 1.0
    platform: str = "NV"
    n_samples: int = 2000
    n_lunes: int = None
    dphi: float = None
    step_width: float = None
    stark_alpha: float = 0.0
    compensated: bool = True
    detuning: float = 0.0              # MHz, on |0>
    arm_ratio: float = 1.0
    arm_phase: float = 0.0
    ellipticity: float = 0.0

    def trajectory(self):
        if self.kind == "rabi":
            raise ValueError("the Rabi baseline has no geometric trajectory")
        return control.build_trajectory(self.kind, self.T_gate, dphi=self.dphi,
                                        step_width=self.step_width, n_samples=self.n_samples,
                                        n_lunes=self.n_lunes)

    def build(self):
        if self.kind == "rabi":
            return hamiltonians.rabi_assembly(self.omega_m, self.T_gate, self.n_samples)
        params = hamiltonians.PLATFORMS[self.platform]
        return hamiltonians.gate_assembly(
            self.trajectory(), self.omega_m, self.alpha_cd, params,
            stark_alpha=self.stark_alpha, compensated=self.compensated,
            detuning=self.detuning, ellipticity=self.ellipticity,
            arm_ratio=self.arm_ratio, arm_phase=self.arm_phase)

    def to_dict(self):
        return asdict(self)


def rabi_baseline(omega_m=2.22, n_samples=2000):
    """Resonant 2 pi pulse on the |-1> leg at half the drive.

    A full 2 pi cycle through |0> returns |-1> with a minus sign, which is the
    dynamical Z(pi) on the doublet.
    """
    rabi = omega_m / 2
    return GateProtocol(kind="rabi", T_gate=1.0 / rabi, omega_m=rabi, alpha_cd=0.0,
                        n_samples=n_samples)


def target_unitary(kind="Z"):
    """Ideal Z(pi) on (|0_L>, |1_L>) up to global phase."""
    if kind != "Z":
        raise ValueError("only the Z(pi) target is defined")
    return np.diag([1.0, -1.0]).astype(complex)

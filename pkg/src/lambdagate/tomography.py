"""Process tomography, gate fidelities and biased-erasure channel extraction."""

from dataclasses import dataclass

import numpy as np

from .quantum_core import IDX_0, embed_qubit_operator, pauli, qubit_block

P_XY_FLOOR = 1e-7


def ic_states_qubit():
    """+-x, +-y, +-z eigenstates on (|0_L>, |1_L>)."""
    r = 1 / np.sqrt(2)
    vecs = [(r, r), (r, -r), (r, 1j * r), (r, -1j * r), (1, 0), (0, 1)]
    return [np.outer(v, np.conj(v)).astype(complex) for v in map(np.array, vecs)]


def ic_states():
    """The six IC inputs embedded in the qutrit with no |0> population."""
    return [embed_qubit_operator(r) for r in ic_states_qubit()]


IC_LABELS = ("+x", "-x", "+y", "-y", "+z", "-z")
_A = np.array([r.reshape(-1) for r in ic_states_qubit()])      # 6 x 4
_A_PINV = np.linalg.pinv(_A)
if np.linalg.cond(_A.T @ _A.conj()) > 1e6:
    raise RuntimeError("IC input set is ill-conditioned")


def superop_from_outputs(outputs2):
    """4x4 superoperator S with vec(out) = S vec(in), by least squares over the six inputs."""
    B = np.array([np.asarray(o).reshape(-1) for o in outputs2])
    return (_A_PINV @ B).T


def choi_from_superop(S, d=2):
    J = np.zeros((d * d, d * d), complex)
    for i in range(d):
        for j in range(d):
            E = np.zeros((d, d), complex)
            E[i, j] = 1
            J += np.kron(E, (S @ E.reshape(-1)).reshape(d, d))
    return J


def choi_reconstruct(outputs3, conditional=True):
    """Choi matrix (trace d for a trace-preserving conditional channel) from six qutrit outputs."""
    if len(outputs3) != 6:
        raise ValueError("need the six IC outputs")
    outs = []
    for o in outputs3:
        b = qubit_block(o)
        if conditional:
            p = np.real(np.trace(b))
            if p <= 1e-12:
                raise ValueError("output fully leaked")
            b = b / p
        outs.append(b)
    return choi_from_superop(superop_from_outputs(outs))


def choi_from_kraus(kraus):
    d = kraus[0].shape[1]
    phi = np.zeros(d * d, complex)
    for i in range(d):
        phi[i * d + i] = 1.0
    J = np.zeros((d * d, d * d), complex)
    for K in kraus:
        v = np.kron(np.eye(d), K) @ phi
        J += np.outer(v, v.conj())
    return J


def gate_fidelities(choi, U_target, normalize=True):
    """(F_e, F_avg) via the Horodecki relation F_avg = (d F_e + 1)/(d + 1).

    normalize divides by Tr(choi)/d, giving the conditional fidelity; otherwise
    leaked weight counts as error.
    """
    d = U_target.shape[0]
    phi = np.zeros(d * d, complex)
    for i in range(d):
        phi[i * d + i] = 1 / np.sqrt(d)
    v = np.kron(np.eye(d), U_target) @ phi
    f = np.real(v.conj() @ choi @ v) / d
    if normalize:
        f = f * d / np.real(np.trace(choi))
    return f, (d * f + 1) / (d + 1)


def effective_fidelity(p_surv, f_cond):
    for x in (p_surv, f_cond):
        if not -1e-12 <= x <= 1 + 1e-12:
            raise ValueError("inputs must lie in [0, 1]")
    return p_surv * f_cond


def state_average_fidelity(outputs3, U_target, inputs2=None):
    """Mean of Tr(U rho U^dag . out_Q) over the IC inputs (leakage counts as error)."""
    inputs2 = ic_states_qubit() if inputs2 is None else inputs2
    vals = [np.real(np.trace(U_target @ r @ U_target.conj().T @ qubit_block(o)))
            for r, o in zip(inputs2, outputs3)]
    return float(np.mean(vals))


def unitary_outputs(U3, inputs3=None):
    inputs3 = ic_states() if inputs3 is None else inputs3
    return [U3 @ r @ U3.conj().T for r in inputs3]


@dataclass(frozen=True)
class ProcessMetrics:
    F_leg: float
    F_e: float
    F_avg: float
    leakage: float
    p_surv: float
    F_eff: float
    F_state: float
    ci_lo: float
    ci_hi: float
    ci_eff_lo: float
    ci_eff_hi: float
    n_traj: int

    def as_dict(self):
        return dict(self.__dict__)


def _point_metrics(mean_out, U_target):
    J = choi_reconstruct(mean_out, conditional=True)
    fe, fa = gate_fidelities(J, U_target)
    leak = float(np.mean(np.real(mean_out[:, IDX_0, IDX_0])))
    return fe, fa, leak


def process_metrics(run, U_target, n_boot=2000, seed=0, ci=0.95):
    """Metrics of a ChannelRun with a bootstrap over whole trajectories."""
    mean_out = run.mean_outputs
    fe, fa, leak = _point_metrics(mean_out, U_target)
    p_surv = 1 - leak
    f_leg = float(np.real(qubit_block(mean_out[4])[0, 0]))
    f_state = state_average_fidelity(mean_out, U_target)
    lo = hi = fa
    elo = ehi = p_surv * fa
    n = run.n_traj
    if n > 1 and n_boot > 0:
        rng = np.random.default_rng(seed)
        counts = rng.multinomial(n, np.full(n, 1.0 / n), size=n_boot)
        flat = run.outputs.reshape(n, -1)
        means = (counts @ flat / n).reshape((n_boot,) + mean_out.shape)
        fas = np.empty(n_boot)
        effs = np.empty(n_boot)
        for b in range(n_boot):
            _, fa_b, lk_b = _point_metrics(means[b], U_target)
            fas[b] = fa_b
            effs[b] = (1 - lk_b) * fa_b
        q = [(1 - ci) / 2 * 100, (1 + ci) / 2 * 100]
        lo, hi = np.percentile(fas, q)
        elo, ehi = np.percentile(effs, q)
        lo, hi = min(lo, fa), max(hi, fa)
        elo, ehi = min(elo, p_surv * fa), max(ehi, p_surv * fa)
    return ProcessMetrics(f_leg, fe, fa, leak, p_surv, effective_fidelity(p_surv, fa), f_state,
                          float(lo), float(hi), float(elo), float(ehi), n)


@dataclass(frozen=True)
class BiasedErasureChannel:
    p_era: float
    p_Z: float
    p_dep: float
    p_XY: float
    eta_det: float
    p_X: float = 0.0
    p_Y: float = 0.0
    leakage: float = 0.0
    p_XY_floor: bool = False

    def __post_init__(self):
        for k in ("p_era", "p_Z", "p_dep", "p_XY"):
            v = getattr(self, k)
            if not 0 <= v <= 1:
                raise ValueError(f"{k}={v} outside [0, 1]")

    @property
    def p_undetected(self):
        return self.p_Z + self.p_dep + self.p_XY


NOMINAL_CHANNEL = BiasedErasureChannel(p_era=0.0047, p_Z=0.00168, p_dep=0.00012, p_XY=0.0,
                                       eta_det=0.975, leakage=0.00484)


def pauli_twirl_probabilities(choi, U_target):
    """(p_I, p_X, p_Y, p_Z) of the twirl of U_target^dag o channel."""
    d = 2
    phi = np.zeros(d * d, complex)
    for i in range(d):
        phi[i * d + i] = 1 / np.sqrt(d)
    out = []
    for P in pauli():
        v = np.kron(np.eye(d), U_target @ P) @ phi
        out.append(np.real(v.conj() @ choi @ v) / np.real(np.trace(choi)))
    p = np.clip(np.array(out), 0.0, None)
    return p / p.sum()


def extract_biased_erasure(run_or_outputs, eta_det, U_target, leakage=None):
    """Biased-erasure rates from a channel run (or six mean qutrit outputs)."""
    if not 0 <= eta_det <= 1:
        raise ValueError("eta_det must lie in [0, 1]")
    outs = run_or_outputs.mean_outputs if hasattr(run_or_outputs, "mean_outputs") else np.asarray(run_or_outputs)
    L = float(np.mean(np.real(outs[:, IDX_0, IDX_0]))) if leakage is None else float(leakage)
    J = choi_reconstruct(outs, conditional=True)
    _, px, py, pz = pauli_twirl_probabilities(J, U_target)
    pxy = float(px + py)
    return BiasedErasureChannel(p_era=eta_det * L, p_Z=float(pz), p_dep=(1 - eta_det) * L,
                                p_XY=pxy, eta_det=eta_det, p_X=float(px), p_Y=float(py),
                                leakage=L, p_XY_floor=pxy < P_XY_FLOOR)

"""Piecewise-constant propagation, product-formula studies and reachability probing."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .rep import RepError, RepSpec, env_to_matrix

__all__ = [
    "PreconditionError",
    "ControlSchedule",
    "FlowExperimentResult",
    "expm_skew",
    "system_matrices",
    "propagate",
    "probe_states",
    "trotter_sum_error",
    "trotter_commutator_error",
    "attainability_experiment",
    "ReachResult",
    "reach_probe",
    "fitted_loglog_slope",
]

SKEW_TOL = 1e-10


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ControlSchedule:
    """Segments ``(duration, u)`` applied in time order."""

    segments: tuple = ()

    def __post_init__(self):
        segs = []
        for dur, u in self.segments:
            dur = float(dur)
            if not dur > 0:
                raise ValueError("segment durations must be positive")
            segs.append((dur, tuple(float(x) for x in u)))
        object.__setattr__(self, "segments", tuple(segs))

    @property
    def total_duration(self) -> float:
        return float(sum(d for d, _ in self.segments))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        m = len(self.segments[0][1]) if self.segments else 0
        w.writerow(["duration"] + [f"u{k + 1}" for k in range(m)])
        for dur, u in self.segments:
            w.writerow([repr(dur)] + [repr(x) for x in u])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ControlSchedule":
        rows = [r for r in csv.reader(io.StringIO(text)) if r and any(x.strip() for x in r)]
        if rows and not _is_number(rows[0][0]):
            rows = rows[1:]
        return cls(tuple((float(r[0]), [float(x) for x in r[1:]]) for r in rows))


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


@dataclass
class FlowExperimentResult:
    grid: list
    fitted_rate: float
    notes: dict = field(default_factory=dict)

    def to_csv(self, header=("n", "error")) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in self.grid:
            w.writerow([_fmt(x) for x in row])
        return buf.getvalue()


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12e}"


def _check_skew(M: np.ndarray, tol: float = SKEW_TOL) -> None:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise PreconditionError("matrix must be square")
    scale = max(np.linalg.norm(M), 1.0)
    if np.linalg.norm(M + M.conj().T) > tol * scale:
        raise PreconditionError("matrix is not skew-Hermitian")


def expm_skew(M) -> np.ndarray:
    """exp(M) for skew-Hermitian M through the eigendecomposition of iM."""
    M = np.asarray(M, dtype=complex)
    _check_skew(M)
    H = 1j * M
    H = 0.5 * (H + H.conj().T)
    w, V = np.linalg.eigh(H)
    return (V * np.exp(-1j * w)) @ V.conj().T


def system_matrices(system, rep: RepSpec):
    """Skew matrices of ``H0`` and the controls.

    Truncated ladder products are only skew on the interior, so the
    skew-Hermitian part is taken; interior columns are unchanged.
    """
    if system.algebra.key != rep.algebra.key:
        raise RepError("system and representation use different algebras")
    out = []
    for H in system.hamiltonians:
        M = env_to_matrix(rep, H)
        out.append(0.5 * (M - M.conj().T))
    return out[0], out[1:]


def _segment_unitary(H0m, Hms, dur, u):
    G = H0m.copy()
    for c, Hm in zip(u, Hms):
        G = G + c * Hm
    return expm_skew(dur * G)


def propagate(system, rep: RepSpec, sched: ControlSchedule, psi0, matrices=None) -> np.ndarray:
    """psi(T) = prod_k exp(d_k (H0 + sum_j u_kj H_j)) psi0, earliest segment first."""
    if not sched.segments:
        raise ValueError("schedule is empty")
    H0m, Hms = matrices if matrices is not None else system_matrices(system, rep)
    psi = np.asarray(psi0, dtype=complex)
    if psi.shape != (rep.K,):
        raise RepError("state dimension does not match the representation")
    for dur, u in sched.segments:
        if len(u) != len(Hms):
            raise ValueError(f"segment has {len(u)} controls, system has {len(Hms)}")
        psi = _segment_unitary(H0m, Hms, dur, u) @ psi
    return psi


def probe_states(dim: int, seed: int = 7) -> list:
    """First basis state plus two fixed-seed random unit vectors."""
    rng = np.random.default_rng(seed)
    out = [np.eye(dim, dtype=complex)[0]]
    for _ in range(2):
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        out.append(v / np.linalg.norm(v))
    return out


def _probe_max(exact: np.ndarray, approx: np.ndarray, probes) -> float:
    return float(max(np.linalg.norm(exact @ p - approx @ p) for p in probes))


def trotter_sum_error(X, Y, s: float, n: int, probes=None) -> float:
    """max over probes of |exp(s(X+Y))phi - (exp(sX/n) exp(sY/n))^n phi|."""
    X = np.asarray(X, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    _check_skew(X)
    _check_skew(Y)
    if n < 1:
        raise PreconditionError("n must be at least 1")
    probes = probe_states(X.shape[0]) if probes is None else probes
    exact = expm_skew(s * (X + Y))
    step = expm_skew(s / n * X) @ expm_skew(s / n * Y)
    return _probe_max(exact, np.linalg.matrix_power(step, n), probes)


def trotter_commutator_error(X, Y, s: float, n: int, probes=None) -> float:
    """Group-commutator product error against exp(s[X,Y]), step sqrt(s/n)."""
    X = np.asarray(X, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    _check_skew(X)
    _check_skew(Y)
    if n < 1:
        raise PreconditionError("n must be at least 1")
    if s < 0:
        raise PreconditionError("s must be non-negative")
    probes = probe_states(X.shape[0]) if probes is None else probes
    comm = X @ Y - Y @ X
    exact = expm_skew(s * comm)
    tau = np.sqrt(s / n)
    step = expm_skew(tau * X) @ expm_skew(tau * Y) @ expm_skew(-tau * X) @ expm_skew(-tau * Y)
    return _probe_max(exact, np.linalg.matrix_power(step, n), probes)


def fitted_loglog_slope(xs, ys) -> float:
    xs = np.log(np.asarray(xs, dtype=float))
    ys = np.log(np.asarray(ys, dtype=float))
    return float(np.polyfit(xs, ys, 1)[0])


def attainability_experiment(H0m, Xm, t: float, eps_list, psi0, grid_points: int = 201,
                             check: bool = True) -> FlowExperimentResult:
    """Deviation of the eps-perturbed flow from exp(tX) against eps*M*t.

    ``M`` is the maximum of |H0 exp(sX) psi0| over ``grid_points`` evenly spaced
    times in [0, t].  Grid rows are ``(eps, dev, bound)`` sorted by eps.
    """
    H0m = np.asarray(H0m, dtype=complex)
    Xm = np.asarray(Xm, dtype=complex)
    _check_skew(H0m)
    _check_skew(Xm)
    if grid_points < 100:
        raise PreconditionError("time grid needs at least 100 points")
    eps_list = [float(e) for e in eps_list]
    if any(e < 0 for e in eps_list):
        raise PreconditionError("eps values must be non-negative")
    psi0 = np.asarray(psi0, dtype=complex)
    ts = np.linspace(0.0, t, grid_points)
    M = max(np.linalg.norm(H0m @ (expm_skew(s * Xm) @ psi0)) for s in ts)
    free = expm_skew(t * Xm) @ psi0
    rows = []
    for eps in eps_list:
        dev = float(np.linalg.norm(expm_skew(t * (eps * H0m + Xm)) @ psi0 - free))
        bound = eps * M * t
        if check and dev > bound * (1 + 1e-6) + 1e-15:
            raise AssertionError(f"deviation {dev} exceeds eps*M*t = {bound} at eps={eps}")
        rows.append((eps, dev, bound))
    rows.sort(key=lambda r: r[0])
    pos = [(e, d) for e, d, _ in rows if e > 0 and d > 0]
    slope = fitted_loglog_slope(*zip(*pos)) if len(pos) >= 2 else float("nan")
    return FlowExperimentResult(rows, slope, {"M": float(M), "t": float(t),
                                              "grid_points": grid_points})


# --- reachability probe -----------------------------------------------------------

@dataclass
class ReachResult:
    fidelity: float
    schedule: ControlSchedule
    restarts_used: int
    seed: int


def _fidelity(target, psi) -> float:
    return float(abs(np.vdot(target, psi)) ** 2)


def _unpack(x, nseg, m):
    durs = np.abs(x[:nseg]) + 1e-9
    amps = x[nseg:].reshape(nseg, m)
    return durs, amps


def _evaluate(x, nseg, m, H0m, Hms, psi0, target):
    durs, amps = _unpack(x, nseg, m)
    psi = psi0
    for k in range(nseg):
        psi = _segment_unitary(H0m, Hms, durs[k], amps[k]) @ psi
    return _fidelity(target, psi)


def _coordinate_descent(x, f, step, min_step, max_sweeps, goal):
    best = f(x)
    for _ in range(max_sweeps):
        if best >= goal or step < min_step:
            break
        improved = False
        for i in range(len(x)):
            for sgn in (1.0, -1.0):
                y = x.copy()
                y[i] += sgn * step
                val = f(y)
                if val > best:
                    x, best, improved = y, val, True
                    break
        if not improved:
            step *= 0.5
    return x, best


def _one_restart(seed_seq, nseg, m, H0m, Hms, psi0, target, budget):
    rng = np.random.default_rng(seed_seq)
    durs = rng.uniform(0.1, budget.get("max_duration", np.pi), size=nseg)
    amps = rng.uniform(-budget.get("max_amplitude", np.pi), budget.get("max_amplitude", np.pi),
                       size=nseg * m)
    x0 = np.concatenate([durs, amps])
    f = lambda x: _evaluate(x, nseg, m, H0m, Hms, psi0, target)  # noqa: E731
    return _coordinate_descent(x0, f, budget.get("step", 0.5), budget.get("min_step", 1e-6),
                               budget.get("iterations", 400), budget.get("goal", 0.99999))


def reach_probe(system, rep: RepSpec, target, budget: dict, psi0=None, seed: int = 42,
                threads: int = 1) -> ReachResult:
    """Search piecewise-constant schedules maximizing |<target, psi(T)>|^2.

    Random restarts with coordinate-descent refinement over durations and
    amplitudes.  Restart seeds are spawned from ``seed`` so results do not
    depend on ``threads``.  No claim of unreachability is ever made.
    """
    segments = int(budget.get("segments", 0))
    restarts = int(budget.get("restarts", 0))
    if segments <= 0 or restarts <= 0 or int(budget.get("iterations", 1)) <= 0:
        raise ValueError("budget must allow at least one segment, restart and iteration")
    target = np.asarray(target, dtype=complex)
    target = target / np.linalg.norm(target)
    psi0 = np.eye(rep.K, dtype=complex)[0] if psi0 is None else np.asarray(psi0, dtype=complex)
    goal = budget.get("goal", 0.99999)
    if _fidelity(target, psi0) >= 1 - 1e-12:
        return ReachResult(_fidelity(target, psi0), ControlSchedule(()), 0, seed)
    H0m, Hms = system_matrices(system, rep)
    m = len(Hms)
    children = np.random.SeedSequence(seed).spawn(restarts)
    best_x, best_f, used = None, -1.0, 0
    batch = max(1, threads)
    for start in range(0, restarts, batch):
        chunk = children[start:start + batch]
        run = lambda s: _one_restart(s, segments, m, H0m, Hms, psi0, target, budget)  # noqa: E731
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as ex:
                results = list(ex.map(run, chunk))
        else:
            results = [run(s) for s in chunk]
        for x, fval in results:
            used += 1
            if fval > best_f:
                best_x, best_f = x, fval
            if best_f >= goal:
                break
        if best_f >= goal:
            break
    durs, amps = _unpack(best_x, segments, m)
    sched = ControlSchedule(tuple((float(d), list(a)) for d, a in zip(durs, amps)))
    return ReachResult(best_f, sched, used, seed)

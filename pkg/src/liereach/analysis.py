"""Controllability verdicts assembled from closures, inclusion checks and ranks."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .closure import LieClosureResult, build_C, check_bc_in_b, lie_closure, pbw_coverage
from .dynamics import PreconditionError, expm_skew, system_matrices
from .envelope import order_of
from .rep import RepError, RepSpec, env_to_matrix

__all__ = [
    "Caps",
    "Verdict",
    "CLASSIFICATIONS",
    "tangent_rank",
    "matrix_lie_dim",
    "orbit_samples",
    "classify",
]

CLASSIFICATIONS = ("FiniteDimControllable", "StronglyAnalyticallyControllable",
                   "ApproxStrongSmoothControllable", "NoGoStrong", "Inconclusive")

RANK_RTOL = 1e-9


@dataclass(frozen=True)
class Caps:
    order_cap: int = 4
    iter_cap: int = 50
    k_max: int | None = None

    def __post_init__(self):
        if self.order_cap <= 0 or self.iter_cap <= 0:
            raise ValueError("caps must be positive")
        if self.k_max is not None and self.k_max < 0:
            raise ValueError("k_max must be non-negative")

    def to_dict(self) -> dict:
        return {"order_cap": self.order_cap, "iter_cap": self.iter_cap,
                "k_max": self.order_cap if self.k_max is None else self.k_max}


@dataclass
class Verdict:
    classification: str
    evidence: dict
    closures: dict = field(default_factory=dict, repr=False)

    def to_dict(self) -> dict:
        return {"classification": self.classification, "evidence": self.evidence}


def tangent_rank(basis, phi, rep: RepSpec, rtol: float = RANK_RTOL) -> int:
    """Complex rank of ``{X phi : X in basis}`` in the representation.

    ``phi`` must vanish outside the levels on which every basis element acts
    exactly.
    """
    basis = list(basis)
    if not basis:
        return 0
    for X in basis:
        if X.alg.key != rep.algebra.key:
            raise RepError("basis element and representation use different algebras")
    phi = np.asarray(phi, dtype=complex)
    if phi.shape != (rep.K,):
        raise RepError("state dimension does not match the representation")
    n = max((order_of(X) or 0) for X in basis)
    inner = rep.interior(n)
    if np.abs(phi[inner:]).max(initial=0.0) > 1e-12:
        raise PreconditionError(f"state has weight outside the first {inner} levels")
    cols = np.column_stack([env_to_matrix(rep, X) @ phi for X in basis])
    s = np.linalg.svd(cols, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def _real_vec(M: np.ndarray) -> np.ndarray:
    return np.concatenate([M.real.ravel(), M.imag.ravel()])


def matrix_lie_dim(mats, tol: float = 1e-9, max_dim: int | None = None) -> tuple:
    """Real dimension of the Lie algebra generated by skew-Hermitian matrices.

    Returns ``(dim, traceless)``.
    """
    mats = [np.asarray(M, dtype=complex) for M in mats]
    if not mats:
        return 0, True
    N = mats[0].shape[0]
    max_dim = N * N if max_dim is None else max_dim
    basis, vecs = [], []

    def add(M):
        v = _real_vec(M)
        for q in vecs:
            v = v - np.dot(q, v) * q
        for q in vecs:  # second pass for numerical orthogonality
            v = v - np.dot(q, v) * q
        nrm = np.linalg.norm(v)
        scale = max(np.linalg.norm(M), 1.0)
        if nrm > tol * scale:
            vecs.append(v / nrm)
            basis.append(M / np.linalg.norm(M))
            return True
        return False

    for M in mats:
        if np.linalg.norm(M) > 0:
            add(M)
    start = 0
    while len(basis) < max_dim:
        n = len(basis)
        for j in range(start, n):
            for i in range(j):
                if len(basis) >= max_dim:
                    break
                add(basis[i] @ basis[j] - basis[j] @ basis[i])
        if len(basis) == n:
            break
        start = n
    traceless = all(abs(np.trace(B)) < 1e-9 * max(1.0, np.linalg.norm(B)) for B in basis)
    return len(basis), traceless


def orbit_samples(system, rep: RepSpec, order: int, seed: int, count: int = 2,
                  word_length: int = 3, s_max: float = 0.5) -> list:
    """First basis state plus ``count`` states exp(s_k H_ak)...exp(s_1 H_a1) psi0.

    Only the lowest-order nonzero Hamiltonians are used as flows; they move
    the state far enough for well conditioned ranks while keeping the weight
    on high levels small.  Flow times and indices come from a fixed-seed
    generator.  Each sample is cut to the interior for ``order`` and
    renormalised; the discarded weight is returned alongside the state.
    """
    rng = np.random.default_rng(seed)
    H0m, Hms = system_matrices(system, rep)
    pairs = [(order_of(H), M) for H, M in zip(system.hamiltonians, [H0m, *Hms])
             if H and np.linalg.norm(M) > 0]
    low = min(o for o, _ in pairs)
    flows = [M for o, M in pairs if o == low]
    psi0 = np.eye(rep.K, dtype=complex)[0]
    out = [(psi0, 0.0)]
    inner = rep.interior(order)
    for _ in range(count):
        psi = psi0
        for _ in range(word_length):
            k = int(rng.integers(len(flows)))
            s = float(rng.uniform(-s_max, s_max))
            scale = 1.0 if low <= 1 else max(np.linalg.norm(flows[k], 2), 1.0)
            psi = expm_skew(s / scale * flows[k]) @ psi
        tail = float(np.linalg.norm(psi[inner:]))
        psi = psi.copy()
        psi[inner:] = 0.0
        out.append((psi / np.linalg.norm(psi), tail))
    return out


def _closure_summary(res: LieClosureResult) -> dict:
    return res.summary()


def classify(system, caps: Caps | None = None, rep: RepSpec | None = None, seed: int = 42,
             threads: int = 1, coverage_order: int | None = None) -> Verdict:
    """Evaluate the finite-dimensional, HTC and smooth-controllability criteria.

    Decision order: the su(N) rank test on a finite representation when the target
    is the unit sphere; No-Go when the controllability algebra closes finitely
    but the sphere of an infinite-dimensional space is the target; otherwise
    the [B, C] ⊆ B condition plus tangent-rank agreement of C and A at sampled
    orbit states.
    """
    caps = caps or Caps()
    central = {lab: str(v) for lab, v in system.central_values}
    if central:
        from .systems import specialized_rep
        system = system.specialized()
        if rep is not None:
            rep = specialized_rep(rep, system.algebra)
    alg = system.algebra
    cap = caps.order_cap
    ev: dict = {"caps": caps.to_dict(), "target": system.target, "seed": seed,
                "rep": rep.describe() if rep is not None else None,
                "tangent_rank_convention": "complex rank of {X phi}, rtol 1e-9"}
    if central:
        ev["central_values"] = central
    hams = [H for H in system.hamiltonians if H]
    A = lie_closure(alg, hams, cap, caps.iter_cap, threads)
    closures = {"A": A}
    ev["dim_A"] = A.dim
    ev["A"] = _closure_summary(A)
    gen_order = max(order_of(H) for H in hams)
    if A.truncation_hit and cap - 1 >= gen_order:
        A_lo = lie_closure(alg, hams, cap - 1, caps.iter_cap, threads)
        ev["dim_A_by_cap"] = {str(cap - 1): A_lo.dim, str(cap): A.dim}
        ev["A_cap_growing"] = A.dim > A_lo.dim
    else:
        ev["dim_A_by_cap"] = {str(cap): A.dim}
        ev["A_cap_growing"] = A.truncation_hit
    ev["A_finite_exact"] = A.finite_exact
    if coverage_order is not None and coverage_order <= cap:
        ev["coverage_A"] = pbw_coverage(A, coverage_order).to_dict(alg.labels)

    def verdict(cls, **extra):
        ev.update(extra)
        return Verdict(cls, ev, closures)

    # su(N)/u(N) rank test on a genuinely finite-dimensional Hilbert space
    if rep is not None and rep.finite and system.target == "sphere":
        H0m, Hms = system_matrices(system, rep)
        mats = [M for M in [H0m, *Hms] if np.linalg.norm(M) > 0]
        N = rep.K
        dim_m, traceless = matrix_lie_dim(mats)
        ev["N"] = N
        ev["dim_A_matrix"] = dim_m
        if (dim_m == N * N - 1 and traceless) or dim_m == N * N:
            return verdict("FiniteDimControllable",
                           matrix_rank_test={"holds": True,
                                     "algebra": f"su({N})" if dim_m == N * N - 1 else f"u({N})"})
        homogeneous = not system.H0
        return verdict("Inconclusive", matrix_rank_test={
            "holds": False,
            "reason": f"matrix algebra dim {dim_m} < {N * N - 1} = dim su({N})",
            "necessity_applies": homogeneous},
            failed=["matrix_algebra_su_N"])

    if A.finite_exact and system.target == "sphere":
        return verdict("NoGoStrong", no_go={
            "reason": "controllability algebra closes at finite dimension "
                      f"{A.dim} while the target is the unit sphere of an "
                      "infinite-dimensional space"})

    if not A.saturated:
        return verdict("Inconclusive", failed=["A_not_saturated_within_iter_cap"])
    if not system.controls or not any(system.controls):
        return verdict("Inconclusive", failed=["no_controls"])

    B = lie_closure(alg, [H for H in system.controls if H], cap, caps.iter_cap, threads)
    C = build_C(alg, system.H0, B, caps.k_max, cap, caps.iter_cap, threads)
    closures.update(B=B, C=C)
    ev["dim_B"] = B.dim
    ev["dim_C"] = C.dim
    ev["B"] = _closure_summary(B)
    ev["C"] = _closure_summary(C)
    if not (B.saturated and C.saturated):
        return verdict("Inconclusive", failed=["B_or_C_not_saturated_within_iter_cap"])
    bc = check_bc_in_b(B, C, cap)
    ev["condition_BC"] = bc.to_dict()
    if not bc.holds:
        return verdict("Inconclusive", failed=["condition_BC"])

    same_span = (all(A.echelon.contains(c._terms) for c in C.basis)
                 and all(C.echelon.contains(a._terms) for a in A.basis))
    ev["span_C_equals_span_A"] = same_span
    if same_span:
        # C(phi) = A(phi) for every phi; no numerics needed
        ev["condition_tangent"] = {"holds": True, "decided_by": "exact span equality"}
    elif rep is not None:
        order = max(A.max_order, C.max_order)
        if rep.interior(order) <= 0:
            raise RepError("representation too small for the closure order")
        ranks = []
        ok = True
        for phi, tail in orbit_samples(system, rep, order, seed):
            rc = tangent_rank(C.basis, phi, rep)
            ra = tangent_rank(A.basis, phi, rep)
            tail = 0.0 if tail < 1e-12 else float(f"{tail:.2e}")
            ranks.append({"rank_C": rc, "rank_A": ra, "discarded_tail": tail})
            ok = ok and rc == ra
        ev["condition_tangent"] = {"holds": ok, "decided_by": "numerical rank", "samples": ranks}
        if not ok:
            return verdict("Inconclusive", failed=["condition_tangent"])
    else:
        ev["condition_tangent"] = {"holds": None, "note": "no representation given"}

    if A.finite_exact:
        return verdict("StronglyAnalyticallyControllable")
    return verdict("ApproxStrongSmoothControllable", infinite_dim_note=(
        "infinite dimensionality of A is supported by closure growth under the "
        "order cap, not proven"))

"""Truncated matrix realizations of the built-in algebras.

Three ladder families are provided:

* ``su2-spin``: spin-j, dimension 2j+1, no truncation.
* ``su11-discrete-plus``: lowest-weight discrete series D_j^+ of su(1,1),
  compact generator diagonal with eigenvalues j, j+1, ..., first ``K`` levels.
* ``heisenberg-fock``: x = (a + a^dag)/sqrt2, p = i(a^dag - a)/sqrt2 on the
  first ``K`` Fock levels; central generators map to the identity.

Which base matrix a generator receives (and its sign) is found by searching
signed assignments that reproduce the algebra's commutation table on the
truncation interior.  Ladder matrices raise a level index by at most one, so a
product of n factors applied to level l is exact while l + n < K; all numeric
checks restrict to levels below ``interior(n)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import AlgebraError, StructureAlgebra
from .envelope import EnvElement, env_bracket, monomials_up_to
from .gaussian import GaussianRational

__all__ = [
    "RepSpec",
    "RepError",
    "KINDS",
    "gen_matrix",
    "gen_matrices",
    "env_to_matrix",
    "nelson_delta",
    "sobolev_norm",
    "homomorphism_check",
    "HomomorphismReport",
    "random_env_element",
    "matrix_to_csv",
    "basis_state",
    "interior_state",
]

KINDS = ("su2-spin", "su11-discrete-plus", "heisenberg-fock", "explicit")


class RepError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class RepSpec:
    """Matrix realization of ``algebra``.

    ``margin_order`` is the largest polynomial order the rep is meant to
    evaluate exactly on its interior; ``margin`` is the extra safety band of
    levels kept clear below the truncation edge.
    """

    algebra: StructureAlgebra
    kind: str
    K: int
    j: Fraction = Fraction(1, 2)
    margin_order: int = 4
    margin: int = 2
    matrices: tuple | None = field(default=None, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise RepError(f"unknown representation kind {self.kind!r}")
        object.__setattr__(self, "j", Fraction(self.j))
        if self.K < 2:
            raise RepError("truncation dimension K must be at least 2")
        if self.kind == "su2-spin":
            if (2 * self.j).denominator != 1 or self.j <= 0:
                raise RepError("spin j must be a positive half-integer")
            if self.K != int(2 * self.j + 1):
                raise RepError(f"su2-spin needs K = 2j+1 = {int(2 * self.j + 1)}")
        if self.kind == "su11-discrete-plus" and self.j <= 0:
            raise RepError("discrete series needs j > 0")
        if self.kind == "explicit":
            if self.matrices is None or len(self.matrices) != self.algebra.d:
                raise RepError("explicit rep needs one matrix per generator")
        if self.margin_order < 0 or self.margin < 0:
            raise RepError("margins must be non-negative")

    @property
    def truncated(self) -> bool:
        return self.kind in ("su11-discrete-plus", "heisenberg-fock")

    @property
    def finite(self) -> bool:
        """True when the matrices realize the algebra exactly (finite Hilbert space)."""
        return not self.truncated

    def interior(self, n: int, margin: int | None = None) -> int:
        """Number of leading levels on which order-``n`` products are exact."""
        if not self.truncated:
            return self.K
        m = self.margin if margin is None else margin
        return max(self.K - n - m, 0)

    def describe(self) -> dict:
        return {"kind": self.kind, "j": str(self.j), "K": self.K,
                "margin_order": self.margin_order, "margin": self.margin}

    def __hash__(self):
        return id(self)


# --- base matrices --------------------------------------------------------------

def _spin_base(j: Fraction):
    m = np.array([float(j) - k for k in range(int(2 * j + 1))])
    jp = np.diag(np.sqrt(float(j) * (float(j) + 1) - m[1:] * (m[1:] + 1)), 1)
    jx = 0.5 * (jp + jp.T)
    jy = -0.5j * (jp - jp.T)
    return [jx.astype(complex), jy.astype(complex), np.diag(m).astype(complex)], 2


def _su11_base(j: Fraction, K: int):
    n = np.arange(K, dtype=float)
    jj = float(j)
    kp = np.diag(np.sqrt((n[:-1] + 1) * (n[:-1] + 2 * jj)), -1)  # K+ |n> -> |n+1>
    k1 = 0.5 * (kp + kp.T)
    k2 = -0.5j * (kp - kp.T)
    k0 = np.diag(jj + n)
    return [k1.astype(complex), k2.astype(complex), k0.astype(complex)], 2


def _fock_base(K: int):
    a = np.diag(np.sqrt(np.arange(1, K, dtype=float)), 1)
    x = (a + a.T) / np.sqrt(2)
    p = 1j * (a.T - a) / np.sqrt(2)
    return [x.astype(complex), p.astype(complex)], None


def _table_ok(alg: StructureAlgebra, mats, block: int, tol=1e-10) -> bool:
    """Commutation table on the top-left ``block`` x ``block`` corner."""
    for i, jdx in itertools.combinations(range(alg.d), 2):
        lhs = (mats[i] @ mats[jdx] - mats[jdx] @ mats[i])[:block, :block]
        rhs = np.zeros_like(lhs)
        for k, c in alg.entry(i, jdx):
            rhs = rhs + complex(c) * mats[k][:block, :block]
        u = alg.unit_entry(i, jdx)
        if u:
            rhs = rhs + complex(u) * np.eye(block, dtype=complex)
        scale = max(1.0, np.abs(lhs).max(), np.abs(rhs).max())
        if np.abs(lhs - rhs).max() > tol * scale:
            return False
    return True


def _realize(rep: RepSpec):
    hit = rep._cache.get("gens")
    if hit is None:
        hit = rep._cache["gens"] = _build(rep)
    return hit


def _build(rep: RepSpec):
    alg = rep.algebra
    K = rep.K
    if rep.kind == "explicit":
        mats = [np.asarray(M, dtype=complex) for M in rep.matrices]
        if any(M.shape != (K, K) for M in mats):
            raise RepError("explicit matrices must be K x K")
        if not _table_ok(alg, mats, K):
            raise RepError("explicit matrices violate the commutation table")
        return tuple(mats)
    if rep.kind == "su2-spin":
        base, fixed = _spin_base(rep.j)
    elif rep.kind == "su11-discrete-plus":
        base, fixed = _su11_base(rep.j, K)
    else:
        base, fixed = _fock_base(K)
    noncentral = [i for i in range(alg.d) if not alg.central_flags[i]]
    if len(noncentral) != len(base):
        raise RepError(f"{rep.kind} realizes {len(base)} non-central generators, "
                       f"{alg.name} has {len(noncentral)}")
    # ladder operators move one level, so a commutator of two generators is
    # exact on the corner that excludes only the last level
    cols = K - 1 if rep.truncated else K
    ident = np.eye(K, dtype=complex)
    for perm in itertools.permutations(range(len(base))):
        for signs in itertools.product((1, -1), repeat=len(base)):
            if fixed is not None and signs[perm.index(fixed)] != 1:
                continue  # keep the compact generator's spectrum positive / descending
            mats = [ident] * alg.d
            for slot, g in enumerate(noncentral):
                mats[g] = signs[slot] * base[perm[slot]]
            if _table_ok(alg, mats, cols):
                return tuple(mats)
    raise RepError(f"no {rep.kind} assignment reproduces the table of {alg.name}")


def gen_matrices(rep: RepSpec) -> tuple:
    return _realize(rep)


def gen_matrix(rep: RepSpec, g) -> np.ndarray:
    """Matrix of generator ``g`` (index or label)."""
    try:
        idx = rep.algebra.index(g)
    except AlgebraError as exc:
        raise RepError(str(exc)) from None
    return _realize(rep)[idx].copy()


def _mono_matrix(rep: RepSpec, mono: tuple, cache: dict) -> np.ndarray:
    hit = cache.get(mono)
    if hit is not None:
        return hit
    mats = _realize(rep)
    out = np.eye(rep.K, dtype=complex)
    for g, e in enumerate(mono):
        for _ in range(e):
            out = out @ mats[g]
    cache[mono] = out
    return out


def env_to_matrix(rep: RepSpec, A: EnvElement) -> np.ndarray:
    """Substitute generator matrices into each ordered monomial and sum."""
    if A.alg.key != rep.algebra.key:
        raise RepError("element and representation use different algebras")
    cache = rep._cache.setdefault("mono", {})
    out = np.zeros((rep.K, rep.K), dtype=complex)
    for mono, c in A.items():
        out += complex(c) * _mono_matrix(rep, mono, cache)
    return out


def nelson_delta(rep: RepSpec) -> np.ndarray:
    """I + sum of G^dag G over non-central generators."""
    mats = _realize(rep)
    out = np.eye(rep.K, dtype=complex)
    for g, M in enumerate(mats):
        if not rep.algebra.central_flags[g]:
            out += M.conj().T @ M
    return out


def sobolev_norm(rep: RepSpec, phi, k) -> float:
    """sqrt(<phi, Delta^(k/2) phi>) via eigendecomposition of the Nelson operator."""
    phi = np.asarray(phi, dtype=complex)
    if k < 0:
        raise RepError("Sobolev index must be non-negative")
    w, V = np.linalg.eigh(nelson_delta(rep))
    amp = np.abs(V.conj().T @ phi) ** 2
    return float(np.sqrt(np.sum(amp * w ** (k / 2))))


def basis_state(rep: RepSpec, level: int = 0) -> np.ndarray:
    v = np.zeros(rep.K, dtype=complex)
    v[level] = 1.0
    return v


def interior_state(rep: RepSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """Random unit vector supported on the interior for order-``n`` operators."""
    m = rep.interior(n)
    if m <= 0:
        raise RepError("representation has no interior for this order")
    v = np.zeros(rep.K, dtype=complex)
    v[:m] = rng.normal(size=m) + 1j * rng.normal(size=m)
    return v / np.linalg.norm(v)


def random_env_element(alg: StructureAlgebra, n: int, rng: np.random.Generator,
                       terms: int = 4) -> EnvElement:
    """Small random element of order <= n with Gaussian-integer coefficients."""
    monos = monomials_up_to(alg.d, n)
    picks = rng.choice(len(monos), size=min(terms, len(monos)), replace=False)
    coeffs = {}
    for p in sorted(picks):
        re, im = rng.integers(-3, 4, size=2)
        if re == 0 and im == 0:
            re = 1
        coeffs[monos[p]] = GaussianRational(int(re), int(im))
    return EnvElement(alg, coeffs)


@dataclass
class HomomorphismReport:
    passed: bool
    max_deviation: float
    trials: int
    interior_levels: int
    worst: tuple | None = None

    def __bool__(self):
        return self.passed


def homomorphism_check(rep: RepSpec, n: int, trials: int = 50, seed: int = 0,
                       restrict_interior: bool = True, tol: float = 1e-9) -> HomomorphismReport:
    """Compare matrix(env_bracket(A, B)) with the matrix commutator.

    Columns are limited to levels where both sides are free of truncation
    effects unless ``restrict_interior`` is off (used as a negative control).
    """
    if n > rep.margin_order:
        raise RepError(f"order {n} exceeds margin_order {rep.margin_order}")
    rng = np.random.default_rng(seed)
    alg = rep.algebra
    worst = 0.0
    worst_pair = None
    cols = rep.interior(2 * n) if restrict_interior else rep.K
    for _ in range(trials):
        A = random_env_element(alg, n, rng)
        B = random_env_element(alg, n, rng)
        ma, mb = env_to_matrix(rep, A), env_to_matrix(rep, B)
        ab, ba = (ma @ mb)[:, :cols], (mb @ ma)[:, :cols]
        ref = ab - ba
        got = env_to_matrix(rep, env_bracket(alg, A, B))[:, :cols]
        # cancellation noise scales with the products, not with their difference
        dev = _rel_dev(got, ref, max(np.linalg.norm(ab), np.linalg.norm(ba)))
        if dev > worst:
            worst, worst_pair = dev, (A.render(), B.render())
    return HomomorphismReport(worst < tol, worst, trials, cols, worst_pair)


def _rel_dev(got: np.ndarray, ref: np.ndarray, floor: float = 0.0) -> float:
    diff = np.linalg.norm(got - ref)
    scale = max(np.linalg.norm(ref), floor)
    if scale == 0.0:
        return float(diff)
    return float(diff / scale)


def matrix_to_csv(M: np.ndarray) -> str:
    """Row-major CSV with an ``re,im`` pair per entry."""
    lines = []
    for row in np.asarray(M, dtype=complex):
        lines.append(",".join(f"{z.real:.17g},{z.imag:.17g}" for z in row))
    return "\n".join(lines) + "\n"

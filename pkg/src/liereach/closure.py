"""Lie closures inside E(L) with exact linear algebra.

Linear independence is decided by Gaussian elimination over the Gaussian
rationals on sparse rows keyed by PBW monomials.  Pivots are leading
monomials in graded-lexicographic order, so rows with low-order pivots span
exactly the part of the closure that lives in a given filtration level.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .algebra import AlgebraError, StructureAlgebra
from .envelope import (EnvElement, env_bracket, grade_truncate, monomial_key,
                       monomials_up_to, order_of)
from .gaussian import ONE, ZERO

__all__ = [
    "Echelon",
    "LieClosureResult",
    "lie_closure",
    "build_C",
    "BCCheck",
    "check_bc_in_b",
    "Coverage",
    "pbw_coverage",
]


class Echelon:
    """Row-echelon basis; each row is normalised to leading coefficient 1."""

    def __init__(self):
        self.rows: list[dict] = []
        self.pivots: dict = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        vec = dict(vec)
        pivots = self.pivots
        while True:
            hits = [m for m in vec if m in pivots]
            if not hits:
                return vec
            m = max(hits, key=monomial_key)
            c = vec[m]
            for mm, cc in self.rows[pivots[m]].items():
                v = vec.get(mm, ZERO) - c * cc
                if v:
                    vec[mm] = v
                else:
                    vec.pop(mm, None)

    def insert(self, vec: dict):
        """Add ``vec`` if independent; return the new normalised row or ``None``."""
        r = self.reduce(vec)
        if not r:
            return None
        lead = max(r, key=monomial_key)
        inv = r[lead].inverse()
        if inv != ONE:
            r = {m: c * inv for m, c in r.items()}
        self.pivots[lead] = len(self.rows)
        self.rows.append(r)
        return r

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


@dataclass
class LieClosureResult:
    """Basis of a (truncated) generated Lie algebra.

    ``truncation_hit`` records whether any bracket lost terms above the cap;
    a saturated closure without truncation is an exactly closed, finite
    dimensional Lie subalgebra.
    """

    alg: StructureAlgebra
    basis: list
    dim: int
    max_order: int
    saturated: bool
    order_cap: int
    iterations: int
    iter_cap_hit: bool = False
    truncation_hit: bool = False
    _echelon: Echelon | None = field(default=None, repr=False)

    @property
    def echelon(self) -> Echelon:
        if self._echelon is None:
            ech = Echelon()
            for b in self.basis:
                ech.insert(b._terms)
            self._echelon = ech
        return self._echelon

    @property
    def finite_exact(self) -> bool:
        return self.saturated and not self.truncation_hit

    def summary(self) -> dict:
        return {"dim": self.dim, "max_order": self.max_order, "saturated": self.saturated,
                "order_cap": self.order_cap, "iterations": self.iterations,
                "iter_cap_hit": self.iter_cap_hit, "truncation_hit": self.truncation_hit}


def _validate_caps(generators, order_cap, iter_cap):
    if not generators:
        raise AlgebraError("generator list is empty")
    if order_cap is None or order_cap <= 0 or iter_cap is None or iter_cap <= 0:
        raise AlgebraError("caps must be positive")


def lie_closure(alg: StructureAlgebra, generators, order_cap: int, iter_cap: int = 50,
                threads: int = 1) -> LieClosureResult:
    """Smallest bracket-closed subspace of E^(order_cap) containing ``generators``.

    Each pass brackets every (older, newer) basis pair that involves an
    element added in the previous pass; results are reduced in that fixed
    order.  ``threads`` only parallelises bracket evaluation.
    """
    generators = list(generators)
    _validate_caps(generators, order_cap, iter_cap)
    for g in generators:
        if not isinstance(g, EnvElement) or g.alg.key != alg.key:
            raise AlgebraError("generator does not belong to this algebra")
        o = order_of(g)
        if o is not None and o > order_cap:
            raise AlgebraError(f"generator of order {o} exceeds order_cap {order_cap}")
    ech = Echelon()
    basis: list[EnvElement] = []
    for g in generators:
        row = ech.insert(grade_truncate(g, order_cap)._terms)
        if row is not None:
            basis.append(EnvElement._wrap(alg, row))
    start = 0
    iterations = 0
    saturated = False
    truncated = False
    while iterations < iter_cap:
        n = len(basis)
        pairs = [(i, j) for j in range(start, n) for i in range(j)]
        brackets = _eval_brackets(alg, basis, pairs, threads)
        for full in brackets:
            if any(sum(m) > order_cap for m in full._terms):
                truncated = True
            row = ech.insert({m: c for m, c in full._terms.items() if sum(m) <= order_cap})
            if row is not None:
                basis.append(EnvElement._wrap(alg, row))
        iterations += 1
        if len(basis) == n:
            saturated = True
            break
        start = n
    max_order = max((order_of(b) for b in basis), default=0)
    return LieClosureResult(alg, basis, len(basis), max_order, saturated, order_cap,
                            iterations, iter_cap_hit=not saturated,
                            truncation_hit=truncated, _echelon=ech)


def _eval_brackets(alg, basis, pairs, threads):
    if threads > 1 and len(pairs) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(lambda p: env_bracket(alg, basis[p[0]], basis[p[1]]), pairs))
    return [env_bracket(alg, basis[i], basis[j]) for i, j in pairs]


def build_C(alg: StructureAlgebra, H0: EnvElement, B: LieClosureResult, k_max: int | None,
            order_cap: int, iter_cap: int = 50, threads: int = 1) -> LieClosureResult:
    """Closure of ``{ad_H0^k b : b in B, 0 <= k <= k_max}`` truncated at ``order_cap``."""
    if k_max is None:
        k_max = order_cap
    if k_max < 0:
        raise AlgebraError("k_max must be non-negative")
    seeds = []
    for b in B.basis:
        cur = grade_truncate(b, order_cap)
        for k in range(k_max + 1):
            if not cur:
                break
            seeds.append(cur)
            cur = env_bracket(alg, H0, cur, max_order=order_cap)
    if not seeds:
        raise AlgebraError("generator list is empty")
    return lie_closure(alg, seeds, order_cap, iter_cap, threads)


@dataclass
class BCCheck:
    holds: bool
    witness: tuple | None = None
    residual: EnvElement | None = None
    checked_pairs: int = 0

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        out = {"holds": self.holds, "checked_pairs": self.checked_pairs}
        if self.witness is not None:
            out["witness"] = [w.render() for w in self.witness]
            out["residual"] = self.residual.render()
        return out


def check_bc_in_b(B: LieClosureResult, C: LieClosureResult, order_cap: int | None = None) -> BCCheck:
    """Decide ``[B, C] ⊆ B`` exactly, brackets truncated at ``order_cap``."""
    if B.alg.key != C.alg.key:
        raise AlgebraError("closures belong to different algebras")
    cap = B.order_cap if order_cap is None else order_cap
    ech = B.echelon
    alg = B.alg
    count = 0
    for b in B.basis:
        for c in C.basis:
            count += 1
            r = ech.reduce(env_bracket(alg, b, c, max_order=cap)._terms)
            if r:
                return BCCheck(False, (b, c), EnvElement._wrap(alg, r), count)
    return BCCheck(True, None, None, count)


@dataclass
class Coverage:
    covered: int
    total: int
    missing: list
    n: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.covered, self.total)

    def to_dict(self, labels=None) -> dict:
        from .envelope import render_monomial
        miss = [render_monomial(labels, m) if labels else list(m) for m in self.missing]
        return {"n": self.n, "covered": self.covered, "total": self.total,
                "fraction": f"{self.covered}/{self.total}", "value": float(self.fraction),
                "missing": miss}


def pbw_coverage(result: LieClosureResult, n: int) -> Coverage:
    """How many PBW monomials of order 1..n the closure spans (constants ignored)."""
    if n > result.order_cap:
        raise AlgebraError(f"coverage order {n} exceeds the closure cap {result.order_cap}")
    if n < 1:
        raise AlgebraError("coverage order must be at least 1")
    d = result.alg.d
    # echelon rows with pivot order <= n span exactly span(basis) ∩ E^(n)
    proj = Echelon()
    for row in result.echelon.rows:
        lead = max(row, key=monomial_key)
        if 1 <= sum(lead) <= n:
            proj.insert({m: c for m, c in row.items() if sum(m) >= 1})
    missing = [m for m in monomials_up_to(d, n, lowest=1) if not proj.contains({m: ONE})]
    return Coverage(len(proj), comb(n + d, d) - 1, missing, n)

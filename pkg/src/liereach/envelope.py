"""Universal enveloping algebra in the PBW basis.

A monomial is a tuple of exponents relative to the algebra's declaration
order.  Products are brought to normal form by adjacent-transposition
rewriting ``L_b L_a -> L_a L_b + [L_b, L_a]`` (a < b); each correction term
has strictly lower order, so the recursion terminates.  Left multiplication
by a single generator and monomial products are memoised per algebra; the
caches only ever store normal forms, so hits and misses give equal results.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .algebra import AlgebraElement, AlgebraError, StructureAlgebra
from .gaussian import GaussianRational, ONE, ZERO, format_coefficient

__all__ = [
    "EnvElement",
    "order_of",
    "normal_order",
    "multiply",
    "env_bracket",
    "grade_truncate",
    "env_adjoint",
    "env_gen",
    "env_unit",
    "env_scalar",
    "embed",
    "monomial_key",
    "monomials_up_to",
    "render_monomial",
    "specialize_element",
]


def monomial_key(mono: tuple) -> tuple:
    """Graded-lexicographic sort key; larger key means leading monomial."""
    return (sum(mono), mono)


def render_monomial(labels: Sequence[str], mono: tuple) -> str:
    parts = [f"{labels[i]}^{e}" for i, e in enumerate(mono) if e]
    return "".join(parts) if parts else "1"


def monomials_up_to(d: int, n: int, lowest: int = 0) -> list:
    """All exponent vectors of order ``lowest..n`` in graded-lex descending order."""
    out = []

    def rec(prefix, left, k):
        if k == d - 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, k + 1)

    for total in range(n, lowest - 1, -1):
        if d == 0:
            break
        rec((), total, 0)
    return out


class EnvElement:
    """Element of E(L): sparse map PBW monomial -> GaussianRational.

    Treated as immutable.  ``*`` with another element is the associative
    product; with a scalar it scales.
    """

    __slots__ = ("alg", "_terms", "_hash")

    def __init__(self, alg: StructureAlgebra, terms: Mapping | Iterable = ()):
        if not isinstance(terms, Mapping):
            terms = dict(terms)
        clean = {}
        d = alg.d
        for mono, c in terms.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != d or any(e < 0 for e in mono):
                raise AlgebraError(f"bad exponent vector {mono} for {alg.name}")
            c = GaussianRational.coerce(c)
            if c:
                clean[mono] = c
        self.alg = alg
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, alg, terms: dict) -> "EnvElement":
        obj = object.__new__(cls)
        obj.alg = alg
        obj._terms = {m: c for m, c in terms.items() if c}
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, mono) -> GaussianRational:
        return self._terms.get(tuple(mono), ZERO)

    @property
    def order(self):
        """Maximum monomial order, or ``None`` for the zero element."""
        return order_of(self)

    def leading(self):
        if not self._terms:
            return None
        return max(self._terms, key=monomial_key)

    def _check(self, other):
        if not isinstance(other, EnvElement) or other.alg.key != self.alg.key:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, EnvElement):
            other = env_scalar(self.alg, other)
        self._check(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, ZERO) + c
        return EnvElement._wrap(self.alg, acc)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, EnvElement):
            other = env_scalar(self.alg, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return EnvElement._wrap(self.alg, {m: -c for m, c in self._terms.items()})

    def scale(self, s) -> "EnvElement":
        s = GaussianRational.coerce(s)
        return EnvElement._wrap(self.alg, {m: c * s for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, EnvElement):
            return multiply(self.alg, self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        out = env_unit(self.alg)
        for _ in range(int(n)):
            out = multiply(self.alg, out, self)
        return out

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, EnvElement):
            return NotImplemented
        return self.alg.key == other.alg.key and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alg.key, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda mc: monomial_key(mc[0]), reverse=True)

    def render(self) -> str:
        """Canonical text, e.g. ``(2i)*Ly^1Lz^1 + (-1)*Lx^1``."""
        if not self._terms:
            return "0"
        return " + ".join(f"({format_coefficient(c)})*{render_monomial(self.alg.labels, m)}"
                          for m, c in self.sorted_terms())

    __str__ = render

    def __repr__(self):
        return f"EnvElement<{self.alg.name}>[{self.render()}]"

    def to_json(self) -> list:
        """``[[exponents], [re_num, re_den], [im_num, im_den]]`` rows."""
        return [[list(m), *c.to_pairs()] for m, c in self.sorted_terms()]


def order_of(A: EnvElement):
    if not A._terms:
        return None
    return max(sum(m) for m in A._terms)


# --- normal ordering engine --------------------------------------------------

def _caches(alg: StructureAlgebra):
    c = alg._cache
    if "left" not in c:
        c["left"] = {}
        c["mono"] = {}
        c["adj"] = {}
    return c["left"], c["mono"], c["adj"]


def _acc(target: dict, src: dict, scale: GaussianRational) -> None:
    if scale == ONE:
        for m, c in src.items():
            v = target.get(m)
            target[m] = c if v is None else v + c
    else:
        for m, c in src.items():
            v = target.get(m)
            target[m] = c * scale if v is None else v + c * scale


def _left_gen(alg: StructureAlgebra, g: int, mono: tuple) -> dict:
    """Normal form of ``L_g * mono`` as a dict (shared; do not mutate)."""
    left, _, _ = _caches(alg)
    key = (g, mono)
    hit = left.get(key)
    if hit is not None:
        return hit
    k = next((i for i, e in enumerate(mono) if e), None)
    if k is None or g <= k:
        res = {mono[:g] + (mono[g] + 1,) + mono[g + 1:]: ONE}
    else:
        rest = mono[:k] + (mono[k] - 1,) + mono[k + 1:]
        res: dict = {}
        # L_g L_k rest = L_k (L_g rest) + [L_g, L_k] rest
        for m, c in _left_gen(alg, g, rest).items():
            _acc(res, _left_gen(alg, k, m), c)
        for h, c in alg.entry(g, k):
            _acc(res, _left_gen(alg, h, rest), c)
        u = alg.unit_entry(g, k)
        if u:
            _acc(res, {rest: ONE}, u)
        res = {m: c for m, c in res.items() if c}
    left[key] = res
    return res


def _left_gen_dict(alg, g: int, poly: dict) -> dict:
    res: dict = {}
    for m, c in poly.items():
        _acc(res, _left_gen(alg, g, m), c)
    return {m: c for m, c in res.items() if c}


def _mono_mul(alg: StructureAlgebra, a: tuple, b: tuple) -> dict:
    _, monos, _ = _caches(alg)
    key = (a, b)
    hit = monos.get(key)
    if hit is not None:
        return hit
    if not any(a):
        res = {b: ONE}
    else:
        # peel the last generator of a: a = a' L_g
        g = max(i for i, e in enumerate(a) if e)
        a_rest = a[:g] + (a[g] - 1,) + a[g + 1:]
        inner = _left_gen(alg, g, b)
        res = {}
        for m, c in inner.items():
            _acc(res, _mono_mul(alg, a_rest, m), c)
        res = {m: c for m, c in res.items() if c}
    monos[key] = res
    return res


def _check_word(alg, word):
    out = []
    for w in word:
        if isinstance(w, str):
            w = alg.index(w)
        if not isinstance(w, int) or not 0 <= w < alg.d:
            raise AlgebraError(f"invalid generator index {w!r} in word")
        out.append(w)
    return out


def normal_order(alg: StructureAlgebra, word: Sequence) -> EnvElement:
    """PBW normal form of the product ``L_{w1} ... L_{wn}``."""
    word = _check_word(alg, word)
    poly = {(0,) * alg.d: ONE}
    for g in reversed(word):
        poly = _left_gen_dict(alg, g, poly)
    return EnvElement._wrap(alg, poly)


def _same(alg, *els):
    for E in els:
        if not isinstance(E, EnvElement) or E.alg.key != alg.key:
            raise AlgebraError("element does not belong to this algebra")


def _product_terms(alg, A: EnvElement, B: EnvElement, max_order=None) -> dict:
    res: dict = {}
    for a, ca in A._terms.items():
        for b, cb in B._terms.items():
            _acc(res, _mono_mul(alg, a, b), ca * cb)
    if max_order is not None:
        return {m: c for m, c in res.items() if c and sum(m) <= max_order}
    return res


def multiply(alg: StructureAlgebra, A: EnvElement, B: EnvElement) -> EnvElement:
    """Associative product in normal form."""
    _same(alg, A, B)
    return EnvElement._wrap(alg, _product_terms(alg, A, B))


def env_bracket(alg: StructureAlgebra, A: EnvElement, B: EnvElement, max_order=None) -> EnvElement:
    """``A*B - B*A``; with ``max_order`` terms above that order are dropped."""
    _same(alg, A, B)
    ab = _product_terms(alg, A, B)
    for m, c in _product_terms(alg, B, A).items():
        v = ab.get(m)
        ab[m] = -c if v is None else v - c
    if max_order is not None:
        ab = {m: c for m, c in ab.items() if sum(m) <= max_order}
    return EnvElement._wrap(alg, ab)


def grade_truncate(A: EnvElement, n: int) -> EnvElement:
    if n < 0:
        raise AlgebraError("truncation order must be non-negative")
    return EnvElement._wrap(A.alg, {m: c for m, c in A._terms.items() if sum(m) <= n})


def _mono_adjoint(alg, mono: tuple) -> dict:
    _, _, adj = _caches(alg)
    hit = adj.get(mono)
    if hit is not None:
        return hit
    word = [i for i, e in enumerate(mono) for _ in range(e)]
    sign = 1
    for i in word:
        sign *= alg.hermitian_flags[i]
    res = normal_order(alg, list(reversed(word)))._terms
    if sign < 0:
        res = {m: -c for m, c in res.items()}
    adj[mono] = res
    return res


def env_adjoint(alg: StructureAlgebra, A: EnvElement) -> EnvElement:
    """Antilinear anti-automorphism extending the generator involution."""
    _same(alg, A)
    res: dict = {}
    for m, c in A._terms.items():
        _acc(res, _mono_adjoint(alg, m), c.conjugate())
    return EnvElement._wrap(alg, res)


# --- constructors -------------------------------------------------------------

def env_unit(alg: StructureAlgebra) -> EnvElement:
    return EnvElement._wrap(alg, {(0,) * alg.d: ONE})


def env_scalar(alg: StructureAlgebra, c) -> EnvElement:
    return env_unit(alg).scale(c)


def env_gen(alg: StructureAlgebra, label, coeff=1) -> EnvElement:
    i = alg.index(label)
    mono = tuple(1 if k == i else 0 for k in range(alg.d))
    return EnvElement(alg, {mono: coeff})


def embed(X: AlgebraElement) -> EnvElement:
    """Order-one layer: generator combination as an enveloping-algebra element."""
    alg = X.alg
    return EnvElement(alg, {tuple(1 if k == i else 0 for k in range(alg.d)): c
                            for i, c in X.terms})


def specialize_element(A: EnvElement, reduced: StructureAlgebra) -> EnvElement:
    """Image of ``A`` in an algebra built by ``specialize_central``.

    Central factors commute with everything, so a PBW monomial maps to the
    monomial in the remaining generators times the central values.
    """
    if reduced.origin is None or reduced.origin[0] != A.alg.key:
        raise AlgebraError("target algebra is not a specialization of this element's algebra")
    _, keep, vals = reduced.origin
    res: dict = {}
    for m, c in A._terms.items():
        for i, v in vals:
            for _ in range(m[i]):
                c = c * v
        mono = tuple(m[i] for i in keep)
        res[mono] = res.get(mono, ZERO) + c
    return EnvElement(reduced, res)

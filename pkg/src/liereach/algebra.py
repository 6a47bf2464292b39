"""Finite-dimensional Lie algebras given by exact structure constants."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .gaussian import GaussianRational, ZERO

__all__ = [
    "AlgebraError",
    "AlgebraValidationError",
    "StructureAlgebra",
    "AlgebraElement",
    "bracket_gen",
    "bracket",
    "verify_jacobi",
    "adjoint",
    "specialize_central",
]


class AlgebraError(ValueError):
    """Bad argument to an algebra operation (index range, mismatched algebras)."""


class AlgebraValidationError(ValueError):
    """Structure constants that do not define a Lie algebra.

    ``witness`` holds the offending generator indices.
    """

    def __init__(self, message, witness=None, kind=None):
        super().__init__(message)
        self.witness = witness
        self.kind = kind


def _clean(coords: Mapping[int, object]) -> tuple:
    out = []
    for k, v in coords.items():
        c = GaussianRational.coerce(v)
        if c:
            out.append((int(k), c))
    out.sort(key=lambda kv: kv[0])
    return tuple(out)


@dataclass(frozen=True, eq=False)
class StructureAlgebra:
    """Lie algebra on generators ``labels`` with table ``c[(i, j)] -> {k: coeff}``.

    Missing table entries are zero.  Construct through :meth:`from_brackets`
    unless a deliberately non-antisymmetric table is wanted (negative tests).

    ``unit_table`` holds bracket components along the unit of the enveloping
    algebra.  It is empty for an ordinary Lie algebra and is filled by
    :func:`specialize_central`, which replaces central generators by scalars.
    The Lie-level :func:`bracket` ignores it; the enveloping algebra uses it.
    """

    name: str
    labels: tuple
    table: Mapping
    hermitian_flags: tuple
    central_flags: tuple
    description: str = ""
    unit_table: Mapping = field(default_factory=dict)
    origin: tuple | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def d(self) -> int:
        return len(self.labels)

    @property
    def key(self) -> tuple:
        return (self.name, self.labels)

    @classmethod
    def from_brackets(cls, name, labels, brackets, hermitian_flags=None,
                      central_flags=None, description="", validate=True):
        """Build from brackets given for some ordered pairs.

        ``brackets`` maps ``(i, j)`` (indices or labels) to ``{k: coeff}``.
        A pair given in one orientation is filled in antisymmetrically; when
        both orientations are given they are stored as given, so validation
        can catch inconsistent input.
        """
        labels = tuple(labels)
        d = len(labels)
        index = {lab: n for n, lab in enumerate(labels)}

        def idx(x):
            if isinstance(x, str):
                if x not in index:
                    raise AlgebraError(f"unknown generator label {x!r}")
                return index[x]
            x = int(x)
            if not 0 <= x < d:
                raise AlgebraError(f"generator index {x} out of range 0..{d - 1}")
            return x

        given = {}
        for (a, b), coords in brackets.items():
            i, j = idx(a), idx(b)
            given[(i, j)] = _clean({idx(k): v for k, v in dict(coords).items()})
        table = {}
        for (i, j), val in given.items():
            if val:
                table[(i, j)] = val
            if (j, i) not in given and i != j:
                neg = tuple((k, -v) for k, v in val)
                if neg:
                    table[(j, i)] = neg
        herm = tuple(int(h) for h in (hermitian_flags or [1] * d))
        cent = tuple(bool(c) for c in (central_flags or [False] * d))
        if len(herm) != d or len(cent) != d:
            raise AlgebraError("flag vectors must have one entry per generator")
        if any(h not in (1, -1) for h in herm):
            raise AlgebraError("hermitian flags must be +1 or -1")
        alg = cls(name=name, labels=labels, table=table, hermitian_flags=herm,
                  central_flags=cent, description=description)
        if validate:
            alg.validate()
        return alg

    def entry(self, i: int, j: int) -> tuple:
        return self.table.get((i, j), ())

    def unit_entry(self, i: int, j: int) -> GaussianRational:
        return self.unit_table.get((i, j), ZERO)

    def index(self, label) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.d:
                raise AlgebraError(f"generator index {label} out of range")
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise AlgebraError(f"unknown generator {label!r}") from None

    def gen(self, label, coeff=1) -> "AlgebraElement":
        return AlgebraElement(self, {self.index(label): coeff})

    def validate(self) -> None:
        """Raise :class:`AlgebraValidationError` unless the table is a Lie algebra."""
        ok, witness = verify_jacobi(self)
        if not ok:
            names = tuple(self.labels[w] for w in witness)
            raise AlgebraValidationError(
                f"Jacobi identity fails on generators {names}", witness, "jacobi")
        for i in range(self.d):
            if self.entry(i, i):
                raise AlgebraValidationError(
                    f"[{self.labels[i]},{self.labels[i]}] is not zero", (i, i), "antisymmetry")
            for j in range(i + 1, self.d):
                a = dict(self.entry(i, j))
                b = dict(self.entry(j, i))
                if (set(a) != set(b) or any(a[k] != -b[k] for k in a)
                        or self.unit_entry(i, j) != -self.unit_entry(j, i)):
                    raise AlgebraValidationError(
                        f"c[{self.labels[i]}][{self.labels[j]}] != -c[{self.labels[j]}][{self.labels[i]}]",
                        (i, j), "antisymmetry")
        for i in range(self.d):
            if self.central_flags[i]:
                for j in range(self.d):
                    if self.entry(i, j):
                        raise AlgebraValidationError(
                            f"central generator {self.labels[i]} does not commute with {self.labels[j]}",
                            (i, j), "central")
        # [Li, Lj]^dagger = [Lj^dagger, Li^dagger] must agree with the table
        for i, j in itertools.combinations(range(self.d), 2):
            lhs = adjoint(self, bracket_gen(self, i, j))
            rhs = bracket_gen(self, j, i) * (self.hermitian_flags[i] * self.hermitian_flags[j])
            sign = self.hermitian_flags[i] * self.hermitian_flags[j]
            if lhs != rhs or self.unit_entry(i, j).conjugate() != self.unit_entry(j, i) * sign:
                raise AlgebraValidationError(
                    f"table is incompatible with the involution on ({self.labels[i]},{self.labels[j]})",
                    (i, j), "involution")

    def __repr__(self):
        return f"StructureAlgebra({self.name!r}, labels={self.labels})"


class AlgebraElement:
    """Sparse linear combination of generators with exact coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: StructureAlgebra, coords: Mapping[int, object] | Iterable = ()):
        if not isinstance(coords, Mapping):
            coords = dict(coords)
        for k in coords:
            if not 0 <= int(k) < alg.d:
                raise AlgebraError(f"generator index {k} out of range")
        self.alg = alg
        self.terms = _clean(coords)

    @property
    def coords(self) -> dict:
        return dict(self.terms)

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.alg.key != self.alg.key:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for k, v in other.terms:
            acc[k] = acc.get(k, ZERO) + v
        return AlgebraElement(self.alg, acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(self.alg, {k: -v for k, v in self.terms})

    def __mul__(self, scalar):
        s = GaussianRational.coerce(scalar)
        return AlgebraElement(self.alg, {k: v * s for k, v in self.terms})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.alg.key == other.alg.key and self.terms == other.terms

    def __hash__(self):
        return hash((self.alg.key, self.terms))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{self.alg.labels[k]}" for k, c in self.terms)


def bracket_gen(alg: StructureAlgebra, i: int, j: int) -> AlgebraElement:
    """``[L_i, L_j]`` exactly as stored in the table."""
    for x in (i, j):
        if not isinstance(x, int) or not 0 <= x < alg.d:
            raise AlgebraError(f"generator index {x!r} out of range 0..{alg.d - 1}")
    return AlgebraElement(alg, dict(alg.entry(i, j)))


def bracket(alg: StructureAlgebra, X: AlgebraElement, Y: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of the table."""
    for Z in (X, Y):
        if not isinstance(Z, AlgebraElement) or Z.alg.key != alg.key:
            raise AlgebraError("element does not belong to this algebra")
    acc: dict = {}
    for i, a in X.terms:
        for j, b in Y.terms:
            ab = a * b
            for k, c in alg.entry(i, j):
                acc[k] = acc.get(k, ZERO) + ab * c
    return AlgebraElement(alg, acc)


def verify_jacobi(alg: StructureAlgebra):
    """Check ``[a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0`` on all ordered triples.

    Repeated indices are included and the table is used as stored, so a table
    that is not antisymmetric is also caught.  Returns ``(True, None)`` or
    ``(False, (i, j, k))`` for the first violating triple.
    """
    d = alg.d
    for i, j, k in itertools.product(range(d), repeat=3):
        total = (bracket(alg, alg.gen(i), bracket_gen(alg, j, k))
                 + bracket(alg, alg.gen(j), bracket_gen(alg, k, i))
                 + bracket(alg, alg.gen(k), bracket_gen(alg, i, j)))
        if total or _unit_jacobi(alg, i, j, k):
            return False, (i, j, k)
    return True, None


def _unit_jacobi(alg, i, j, k):
    # unit component of the cyclic sum; only nonzero for a bad unit_table
    if not alg.unit_table:
        return ZERO
    acc = ZERO
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for h, v in alg.entry(b, c):
            acc = acc + v * alg.unit_entry(a, h)
    return acc


def adjoint(alg: StructureAlgebra, X: AlgebraElement) -> AlgebraElement:
    """Involution: conjugate coefficients, multiply each generator by its flag."""
    return AlgebraElement(
        alg, {k: v.conjugate() * alg.hermitian_flags[k] for k, v in X.terms})


def specialize_central(alg: StructureAlgebra, values: Mapping) -> StructureAlgebra:
    """Quotient of the enveloping algebra by ``Z - value`` for central ``Z``.

    Bracket components along a specialized generator become components along
    the unit.  For the Heisenberg algebra with the central element set to 1
    this is the Weyl algebra, which is how every representation sees it.
    """
    vals = {}
    for lab, v in values.items():
        i = alg.index(lab)
        if not alg.central_flags[i]:
            raise AlgebraError(f"{alg.labels[i]} is not central")
        vals[i] = GaussianRational.coerce(v)
    keep = [i for i in range(alg.d) if i not in vals]
    new = {old: n for n, old in enumerate(keep)}
    table, unit = {}, {}
    for (i, j), entry in alg.table.items():
        if i not in new or j not in new:
            continue
        coords = {}
        u = alg.unit_entry(i, j)
        for k, c in entry:
            if k in vals:
                u = u + c * vals[k]
            else:
                coords[new[k]] = c
        if coords:
            table[(new[i], new[j])] = _clean(coords)
        if u:
            unit[(new[i], new[j])] = u
    tag = ",".join(f"{alg.labels[i]}={vals[i]}" for i in sorted(vals))
    red = StructureAlgebra(
        name=f"{alg.name}[{tag}]", labels=tuple(alg.labels[i] for i in keep), table=table,
        hermitian_flags=tuple(alg.hermitian_flags[i] for i in keep),
        central_flags=tuple(alg.central_flags[i] for i in keep),
        description=f"{alg.name} with {tag}", unit_table=unit,
        origin=(alg.key, tuple(keep), tuple(sorted(vals.items()))))
    red.validate()
    return red

"""Exact complex rationals (Gaussian rationals).

Every coefficient of the symbolic layer lives here. ``Fraction`` keeps both
parts in lowest terms with a positive denominator, so two equal values always
have identical fields and hash alike.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["GaussianRational", "gq", "ZERO", "ONE", "I"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} exactly to a rational")


class GaussianRational:
    """Immutable value ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls._raw(_frac(x), Fraction(0))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    # comparison / hashing ---------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_coefficient(self)

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    def to_pairs(self) -> list:
        """``[[re_num, re_den], [im_num, im_den]]`` for lossless JSON."""
        return [[self.re.numerator, self.re.denominator],
                [self.im.numerator, self.im.denominator]]


def _fmt_frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_coefficient(c: GaussianRational) -> str:
    re, im = c.re, c.im
    if not im:
        return _fmt_frac(re)
    if im.denominator == 1:
        ipart = f"{im.numerator}i"
    else:
        ipart = f"({_fmt_frac(im)})i"
    if not re:
        return ipart
    sign = "-" if im < 0 else "+"
    mag = -im if im < 0 else im
    mpart = f"{mag.numerator}i" if mag.denominator == 1 else f"({_fmt_frac(mag)})i"
    return f"{_fmt_frac(re)}{sign}{mpart}"


def gq(re=0, im=0) -> GaussianRational:
    """Shorthand constructor: ``gq(1, 2)`` is ``1 + 2i``."""
    return GaussianRational(re, im)


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)

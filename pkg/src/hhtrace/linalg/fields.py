"""Exact ground fields: the rationals and prime fields.

Elements of ``QQ`` are :class:`fractions.Fraction`; elements of ``GF(p)`` are
:class:`Fp` instances holding the canonical representative in ``[0, p)``.
Both support the usual arithmetic operators, so algebra code never needs to
know which field it runs over.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational

import gmpy2


class Fp:
    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixing GF(%d) and GF(%d)" % (self.p, other.p))
            return other.v
        if isinstance(other, Integral):
            return int(other) % self.p
        if isinstance(other, Rational):
            return int(other.numerator) * pow(int(other.denominator), -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return Fp(pow(self.v, -1, self.p), self.p) ** (-n)
        return Fp(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "Fp(%d, %d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


class Field:
    """A ground field. Call it to convert ints, Fractions or "a/b" strings."""

    characteristic: int = 0

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        raise NotImplementedError

    def name(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.name()


class RationalField(Field):
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(x, (int, str)):
            return Fraction(x)
        if isinstance(x, Fp):
            raise TypeError("cannot lift a GF(p) element to QQ")
        if isinstance(x, Rational):
            return Fraction(x.numerator, x.denominator)
        raise TypeError("cannot convert %r to an exact rational" % (x,))

    def name(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or not gmpy2.is_prime(p):
            raise ValueError("GF(p) needs a prime p, got %r" % (p,))
        self.characteristic = int(p)

    def __call__(self, x):
        p = self.characteristic
        if isinstance(x, Fp):
            if x.p != p:
                raise ValueError("element of GF(%d) given to GF(%d)" % (x.p, p))
            return x
        if isinstance(x, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Integral):
            return Fp(int(x), p)
        if isinstance(x, Rational):
            den = int(x.denominator) % p
            if den == 0:
                raise ZeroDivisionError("denominator %d vanishes in GF(%d)" % (x.denominator, p))
            return Fp(int(x.numerator) * pow(den, -1, p), p)
        raise TypeError("cannot convert %r to GF(%d)" % (x, p))

    def name(self):
        return "GF(%d)" % self.characteristic

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GF", self.characteristic))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str) -> Field:
    """Parse ``"q"`` or ``"fp:<p>"`` (the CLI spelling)."""
    s = spec.strip().lower()
    if s in ("q", "qq", "rational", "rationals"):
        return QQ
    if s.startswith("fp:"):
        return GF(int(s[3:]))
    raise ValueError("unknown field %r (expected 'q' or 'fp:<p>')" % (spec,))


def field_spec(field: Field) -> str:
    if field.characteristic == 0:
        return "q"
    return "fp:%d" % field.characteristic


def format_scalar(x) -> str:
    """Render an exact scalar as a decimal integer or "num/den"."""
    if isinstance(x, Fp):
        return str(x.v)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)

"""Exact Gaussian-rational arithmetic.

``GaussianRational`` is the exact counterpart of ``complex``: both parts are
``fractions.Fraction``.  It exposes ``.real`` / ``.imag`` like the builtin
numeric types, so predicates written against those attributes work for
either representation.
"""

from __future__ import annotations

import numbers
import re
from decimal import Decimal, localcontext
from fractions import Fraction


class GaussianRational:
    __slots__ = ("real", "imag")

    def __init__(self, real=0, imag=0):
        self.real = Fraction(real)
        self.imag = Fraction(imag)

    @classmethod
    def coerce(cls, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, numbers.Rational):
            return cls(value)
        if isinstance(value, float):
            return cls(Fraction(value))
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, str):
            return parse_gaussian(value)
        raise TypeError(f"cannot convert {type(value).__name__} to GaussianRational")

    @staticmethod
    def _other(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, numbers.Rational):
            return GaussianRational(value)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.real + o.real, self.imag + o.imag)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.real - o.real, self.imag - o.imag)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.real, self.imag, o.real, o.imag
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.real, self.imag, o.real, o.imag
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return GaussianRational(1) / (self ** (-exponent))
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __neg__(self):
        return GaussianRational(-self.real, -self.imag)

    def __pos__(self):
        return self

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.real, -self.imag)

    def abs2(self) -> Fraction:
        return self.real * self.real + self.imag * self.imag

    def __abs__(self) -> float:
        return abs(complex(self))

    def __bool__(self) -> bool:
        return bool(self.real) or bool(self.imag)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.real == o.real and self.imag == o.imag

    def __hash__(self):
        if self.imag == 0:
            return hash(self.real)
        return hash((self.real, self.imag))

    def __complex__(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def __repr__(self) -> str:
        return f"GaussianRational({self.real}, {self.imag})"

    def __str__(self) -> str:
        return f"{self.real} {self.imag}"


def is_exact(value) -> bool:
    return isinstance(value, (GaussianRational, numbers.Rational))


_PAIR = re.compile(r"^\s*([^,\s]+)\s*[,\s]\s*([^,\s]+)\s*$")


def parse_gaussian(text: str) -> GaussianRational:
    """Parse ``"p/q"`` or ``"p/q,r/s"`` (real, imag) into a GaussianRational."""
    m = _PAIR.match(text)
    if m:
        return GaussianRational(Fraction(m.group(1)), Fraction(m.group(2)))
    return GaussianRational(Fraction(text.strip()))


def decimal_str(x, digits: int = 30) -> str:
    """Format a real number (Fraction, int, float, mpf) to ``digits`` significant digits."""
    if isinstance(x, numbers.Rational):
        x = Fraction(x)
        with localcontext() as ctx:
            ctx.prec = digits
            d = Decimal(x.numerator) / Decimal(x.denominator)
        if d == 0:
            return "0"
        return format(d, f".{digits}g")
    if isinstance(x, float):
        if x == 0:
            return "0"
        return format(Decimal(x), f".{digits}g")
    import mpmath

    return mpmath.nstr(x, digits, strip_zeros=True)


def format_pair(value, digits: int = 30) -> str:
    """``"re im"`` line with ``digits`` significant digits."""
    return f"{decimal_str(value.real, digits)} {decimal_str(value.imag, digits)}"

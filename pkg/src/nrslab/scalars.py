"""Exact scalars: rational literals and a fraction field over SparseLaurent.

Rationals are plain :class:`fractions.Fraction` values.  Symbolic work that
needs to divide by non-monomial Laurent polynomials (for instance by a
coefficient ``a_m`` written in terms of the roots) uses :class:`RatFunc`.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import SparseLaurent

ExactScalar = Fraction


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; ints and Fractions pass through."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    return Fraction(text)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _as_laurent(x) -> SparseLaurent | None:
    if isinstance(x, SparseLaurent):
        return x
    if isinstance(x, (int, Fraction)):
        return SparseLaurent.const(x)
    return None


class RatFunc:
    """Quotient ``num/den`` of Laurent polynomials.

    No gcd cancellation is attempted; equality is decided by
    cross-multiplication, which is exact.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        n = _as_laurent(num)
        d = _as_laurent(den)
        if n is None or d is None:
            raise TypeError("RatFunc parts must be Laurent polynomials or rationals")
        if d.is_zero():
            raise ZeroDivisionError("zero denominator")
        if d.is_monomial():
            n, d = n * d.inverse(), SparseLaurent.const(1)
        self.num = n
        self.den = d

    @staticmethod
    def _coerce(x) -> "RatFunc | None":
        if isinstance(x, RatFunc):
            return x
        if _as_laurent(x) is not None:
            return RatFunc(x)
        return None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(self.den, self.num) ** (-k)
        return RatFunc(self.num**k, self.den**k)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        # Equal values can have different representations.
        return 0

    def evaluate(self, values):
        return self.num.evaluate(values) / self.den.evaluate(values)

    def to_laurent(self) -> SparseLaurent:
        if not self.den.is_constant():
            raise ValueError("denominator is not constant")
        return self.num / self.den.constant_value()

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        if self.den == 1:
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num}) / ({self.den}))"


def is_zero(x) -> bool:
    if isinstance(x, (SparseLaurent, RatFunc)):
        return x.is_zero()
    return x == 0


def to_text(x) -> str:
    """Serialise an exact scalar for reports."""
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    if isinstance(x, RatFunc) and x.den.is_constant():
        x = x.to_laurent()
    if isinstance(x, SparseLaurent) and x.is_constant():
        return format_rational(x.constant_value())
    return str(x)

"""Sparse multivariate Laurent polynomials over the rationals.

A monomial is a tuple of ``(name, exponent)`` pairs sorted by name with no
zero exponents, so polynomials over different variable sets combine without
an explicit ring declaration.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple

Monomial = Tuple[Tuple[str, int], ...]

ONE_MONOMIAL: Monomial = ()


def _mul_monomials(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        na, ea = a[i]
        nb, eb = b[j]
        if na == nb:
            if ea + eb:
                out.append((na, ea + eb))
            i += 1
            j += 1
        elif na < nb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _pow_monomial(a: Monomial, k: int) -> Monomial:
    return tuple((n, e * k) for n, e in a) if k else ()


class SparseLaurent:
    """Immutable sparse Laurent polynomial with Fraction coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "SparseLaurent":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Rational) -> "SparseLaurent":
        return cls({ONE_MONOMIAL: c})

    @classmethod
    def var(cls, name: str, exponent: int = 1) -> "SparseLaurent":
        if exponent == 0:
            return cls.const(1)
        return cls._raw({((name, exponent),): Fraction(1)})

    @classmethod
    def symbols(cls, *names: str) -> tuple["SparseLaurent", ...]:
        return tuple(cls.var(n) for n in names)

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONOMIAL in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(ONE_MONOMIAL, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def variables(self) -> set[str]:
        return {n for mono in self._terms for n, _ in mono}

    def degree(self, name: str) -> int:
        """Largest exponent of ``name``; 0 for the zero polynomial."""
        exps = [dict(m).get(name, 0) for m in self._terms]
        return max(exps) if exps else 0

    def min_degree(self, name: str) -> int:
        exps = [dict(m).get(name, 0) for m in self._terms]
        return min(exps) if exps else 0

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=0)

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "SparseLaurent | None":
        if isinstance(other, SparseLaurent):
            return other
        if isinstance(other, (int, Fraction)):
            return SparseLaurent.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in o._terms.items():
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return SparseLaurent._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SparseLaurent._raw({m: -c for m, c in self._terms.items()})

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
        if not self._terms or not o._terms:
            return SparseLaurent._raw({})
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                m = _mul_monomials(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return SparseLaurent._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = SparseLaurent.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "SparseLaurent":
        """Inverse of a monomial; other elements are not units."""
        if len(self._terms) != 1:
            raise ZeroDivisionError(f"{self} is not a unit in the Laurent ring")
        (mono, c), = self._terms.items()
        return SparseLaurent._raw({_pow_monomial(mono, -1): 1 / c})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, SparseLaurent):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- comparison -----------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation -----------------------------------------------------

    def evaluate(self, values: Mapping[str, object]):
        """Substitute every variable; values may be numbers or ring elements.

        Variables missing from ``values`` are kept symbolic.
        """
        total = None
        for mono, c in self._terms.items():
            term = c
            rest = []
            for name, e in mono:
                if name in values:
                    v = values[name]
                    if isinstance(v, int):
                        v = Fraction(v)  # int ** negative would turn into a float
                    term = term * v**e
                else:
                    rest.append((name, e))
            if rest:
                term = SparseLaurent._raw({tuple(rest): Fraction(1)}) * term
            total = term if total is None else total + term
        return Fraction(0) if total is None else total

    def substitute(self, values: Mapping[str, object]):
        return self.evaluate(values)

    def coefficients_in(self, name: str) -> Dict[int, "SparseLaurent"]:
        """Split as sum_k coeff_k * name**k."""
        out: Dict[int, Dict[Monomial, Fraction]] = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            k = d.pop(name, 0)
            out.setdefault(k, {})[tuple(sorted(d.items()))] = c
        return {k: SparseLaurent._raw(v) for k, v in out.items()}

    def min_exponents(self) -> Dict[str, int]:
        names = self.variables()
        lows = {n: 0 for n in names}
        for mono in self._terms:
            for n, e in mono:
                if e < lows[n]:
                    lows[n] = e
        return lows

    def __repr__(self) -> str:
        return f"SparseLaurent({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in sorted(self._terms.items(), key=lambda kv: kv[0]):
            factors = [n if e == 1 else f"{n}^{e}" for n, e in mono]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")


def monomial(coeff: Rational = 1, **exponents: int) -> SparseLaurent:
    mono = tuple(sorted((n, e) for n, e in exponents.items() if e))
    return SparseLaurent({mono: coeff})


def lsum(items: Iterable, start=0):
    total = start
    for x in items:
        total = total + x
    return total

"""Input polynomials described by their roots."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import zero_coefficient
from .laurent import SparseLaurent
from .scalars import format_rational, is_zero, parse_rational
from .symmetric import poly_from_roots


@dataclass(frozen=True)
class PolySpec:
    """f(z) = a0 * prod(1 - z/z_i).

    Roots may be Fractions, SparseLaurent symbols or complex floats.
    Coefficients outside 0..d read as zero.
    """

    a0: object
    roots: tuple
    coeffs: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(self.roots))
        object.__setattr__(self, "coeffs", tuple(poly_from_roots(self.a0, self.roots)))

    @property
    def d(self) -> int:
        return len(self.roots)

    def a(self, i: int):
        if 0 <= i <= self.d:
            return self.coeffs[i]
        return Fraction(0)

    def require_nonzero(self, *indices: int) -> None:
        for i in indices:
            if is_zero(self.a(i)):
                raise zero_coefficient(i, self.d)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(z, (int, Fraction)) for z in self.roots) and isinstance(self.a0, (int, Fraction))

    @classmethod
    def symbolic(cls, d: int, a0=1, prefix: str = "z") -> "PolySpec":
        return cls(a0, tuple(SparseLaurent.var(f"{prefix}{i}") for i in range(1, d + 1)))

    @classmethod
    def from_ints(cls, roots: Sequence, a0=1) -> "PolySpec":
        return cls(Fraction(a0), tuple(Fraction(r) for r in roots))

    @classmethod
    def monic(cls, roots: Sequence) -> "PolySpec":
        """The PolySpec whose leading coefficient a_d is 1."""
        roots = tuple(Fraction(r) for r in roots)
        a0 = Fraction(1)
        for r in roots:
            a0 *= -r
        return cls(a0, roots)

    def to_json(self) -> dict:
        return {"a0": format_rational(self.a0), "roots": [format_rational(r) for r in self.roots]}

    @classmethod
    def from_json(cls, data: dict) -> "PolySpec":
        return cls(parse_rational(data["a0"]), tuple(parse_rational(r) for r in data["roots"]))

    @classmethod
    def load(cls, path: str | Path) -> "PolySpec":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()) + "\n", encoding="utf-8")

    def as_complex(self) -> "PolySpec":
        return PolySpec(complex(self.a0), tuple(complex(r) for r in self.roots))


@dataclass(frozen=True)
class CoeffSpec:
    """A polynomial given directly by its coefficients a_0..a_d.

    Useful with indeterminate coefficients: a_1 and a_2 are then monomials,
    so every division stays inside the Laurent ring.
    """

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def d(self) -> int:
        return len(self.coeffs) - 1

    def a(self, i: int):
        if 0 <= i <= self.d:
            return self.coeffs[i]
        return Fraction(0)

    def require_nonzero(self, *indices: int) -> None:
        for i in indices:
            if is_zero(self.a(i)):
                raise zero_coefficient(i, self.d)

    @classmethod
    def symbolic(cls, d: int, prefix: str = "a") -> "CoeffSpec":
        return cls(tuple(SparseLaurent.var(f"{prefix}{i}") for i in range(d + 1)))

"""Exact certification toolkit for the NRS(m) attractor sets and their combinatorics."""

from .laurent import SparseLaurent
from .polyspec import PolySpec
from .scalars import RatFunc, format_rational, parse_rational

__all__ = ["PolySpec", "RatFunc", "SparseLaurent", "format_rational", "parse_rational"]
__version__ = "0.1.0"

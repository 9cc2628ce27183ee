"""The explicit NRS(2) maps and two-dimensional Newton iteration on them."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .combinatorics import binom
from .errors import AmbiguousMatch, SingularJacobian
from .laurent import SparseLaurent
from .polyspec import PolySpec

Exps = Tuple[int, int]


def _binom_ext(n: int, k: int) -> int:
    # binom(-1, -1) = 1 supplies the constant -a_1/a_2 of f_{1,2}; without
    # it the attractor points are not fixed points.
    if n == -1 and k == -1:
        return 1
    return binom(n, k)


def _add(table: Dict[Exps, object], key: Exps, value) -> None:
    v = table.get(key, 0) + value
    if v == 0:
        table.pop(key, None)
    else:
        table[key] = v


def residual_tables(spec) -> Tuple[Dict[Exps, object], Dict[Exps, object]]:
    """Coefficient tables {(e0, e1): c} of F0 = f02 - x0 and F1 = f12 - x1."""
    d = spec.d
    spec.require_nonzero(1, 2)
    a = spec.a
    a2 = a(2)
    q = a(0) / a(1)
    F0: Dict[Exps, object] = {}
    F1: Dict[Exps, object] = {}
    for i in range(-1, d):
        for j in range(0, i // 2 + 1):
            b = _binom_ext(i - j, j)
            if b and i - 2 * j >= 0:
                _add(F0, (i - 2 * j, j), -a(i + 1) / a2 * q**j * b)
    for i in range(-2, d - 1):
        for j in range(-1, i // 2 + 1):
            b = _binom_ext(i - j, j)
            if b and i - 2 * j >= 0:
                _add(F1, (i - 2 * j, j + 1), -a(i + 2) / a2 * q**j * b)
    return F0, F1


def _to_laurent(table: Dict[Exps, object]) -> SparseLaurent:
    out = SparseLaurent.const(0)
    x0, x1 = SparseLaurent.symbols("x0", "x1")
    for (e0, e1), c in table.items():
        out = out + c * x0**e0 * x1**e1
    return out


def _eval(table: Dict[Exps, object], x0, x1):
    total = 0
    for (e0, e1), c in table.items():
        total = total + c * x0**e0 * x1**e1
    return total


def _deriv(table: Dict[Exps, object], slot: int) -> Dict[Exps, object]:
    out: Dict[Exps, object] = {}
    for (e0, e1), c in table.items():
        e = (e0, e1)[slot]
        if e:
            key = (e0 - 1, e1) if slot == 0 else (e0, e1 - 1)
            _add(out, key, c * e)
    return out


@dataclass(frozen=True)
class Nrs2System:
    """F(x) = (f02(x) - x0, f12(x) - x1) for one input polynomial."""

    spec: object
    F0: Dict[Exps, object] = field(init=False, repr=False)
    F1: Dict[Exps, object] = field(init=False, repr=False)
    jac: Tuple[Dict[Exps, object], ...] = field(init=False, repr=False)
    _num: tuple = field(init=False, repr=False)

    def __post_init__(self):
        F0, F1 = residual_tables(self.spec)
        object.__setattr__(self, "F0", F0)
        object.__setattr__(self, "F1", F1)
        jac = (_deriv(F0, 0), _deriv(F0, 1), _deriv(F1, 0), _deriv(F1, 1))
        object.__setattr__(self, "jac", jac)
        try:
            num = tuple(_numeric_table(t) for t in (F0, F1) + jac)
        except TypeError:
            num = None  # symbolic coefficients: exact evaluation only
        object.__setattr__(self, "_num", num)

    @property
    def t(self):
        return self.spec.a(0) / self.spec.a(1)

    def residual(self, x0, x1) -> tuple:
        if _is_exact(x0, x1) or self._num is None:
            return _eval(self.F0, x0, x1), _eval(self.F1, x0, x1)
        return _eval_num(self._num[0], x0, x1), _eval_num(self._num[1], x0, x1)

    def jacobian(self, x0, x1) -> list:
        if _is_exact(x0, x1) or self._num is None:
            vals = [_eval(t, x0, x1) for t in self.jac]
        else:
            vals = [_eval_num(t, x0, x1) for t in self._num[2:]]
        return [[vals[0], vals[1]], [vals[2], vals[3]]]

    def as_laurent(self) -> Tuple[SparseLaurent, SparseLaurent]:
        return _to_laurent(self.F0), _to_laurent(self.F1)


def _is_exact(*xs) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in xs)


def _numeric_table(table: Dict[Exps, object]):
    keys = list(table)
    e0 = np.array([k[0] for k in keys], dtype=float)
    e1 = np.array([k[1] for k in keys], dtype=float)
    c = np.array([complex(table[k]) for k in keys], dtype=complex)
    return e0, e1, c


def _eval_num(num, x0, x1) -> complex:
    e0, e1, c = num
    if not len(c):
        return 0j
    x0 = complex(x0)
    x1 = complex(x1)
    # e ** 0 must be 1 even at the origin
    p0 = np.array([x0**int(k) for k in e0])
    p1 = np.array([x1**int(k) for k in e1])
    return complex(np.sum(c * p0 * p1))


def eval_f02(sys: Nrs2System, x0, x1):
    return sys.residual(x0, x1)[0] + x0


def eval_f12(sys: Nrs2System, x0, x1):
    return sys.residual(x0, x1)[1] + x1


def newton_step(sys: Nrs2System, point: Sequence) -> tuple:
    x0, x1 = point
    r0, r1 = sys.residual(x0, x1)
    (j00, j01), (j10, j11) = sys.jacobian(x0, x1)
    det = j00 * j11 - j01 * j10
    if _is_exact(x0, x1):
        if det == 0:
            raise SingularJacobian("exact Jacobian is singular")
    else:
        scale = max(abs(j00), abs(j01), abs(j10), abs(j11), 1.0) ** 2
        if abs(det) < 1e-14 * scale:
            raise SingularJacobian(f"|det J| = {abs(det):.3e} below threshold")
    dx0 = (j11 * r0 - j01 * r1) / det
    dx1 = (j00 * r1 - j10 * r0) / det
    return x0 - dx0, x1 - dx1


@dataclass
class IterTrace:
    start: tuple
    iterates: List[tuple]
    status: str
    limit: Optional[tuple] = None
    matched_sum: Optional[Tuple[int, int]] = None
    ambiguous: Tuple[Tuple[int, int], ...] = ()

    @property
    def steps(self) -> int:
        return len(self.iterates) - 1


def _norm(v) -> float:
    return math.hypot(*(abs(x) for x in v))


def iterate(
    sys: Nrs2System,
    start: Sequence,
    tol: float = 1e-12,
    maxiter: int = 200,
    diverge: float = 1e12,
    match_tol: float = 1e-8,
) -> IterTrace:
    x = (complex(start[0]), complex(start[1]))
    its = [x]
    status = "max-iter"
    for _ in range(maxiter + 1):
        if _norm(sys.residual(*x)) < tol:
            status = "converged"
            break
        if len(its) > maxiter:
            break
        try:
            x = newton_step(sys, x)
        except SingularJacobian:
            status = "singular"
            break
        if not all(map(math.isfinite, (x[0].real, x[0].imag, x[1].real, x[1].imag))) or _norm(x) > diverge:
            its.append(x)
            status = "diverged"
            break
        its.append(x)
    trace = IterTrace(start=tuple(its[0]), iterates=its, status=status)
    if status == "converged":
        trace.limit = x
        try:
            trace.matched_sum = classify_limit(sys.spec, x, match_tol)
        except AmbiguousMatch as err:
            trace.ambiguous = tuple(err.candidates)
    return trace


def classify_limit(spec, limit: Sequence, tol: float = 1e-8) -> Optional[Tuple[int, int]]:
    """Index pair (i, j), 1-based, whose root sum z_i + z_j is within tol of limit[0]."""
    roots = [complex(z) for z in spec.roots]
    hits = []
    x0 = complex(limit[0])
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if abs(x0 - (roots[i] + roots[j])) <= tol * max(1.0, abs(x0)):
                hits.append((i + 1, j + 1))
    if len(hits) > 1:
        raise AmbiguousMatch(hits)
    return hits[0] if hits else None


def error_ratios(sys: Nrs2System, target: Sequence, start: Sequence, steps: int = 3) -> List[float]:
    """e_{k+1} / e_k^2 along the Newton sequence; bounded ratios mean quadratic convergence."""
    target = tuple(complex(t) for t in target)
    x = tuple(complex(s) for s in start)
    errs = [_norm([x[0] - target[0], x[1] - target[1]])]
    for _ in range(steps):
        x = newton_step(sys, x)
        errs.append(_norm([x[0] - target[0], x[1] - target[1]]))
    # once the error reaches round-off the ratio measures noise, not the method
    floor = 1e3 * np.finfo(float).eps * max(1.0, _norm(target))
    out = []
    for k in range(steps):
        if errs[k + 1] <= floor:
            break
        out.append(errs[k + 1] / errs[k] ** 2)
    return out


def sample_starts(n: int, box: Tuple[float, float], rng: np.random.Generator, complex_starts: bool = False) -> list:
    lo, hi = box
    re = rng.uniform(lo, hi, size=(n, 2))
    if complex_starts:
        im = rng.uniform(lo, hi, size=(n, 2))
        return [(complex(r[0], i[0]), complex(r[1], i[1])) for r, i in zip(re, im)]
    return [(complex(r[0]), complex(r[1])) for r in re]


def grid_starts(width: int, height: int, box: Tuple[float, float]) -> list:
    """Real starts on a width x height lattice over box^2, row-major in x1."""
    lo, hi = box
    xs = np.linspace(lo, hi, width)
    ys = np.linspace(lo, hi, height)
    return [(complex(x), complex(y)) for y in ys for x in xs]


CSV_COLUMNS = [
    "start_re0",
    "start_im0",
    "start_re1",
    "start_im1",
    "status",
    "steps",
    "limit0",
    "limit1",
    "matched_i",
    "matched_j",
]


def _fmt_complex(z: Optional[complex]) -> str:
    if z is None:
        return ""
    if abs(z.imag) < 1e-12 * max(1.0, abs(z.real)):
        return repr(z.real)
    return f"{z.real!r}{z.imag:+.17g}j"


def trace_row(tr: IterTrace) -> dict:
    m = tr.matched_sum
    return {
        "start_re0": repr(tr.start[0].real),
        "start_im0": repr(tr.start[0].imag),
        "start_re1": repr(tr.start[1].real),
        "start_im1": repr(tr.start[1].imag),
        "status": tr.status,
        "steps": tr.steps,
        "limit0": _fmt_complex(tr.limit[0]) if tr.limit else "",
        "limit1": _fmt_complex(tr.limit[1]) if tr.limit else "",
        "matched_i": m[0] if m else "",
        "matched_j": m[1] if m else "",
    }


def write_csv(traces: Sequence[IterTrace], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        w.writeheader()
        for tr in traces:
            w.writerow(trace_row(tr))

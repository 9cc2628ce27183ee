"""Verification suites, seeded randomness and deterministic reports."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .errors import ConfigInvalid, UnknownSuite
from .laurent import SparseLaurent
from .scalars import RatFunc, format_rational, to_text

MAX_D = 6
MAX_M = 4


# ---------------------------------------------------------------------------
# configuration


@dataclass
class RunConfig:
    seed: int = 0
    d_range: Tuple[int, int] = (2, MAX_D)
    m_range: Tuple[int, int] = (1, MAX_M)
    mode: str = "rational"
    out: Optional[str] = None
    format: str = "json"
    threads: int = 1
    unsafe_large: bool = False
    d: Optional[int] = None  # restricts suites to one degree
    m: Optional[int] = None

    def validate(self) -> "RunConfig":
        if self.mode not in ("symbolic", "rational", "float"):
            raise ConfigInvalid(f"unknown mode {self.mode!r}")
        if self.format not in ("json", "csv"):
            raise ConfigInvalid(f"unknown format {self.format!r}")
        if self.threads < 1:
            raise ConfigInvalid("threads must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigInvalid("seed must fit in 64 bits")
        lo, hi = self.d_range
        if lo > hi or lo < 1:
            raise ConfigInvalid(f"bad d range {self.d_range}")
        if not self.unsafe_large:
            check_bounds(self.d if self.d is not None else hi, self.m if self.m is not None else min(self.m_range[1], MAX_M))
            if hi > MAX_D or self.m_range[1] > MAX_M:
                raise ConfigInvalid(f"ranges exceed d <= {MAX_D}, m <= {MAX_M}; pass --unsafe-large to override")
        return self


def check_bounds(d: int, m: Optional[int] = None, unsafe: bool = False) -> None:
    if unsafe:
        return
    if d > MAX_D:
        raise ConfigInvalid(f"d = {d} exceeds the desk-scale bound {MAX_D}; pass --unsafe-large to override")
    if m is not None and m > MAX_M:
        raise ConfigInvalid(f"m = {m} exceeds the desk-scale bound {MAX_M}; pass --unsafe-large to override")


def _parse_range(text: str) -> Tuple[int, int]:
    parts = [p.strip() for p in text.replace("..", ",").split(",")]
    if len(parts) != 2:
        raise ConfigInvalid(f"range must look like 'lo,hi': {text!r}")
    return int(parts[0]), int(parts[1])


_CONFIG_KEYS = {
    "seed": int,
    "d_range": _parse_range,
    "m_range": _parse_range,
    "mode": str,
    "out": str,
    "format": str,
    "threads": int,
    "unsafe_large": lambda s: s.strip().lower() in ("1", "true", "yes", "on"),
    "d": int,
    "m": int,
}


def load_config_file(path: str | Path) -> Dict[str, object]:
    """``key = value`` lines; ``#`` starts a comment."""
    out: Dict[str, object] = {}
    for n, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigInvalid(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise ConfigInvalid(f"{path}:{n}: unknown key {key!r}")
        try:
            out[key] = _CONFIG_KEYS[key](value)
        except ValueError as err:
            raise ConfigInvalid(f"{path}:{n}: {err}") from None
    return out


def resolve_seed(cli_seed: Optional[int], file_values: Dict[str, object]) -> int:
    if cli_seed is not None:
        return cli_seed
    if "seed" in file_values:
        return int(file_values["seed"])
    env = os.environ.get("NRSLAB_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ConfigInvalid(f"NRSLAB_SEED is not an integer: {env!r}") from None
    return 0


def case_rng(seed: int, case_index: int) -> np.random.Generator:
    """Independent stream per case, so worker scheduling never changes samples."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(case_index,)))


def random_rational(rng: np.random.Generator, num: int = 9, den: int = 4) -> Fraction:
    while True:
        v = Fraction(int(rng.integers(-num, num + 1)), int(rng.integers(1, den + 1)))
        if v:
            return v


def random_roots(rng: np.random.Generator, d: int, num: int = 9, den: int = 4) -> List[Fraction]:
    roots: List[Fraction] = []
    while len(roots) < d:
        v = random_rational(rng, num, den)
        if v not in roots:
            roots.append(v)
    return roots


# ---------------------------------------------------------------------------
# serialisation


def to_jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, float):
        return x
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (SparseLaurent, RatFunc)):
        return to_text(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, np.generic):
        return to_jsonable(x.item())
    return str(x)


def digest(inputs) -> str:
    blob = json.dumps(to_jsonable(inputs), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class Case:
    id: str
    inputs_digest: str
    passed: bool
    residual: str
    wall_time: float
    detail: dict = field(default_factory=dict)


@dataclass
class Report:
    suite: str
    seed: int
    cases: List[Case] = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def summary(self) -> dict:
        n_pass = sum(c.passed for c in self.cases)
        return {"total": len(self.cases), "passed": n_pass, "failed": len(self.cases) - n_pass}

    def to_dict(self, timings: bool = True) -> dict:
        cases = []
        for c in self.cases:
            entry = asdict(c)
            if not timings:
                entry.pop("wall_time")
            cases.append(to_jsonable(entry))
        return {
            "suite": self.suite,
            "seed": self.seed,
            "version": self.version,
            "summary": self.summary(),
            "cases": cases,
        }

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "id", "inputs_digest", "passed", "residual", "wall_time"])
        for c in self.cases:
            w.writerow([self.suite, c.id, c.inputs_digest, int(c.passed), c.residual, f"{c.wall_time:.6f}"])
        return buf.getvalue()


def emit_report(report: Report, fmt: str = "json", path: Optional[str] = None) -> str:
    text = report.to_json() if fmt == "json" else report.to_csv()
    if path:
        Path(path).write_text(text, encoding="utf-8")
    return text


# ---------------------------------------------------------------------------
# case functions: module level so worker processes can import them


def _ok(passed: bool, residual="0", **detail):
    return bool(passed), str(residual), detail


def case_symmetric(n_max: int, d: int, seed: int, idx: int):
    from .symmetric import check_e_z_prod, check_ec_hc_identities, check_eh_identity
    from .jacobian import symbolic_roots

    if d <= 4:
        pts = [symbolic_roots(d)]
    else:
        pts = [random_roots(case_rng(seed, idx * 10 + k), d) for k in range(3)]
    fails = []
    for vals in pts:
        for n in range(n_max + 1):
            if not check_eh_identity(n, vals):
                fails.append(f"eh n={n}")
            if not check_ec_hc_identities(n, vals):
                fails.append(f"ec/hc n={n}")
    for vals in [random_roots(case_rng(seed, idx * 10 + 5), d)] + ([symbolic_roots(d)] if d <= 4 else []):
        for m in range(1, d + 1):
            for n in range(d + 1):
                if not check_e_z_prod(n, m, vals):
                    fails.append(f"ezprod m={m} n={n}")
    return _ok(not fails, ";".join(fails) or "0", points=len(pts))


def case_attractor(d: int, m: int, seed: int, idx: int):
    from .attractor import build_alpha, fixed_point_residuals, pt_closed, pt_composition
    from .polyspec import PolySpec

    rng = case_rng(seed, idx)
    while True:
        roots = random_roots(rng, d)
        spec = PolySpec(Fraction(int(rng.integers(1, 6))), roots)
        if spec.a(m) != 0:
            break
    bad = []
    for sel in combinations(range(1, d + 1), m):
        a = build_alpha(m, spec, sel)
        for s in range(d - m + 2):
            if pt_closed(a, s).value != pt_composition(a, s).value:
                bad.append(f"pt{sel}s{s}")
        res = fixed_point_residuals(a)
        if any(r != 0 for r in res):
            bad.append(f"fp{sel}")
    return _ok(not bad, ";".join(bad) or "0", roots=roots, selections=comb(d, m))


def case_jacobian(d: int, m: int, symbolic: bool, seed: int, idx: int):
    from .jacobian import check_detM_eq_detUV, check_factorization, symbolic_roots, substitution_vanishes

    if symbolic:
        points = [symbolic_roots(d)]
    else:
        points = [random_roots(case_rng(seed, idx * 10 + k), d) for k in range(5)]
    bad = []
    for z in points:
        if not check_detM_eq_detUV(z, m):
            bad.append("detM")
        if not check_factorization(z, m):
            bad.append("factor")
    if not substitution_vanishes(d, m):
        bad.append("substitution")
    detail = {"points": len(points), "symbolic": symbolic}
    if m == 2 and d <= 5:
        worst = _numeric_m2(d, seed, idx)
        detail["fd_relative_error"] = f"{worst:.3e}"
        if not worst < 1e-6:
            bad.append("numeric")
    return _ok(not bad, ";".join(bad) or "0", **detail)


def _numeric_m2(d: int, seed: int, idx: int) -> float:
    """Worst relative gap between the finite-difference det J and factored_det over all alpha."""
    from .attractor import v_set
    from .jacobian import factored_det, jacobian_numeric_m2
    from .polyspec import PolySpec

    specs = [PolySpec.monic([1, 2, 3])] if d == 3 else []
    specs.append(PolySpec.monic(random_roots(case_rng(seed, idx * 10 + 9), d, num=6, den=1)))
    worst = 0.0
    for spec in specs:
        for a in v_set(2, spec):
            _, dj, _ = jacobian_numeric_m2(spec, a)
            exact = float(factored_det(spec, 2, a.selection))
            worst = max(worst, abs(dj - exact) / abs(exact))
    return worst


def case_null_vector(d: int, symbolic: bool, seed: int, idx: int):
    from .lgv import check_null, col_sizes, null_vector, random_block_spec, row_sizes, symbolic_block_spec

    rows, cols = row_sizes(d)[1:], col_sizes(d)
    if symbolic:
        spec = symbolic_block_spec(rows, cols)
    else:
        spec = random_block_spec(rows, cols, case_rng(seed, idx))
    return _ok(check_null(spec, null_vector(spec)), symbolic=symbolic)


def case_vd_paths(d: int, symbolic: bool, seed: int, idx: int):
    from .lgv import build_system_prime, check_vd_paths_lemma
    from .polyspec import CoeffSpec, PolySpec

    spec = CoeffSpec.symbolic(d) if symbolic else PolySpec(Fraction(1), random_roots(case_rng(seed, idx), d))
    spec.require_nonzero(1, 2)
    cols = build_system_prime(spec).col_sizes
    bad = [f"j{j0}k{k}" for j0 in range(1, d) for k in range(cols[j0 - 1]) if not check_vd_paths_lemma(spec, j0, k)]
    return _ok(not bad, ";".join(bad) or "0", symbolic=symbolic)


def _symbolic_root_spec(d: int):
    from .polyspec import PolySpec

    return PolySpec(RatFunc(1), tuple(RatFunc(SparseLaurent.var(f"z{i}")) for i in range(1, d + 1)))


def case_gpoly(d: int, symbolic: bool, seed: int, idx: int):
    from .lgv import all_paths_sum, build_g, check_g_eq_P, elimination_multipliers, g_leading_coefficient
    from .nrs2 import Nrs2System
    from .polyspec import PolySpec

    if symbolic:
        spec = _symbolic_root_spec(d)
    else:
        rng = case_rng(seed, idx)
        while True:
            spec = PolySpec(Fraction(int(rng.integers(1, 6))), random_roots(rng, d))
            if spec.a(1) != 0 and spec.a(2) != 0:
                break
    g, coeffs = build_g(spec)
    ok_deg = len(coeffs) - 1 == comb(d, 2) and coeffs[-1] == g_leading_coefficient(spec)
    ok_p = check_g_eq_P(spec)
    bad = []
    if not ok_deg:
        bad.append("degree")
    if not ok_p:
        bad.append("gP")
    if not symbolic:
        N = len(coeffs)
        if any(coeffs[N - 1 - k] != all_paths_sum(spec, k) for k in range(N)):
            bad.append("allpaths")
        F0, F1 = Nrs2System(spec).as_laurent()
        p0, p1 = elimination_multipliers(spec)
        if p0 * F0 + p1 * F1 != g:
            bad.append("ideal")
    return _ok(not bad, ";".join(bad) or "0", symbolic=symbolic)


def case_graph_identity(d: int, symbolic: bool, seed: int, idx: int):
    from .graphs import check_simple_graph_gen
    from .jacobian import symbolic_roots

    points = [symbolic_roots(d)] if symbolic else [random_roots(case_rng(seed, idx * 10 + k), d) for k in range(3)]
    bad = [f"l{l}" for z in points for l in range(comb(d, 2) + 1) if not check_simple_graph_gen(d, l, z)]
    return _ok(not bad, ";".join(bad) or "0", symbolic=symbolic)


def case_bijection(r: int):
    from .graphs import decode, encode, enumerate_dsg, is_in_B, rho1, rho2

    seen = set()
    bad = 0
    for M in enumerate_dsg(r):
        s = encode(M)
        if s in seen or not is_in_B(s, r) or decode(s) != M or rho1(s, r) != rho2(M):
            bad += 1
        seen.add(s)
    return _ok(bad == 0 and len(seen) == 3 ** comb(r, 2), bad, cases=len(seen))


def case_newton(which: str):
    from . import newton_series as ns

    dsym = SparseLaurent.var("d")
    if which == "bin_sum":
        bad = sum(not ns.check_bin_sum(a, b, l) for a in range(9) for b in range(9) for l in range(9))
        n = 9**3
    elif which == "rec":
        bad = n = 0
        for A in range(7):
            for m in range(1, 4):
                for k in range(1, 4):
                    for xs in product(range(A + 1), repeat=m):
                        if sum(xs) != A:
                            continue
                        for ys in product(range(A + 1), repeat=k):
                            if sum(ys) == A:
                                n += 1
                                bad += not ns.check_rec(xs, ys)
    elif which == "t_su":
        bad = n = 0
        for r in range(1, 4):
            for nu in product(range(4), repeat=r):
                for d in list(range(7)) + [dsym]:
                    n += 1
                    bad += not ns.check_t_su(d, nu)
    elif which == "s_exp":
        s = [SparseLaurent.var(f"s{j}") for j in range(1, 6)]
        bad = sum(not ns.check_s_exp(m, s, dsym) for m in range(6))
        n = 6
    elif which == "s_exp_2":
        x = [SparseLaurent.var(f"x{j}") for j in range(1, 6)]
        y = SparseLaurent.var("y")
        bad = sum(not ns.check_s_exp_2(r, x, y) for r in range(6))
        n = 6
    else:
        raise UnknownSuite(which)
    return _ok(bad == 0, bad, checked=n)


def case_nrs2_fixed(d: int, seed: int, idx: int):
    from .attractor import v_set
    from .nrs2 import Nrs2System
    from .polyspec import PolySpec

    rng = case_rng(seed, idx)
    while True:
        spec = PolySpec(Fraction(int(rng.integers(1, 6))), random_roots(rng, d))
        if spec.a(1) != 0 and spec.a(2) != 0:
            break
    sys = Nrs2System(spec)
    bad = [a.selection for a in v_set(2, spec) if sys.residual(*a.coords) != (0, 0)]
    return _ok(not bad, bad or "0", roots=spec.roots)


def case_nrs2_basins(n_starts: int, seed: int, idx: int):
    from .nrs2 import Nrs2System, iterate, sample_starts
    from .polyspec import PolySpec

    spec = PolySpec.monic([1, 2, 3])
    sys = Nrs2System(spec)
    traces = [iterate(sys, p) for p in sample_starts(n_starts, (-10.0, 10.0), case_rng(seed, idx))]
    conv = [t for t in traces if t.status == "converged"]
    targets = (3.0, 4.0, 5.0)
    good = sum(1 for t in conv if min(abs(t.limit[0] - s) for s in targets) < 1e-8)
    frac = good / len(conv) if conv else 0.0
    statuses = {s: sum(t.status == s for t in traces) for s in ("converged", "diverged", "max-iter", "singular")}
    return _ok(frac >= 0.99, f"{1 - frac:.3e}", statuses=statuses, matched=good)


def case_nrs2_quadratic(seed: int, idx: int):
    from .attractor import v_set
    from .nrs2 import Nrs2System, error_ratios
    from .polyspec import PolySpec

    spec = PolySpec.monic([1, 2, 3])
    sys = Nrs2System(spec)
    ratios = []
    for a in v_set(2, spec):
        x = [complex(c) for c in a.coords]
        ratios.extend(error_ratios(sys, x, (x[0] + 1e-3, x[1]), 3))
    ok = bool(ratios) and all(1e-3 <= r <= 1e3 for r in ratios)
    return _ok(ok, f"{max(ratios):.3e}" if ratios else "none", ratios=ratios)


# ---------------------------------------------------------------------------
# suites

CaseSpec = Tuple[str, Callable, tuple, dict]  # id, function, args, tags


def _suite_identities(cfg: RunConfig) -> List[CaseSpec]:
    return [(f"symmetric/d{d}", case_symmetric, (8, d, cfg.seed, i), {"d": d}) for i, d in enumerate(range(1, MAX_D + 1))]


def _suite_attractors(cfg: RunConfig) -> List[CaseSpec]:
    out = []
    idx = 0
    for d in range(2, MAX_D + 1):
        for m in range(1, min(MAX_M, d - 1) + 1):
            for rep in range(5):
                out.append((f"attractor/d{d}/m{m}/rep{rep}", case_attractor, (d, m, cfg.seed, idx), {"d": d, "m": m}))
                idx += 1
    return out


def _suite_jacobian(cfg: RunConfig) -> List[CaseSpec]:
    out = []
    for i, (d, m, sym) in enumerate([(3, 2, True), (4, 2, True), (4, 3, True), (5, 2, False), (5, 3, False), (6, 2, False)]):
        out.append((f"jacobian/d{d}/m{m}/{'symbolic' if sym else 'rational'}", case_jacobian, (d, m, sym, cfg.seed, i), {"d": d, "m": m}))
    return out


def _suite_gpoly(cfg: RunConfig) -> List[CaseSpec]:
    out: List[CaseSpec] = [("null/d3/symbolic", case_null_vector, (3, True, cfg.seed, 0), {"d": 3})]
    idx = 1
    for d in (4, 5):
        for rep in range(5):
            out.append((f"null/d{d}/rep{rep}", case_null_vector, (d, False, cfg.seed, idx), {"d": d}))
            idx += 1
    for d, sym in ((3, True), (4, True), (5, False)):
        out.append((f"vdpaths/d{d}/{'symbolic' if sym else 'rational'}", case_vd_paths, (d, sym, cfg.seed, idx), {"d": d}))
        idx += 1
    for d, sym in ((3, True), (3, False), (4, False), (5, False)):
        out.append((f"gpoly/d{d}/{'symbolic' if sym else 'rational'}", case_gpoly, (d, sym, cfg.seed, idx), {"d": d}))
        idx += 1
    return out


def _suite_graphs(cfg: RunConfig) -> List[CaseSpec]:
    out: List[CaseSpec] = []
    for i, d in enumerate(range(2, 6)):
        sym = d <= 4
        out.append((f"dsg-identity/d{d}/{'symbolic' if sym else 'rational'}", case_graph_identity, (d, sym, cfg.seed, i), {"d": d}))
    for r in range(1, 6):
        out.append((f"bijection/r{r}", case_bijection, (r,), {"d": r}))
    return out


def _suite_newton(cfg: RunConfig) -> List[CaseSpec]:
    return [(f"newton/{w}", case_newton, (w,), {}) for w in ("bin_sum", "rec", "t_su", "s_exp", "s_exp_2")]


def _suite_nrs2(cfg: RunConfig) -> List[CaseSpec]:
    out: List[CaseSpec] = []
    idx = 0
    for d in range(3, MAX_D + 1):
        for rep in range(5):
            out.append((f"nrs2-fixed/d{d}/rep{rep}", case_nrs2_fixed, (d, cfg.seed, idx), {"d": d, "m": 2}))
            idx += 1
    out.append(("nrs2-basins/roots123", case_nrs2_basins, (1000, cfg.seed, 500), {"d": 3, "m": 2}))
    out.append(("nrs2-quadratic/roots123", case_nrs2_quadratic, (cfg.seed, 501), {"d": 3, "m": 2}))
    return out


SUITES: Dict[str, Callable[[RunConfig], List[CaseSpec]]] = {
    "identities": _suite_identities,
    "attractors": _suite_attractors,
    "jacobian": _suite_jacobian,
    "gpoly": _suite_gpoly,
    "graphs": _suite_graphs,
    "newton-series": _suite_newton,
    "nrs2": _suite_nrs2,
}


def _select(cases: List[CaseSpec], cfg: RunConfig) -> List[CaseSpec]:
    out = []
    for case in cases:
        tags = case[3]
        if cfg.d is not None and tags.get("d") not in (None, cfg.d):
            continue
        if cfg.m is not None and tags.get("m") not in (None, cfg.m):
            continue
        out.append(case)
    return out


def _run_case(fn: Callable, args: tuple):
    t0 = time.perf_counter()
    try:
        passed, residual, detail = fn(*args)
    except Exception as err:  # a crashing case is a failed case, not a crashed run
        passed, residual, detail = False, f"{type(err).__name__}: {err}", {}
    return passed, residual, detail, time.perf_counter() - t0


def run_suite(name: str, config: RunConfig) -> Report:
    config.validate()
    if name == "all":
        specs = [c for key in SUITES for c in SUITES[key](config)]
    elif name in SUITES:
        specs = SUITES[name](config)
    else:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
    specs = _select(specs, config)
    if config.threads > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            futures = [pool.submit(_run_case, fn, args) for _, fn, args, _ in specs]
            results = [f.result() for f in futures]
    else:
        results = [_run_case(fn, args) for _, fn, args, _ in specs]
    report = Report(suite=name, seed=config.seed)
    for (cid, _, args, _), (passed, residual, detail, wall) in zip(specs, results):
        report.cases.append(Case(cid, digest([cid, args]), passed, residual, wall, to_jsonable(detail)))
    return report

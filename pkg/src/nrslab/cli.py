"""Command-line entry point: ``nrslab <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import combinations
from math import comb
from pathlib import Path
from typing import List, Optional

from . import __version__
from .errors import ConfigInvalid, NrsLabError, UnknownSuite
from .harness import (
    SUITES,
    RunConfig,
    case_rng,
    check_bounds,
    emit_report,
    load_config_file,
    resolve_seed,
    run_suite,
    to_jsonable,
)
from .polyspec import PolySpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse already exits 2; keep the message short
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(sub: bool) -> argparse.ArgumentParser:
    # subparsers use SUPPRESS so a flag given before the command is not overwritten
    dflt = argparse.SUPPRESS if sub else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=dflt, help="base seed (default: NRSLAB_SEED or 0)")
    p.add_argument("--out", default=dflt, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default=dflt)
    p.add_argument("--threads", type=int, default=dflt)
    p.add_argument("--config", default=dflt, help="key = value configuration file")
    p.add_argument("--unsafe-large", action="store_true", default=dflt, help="lift the d <= 6, m <= 4 bound")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nrslab", parents=[_common(False)], description="Exact checks for NRS attractors.")
    parser.add_argument("--version", action="version", version=f"nrslab {__version__}")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common(True)

    p = subs.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, help=f"one of {', '.join(list(SUITES) + ['all'])}")
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int)

    p = subs.add_parser("attractors", parents=[common], help="attractor points and PT values")
    p.add_argument("--poly", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--symbolic", action="store_true", help="use indeterminate roots of the same degree")

    p = subs.add_parser("jacobian", parents=[common], help="U, V, det(U+V) and the factored determinant")
    p.add_argument("--poly", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--numeric", action="store_true", help="finite-difference cross-check (m = 2)")

    p = subs.add_parser("gpoly", parents=[common], help="null vector and the elimination polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--emit-paths", metavar="DIR")

    p = subs.add_parser("nrs2", parents=[common], help="Newton iteration on the NRS(2) system")
    p.add_argument("--poly", required=True)
    p.add_argument("--starts", type=int, default=100)
    p.add_argument("--box", default="-10,10")
    p.add_argument("--csv", metavar="FILE", help="write one row per start")
    p.add_argument("--grid", metavar="WxH", help="lattice of real starts instead of random ones")
    p.add_argument("--complex-starts", action="store_true")

    p = subs.add_parser("graphs", parents=[common], help="directed simple graph identities")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--check-identity", action="store_true")
    p.add_argument("--check-bijection", action="store_true")

    p = subs.add_parser("identities", parents=[common], help="binomial and symmetric-function identities")
    p.add_argument("--suite", default="newton-series", choices=("newton-series", "symmetric"))
    return parser


# ---------------------------------------------------------------------------


def _config(args) -> RunConfig:
    file_values = load_config_file(args.config) if getattr(args, "config", None) else {}
    values = dict(file_values)
    for key in ("out", "format", "threads"):
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    if getattr(args, "unsafe_large", None):
        values["unsafe_large"] = True
    for key in ("d", "m"):
        v = getattr(args, key, None)
        if v is not None and args.command == "verify":
            values[key] = v
    values["seed"] = resolve_seed(getattr(args, "seed", None), file_values)
    for key, rng_key in (("d_range", "d_range"), ("m_range", "m_range")):
        if key in values:
            values[rng_key] = tuple(values[key])
    try:
        cfg = RunConfig(**values)
    except TypeError as err:
        raise ConfigInvalid(str(err)) from None
    return cfg.validate()


def _load_poly(path: str, cfg: RunConfig, m: Optional[int] = None) -> PolySpec:
    try:
        spec = PolySpec.load(path)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as err:
        raise ConfigInvalid(f"cannot read polynomial from {path}: {err}") from None
    check_bounds(spec.d, m, cfg.unsafe_large)
    return spec


def _emit(payload: dict, cfg: RunConfig) -> None:
    text = json.dumps(to_jsonable(payload), sort_keys=True, indent=2) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _symbolic_spec(d: int) -> PolySpec:
    from .laurent import SparseLaurent
    from .scalars import RatFunc

    return PolySpec(RatFunc(1), tuple(RatFunc(SparseLaurent.var(f"z{i}")) for i in range(1, d + 1)))


def cmd_verify(args, cfg: RunConfig) -> int:
    report = run_suite(args.suite, cfg)
    text = emit_report(report, cfg.format, cfg.out)
    if not cfg.out:
        sys.stdout.write(text)
    s = report.summary()
    print(f"{report.suite}: {s['passed']}/{s['total']} cases passed", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_attractors(args, cfg: RunConfig) -> int:
    from .attractor import build_alpha, fixed_point_residuals, pt_closed, pt_composition

    spec = _load_poly(args.poly, cfg, args.m)
    if args.symbolic:
        spec = _symbolic_spec(spec.d)
    d, m = spec.d, args.m
    if not 1 <= m <= d - 1:
        raise ConfigInvalid(f"need 1 <= m <= d - 1, got m = {m} for d = {d}")
    spec.require_nonzero(m)
    points = []
    ok = True
    for sel in combinations(range(1, d + 1), m):
        a = build_alpha(m, spec, sel)
        pts = []
        for s in range(d - m + 2):
            closed, composed = pt_closed(a, s).value, pt_composition(a, s).value
            pts.append({"s": s, "closed": closed, "composition": composed, "agree": closed == composed})
            ok &= closed == composed
        res = fixed_point_residuals(a)
        fixed = all(r == 0 for r in res)
        ok &= fixed
        points.append({"selection": list(sel), "coords": list(a.coords), "pt": pts, "fixed_point": fixed})
    _emit({"d": d, "m": m, "symbolic": args.symbolic, "points": points, "passed": ok}, cfg)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_jacobian(args, cfg: RunConfig) -> int:
    from . import jacobian as jac
    from .attractor import v_set
    from .linalg import det

    spec = _load_poly(args.poly, cfg, args.m)
    d, m = spec.d, args.m
    if not 1 <= m <= d - 1:
        raise ConfigInvalid(f"need 1 <= m <= d - 1, got m = {m} for d = {d}")
    roots = jac.symbolic_roots(d) if args.symbolic else list(spec.roots)
    UV = jac.build_UV(roots, m)
    dUV = det(UV)
    vdm = jac.vandermonde_block(roots, m)
    out = {
        "d": d,
        "m": m,
        "symbolic": args.symbolic,
        "U": jac.build_U(roots, m),
        "V": jac.build_V(roots, m),
        "det_UV": dUV,
        "det_M": det(jac.build_M(roots, m)),
        "vandermonde": vdm,
        "factorization_holds": dUV == vdm,
    }
    ok = out["factorization_holds"] and out["det_M"] == dUV
    if not args.symbolic:
        spec.require_nonzero(m)
        out["factored_det"] = {
            ",".join(map(str, sel)): jac.factored_det(spec, m, sel) for sel in combinations(range(1, d + 1), m)
        }
    if args.numeric:
        if m != 2:
            raise ConfigInvalid("--numeric needs m = 2")
        rows = []
        for a in v_set(2, spec):
            J, dj, resid = jac.jacobian_numeric_m2(spec, a)
            exact = jac.factored_det(spec, 2, a.selection)
            rel = abs(dj - float(exact)) / abs(float(exact))
            rows.append({"selection": list(a.selection), "det_numeric": dj, "det_factored": exact,
                         "relative_error": rel, "residual": resid})
            ok &= rel < 1e-6
        out["numeric"] = rows
    out["passed"] = ok
    _emit(out, cfg)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gpoly(args, cfg: RunConfig) -> int:
    from . import lgv

    spec = _load_poly(args.poly, cfg)
    if args.symbolic:
        spec = _symbolic_spec(spec.d)
    d = spec.d
    spec.require_nonzero(1, 2, d)
    sysp = lgv.build_system_prime(spec)
    v = lgv.null_vector(sysp)
    g, coeffs = lgv.build_g(spec)
    ok_null = lgv.check_null(sysp, v)
    ok_p = lgv.check_g_eq_P(spec)
    out = {
        "d": d,
        "symbolic": args.symbolic,
        "null_vector": [list(b) for b in v.blocks],
        "null_vector_holds": ok_null,
        "g": str(g),
        "g_coefficients": coeffs,
        "degree": len(coeffs) - 1,
        "leading_coefficient": lgv.g_leading_coefficient(spec),
        "g_equals_scaled_P": ok_p,
    }
    if args.emit_paths:
        target = Path(args.emit_paths)
        target.mkdir(parents=True, exist_ok=True)
        written = 0
        from .combinatorics import compositions_nn

        for k in range(comb(d, 2) + 1):
            systems = []
            for c in compositions_nn(k, d - 1, max_part=d):
                systems.extend(ps.to_json() for ps in lgv.enumerate_vd(d, c))
            (target / f"vd_d{d}_k{k}.json").write_text(json.dumps(systems, sort_keys=True) + "\n", encoding="utf-8")
            written += len(systems)
        out["paths_written"] = written
    ok = ok_null and ok_p and out["degree"] == comb(d, 2)
    out["passed"] = ok
    _emit(out, cfg)
    return EXIT_OK if ok else EXIT_FAIL


def _parse_box(text: str):
    try:
        lo, hi = (float(s) for s in text.split(","))
    except ValueError:
        raise ConfigInvalid(f"--box must be 'A,B', got {text!r}") from None
    if not lo < hi:
        raise ConfigInvalid("--box needs A < B")
    return lo, hi


def cmd_nrs2(args, cfg: RunConfig) -> int:
    from . import nrs2

    spec = _load_poly(args.poly, cfg, 2)
    sys_ = nrs2.Nrs2System(spec)
    box = _parse_box(args.box)
    if args.grid:
        try:
            w, h = (int(s) for s in args.grid.lower().split("x"))
        except ValueError:
            raise ConfigInvalid(f"--grid must be 'WxH', got {args.grid!r}") from None
        starts = nrs2.grid_starts(w, h, box)
    else:
        if args.starts < 1:
            raise ConfigInvalid("--starts must be positive")
        starts = nrs2.sample_starts(args.starts, box, case_rng(cfg.seed, 0), args.complex_starts)
    traces = [nrs2.iterate(sys_, s) for s in starts]
    if args.csv:
        nrs2.write_csv(traces, args.csv)
    counts = {s: sum(t.status == s for t in traces) for s in ("converged", "diverged", "max-iter", "singular")}
    basins = {}
    for t in traces:
        if t.matched_sum:
            key = f"{t.matched_sum[0]},{t.matched_sum[1]}"
            basins[key] = basins.get(key, 0) + 1
    unmatched = sum(1 for t in traces if t.status == "converged" and not t.matched_sum)
    out = {"d": spec.d, "starts": len(traces), "seed": cfg.seed, "status_counts": counts,
           "basins": basins, "converged_unmatched": unmatched,
           "ambiguous": sum(1 for t in traces if t.ambiguous)}
    _emit(out, cfg)
    return EXIT_OK if unmatched == 0 else EXIT_FAIL


def cmd_graphs(args, cfg: RunConfig) -> int:
    from .harness import case_bijection, case_graph_identity

    check_bounds(args.d, None, cfg.unsafe_large)
    if args.d < 1:
        raise ConfigInvalid("--d must be positive")
    do_id = args.check_identity or not args.check_bijection
    do_bij = args.check_bijection or not args.check_identity
    out = {"d": args.d}
    ok = True
    if do_id:
        if args.d < 2:
            raise ConfigInvalid("the identity check needs d >= 2")
        passed, residual, detail = case_graph_identity(args.d, args.d <= 4, cfg.seed, 0)
        out["identity"] = {"passed": passed, "residual": residual, **detail}
        ok &= passed
    if do_bij:
        passed, residual, detail = case_bijection(args.d)
        out["bijection"] = {"passed": passed, "failures": residual, **detail}
        ok &= passed
    out["passed"] = ok
    _emit(out, cfg)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_identities(args, cfg: RunConfig) -> int:
    args.suite = "identities" if args.suite == "symmetric" else "newton-series"
    return cmd_verify(args, cfg)


COMMANDS = {
    "verify": cmd_verify,
    "attractors": cmd_attractors,
    "jacobian": cmd_jacobian,
    "gpoly": cmd_gpoly,
    "nrs2": cmd_nrs2,
    "graphs": cmd_graphs,
    "identities": cmd_identities,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except (UnknownSuite, ConfigInvalid) as err:
        print(f"nrslab: {err}", file=sys.stderr)
        return EXIT_USAGE
    except NrsLabError as err:
        print(f"nrslab: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

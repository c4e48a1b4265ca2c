"""Command-line front end.

Exit codes: 0 success, 1 input or configuration error, 2 verification failure.
Axis arguments use ``min:max:count`` with inclusive endpoints.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import direct, fileio, oracle, riemann, verification
from .direct import Method, QuadratureSpec, evaluate_grid
from .errors import ShannonPDEError
from .signals import Harmonic
from .wavelet import WaveletComponent

log = logging.getLogger("shannonpde")

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class CliError(Exception):
    pass


def parse_axis(text: str) -> np.ndarray:
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise CliError(f"bad axis {text!r}, expected min:max:count") from None
    if n < 1 or (n > 1 and not hi > lo):
        raise CliError(f"empty axis {text!r}")
    return np.linspace(lo, hi, n)


def parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(x) for x in text.split(":"))
    except ValueError:
        raise CliError(f"bad range {text!r}, expected min:max") from None
    return lo, hi


def parse_signal(text: str):
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind == "harmonic":
        try:
            return Harmonic(float(arg))
        except ValueError:
            raise CliError(f"bad harmonic frequency {arg!r}") from None
    if kind == "csv":
        return fileio.read_signal_csv(arg)
    raise CliError(f"unknown signal {text!r}; use harmonic:OMEGA or csv:PATH")


def _quadrature(args) -> QuadratureSpec:
    try:
        return QuadratureSpec(args.halfwidth, args.nodes_per_unit, args.pv_pairs, args.taper)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _dump_json(obj, path):
    text = json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


class _Outputs:
    """Track files written so far and remove them on failure."""

    def __init__(self):
        self.paths = []

    def add(self, path):
        if path not in (None, "-"):
            self.paths.append(Path(path))
        return path

    def cleanup(self):
        for p in self.paths:
            p.unlink(missing_ok=True)


def _write_field(path, field, inside_column=False):
    if path in (None, "-"):
        sys.stdout.write(fileio.format_field_csv(field, inside_column))
    else:
        fileio.write_field_csv(path, field, inside_column)


def _add_quadrature_args(p):
    d = direct.DEFAULT_QUADRATURE
    p.add_argument("--halfwidth", type=float, default=d.halfwidth_xi, help="truncation half-width in xi")
    p.add_argument("--nodes-per-unit", type=int, default=d.nodes_per_unit_xi, help="quadrature nodes per unit xi")
    p.add_argument("--pv-pairs", type=int, default=d.pv_exclusion_pairs, help="node pairs in the pole zone")
    p.add_argument("--taper", type=float, default=d.taper_fraction,
                   help="outer fraction of the window that tapers smoothly to zero (0 = hard cut)")


def cmd_transform(args) -> int:
    signal = parse_signal(args.signal)
    a = parse_axis(args.a)
    b = parse_axis(args.b)
    q = _quadrature(args)
    field = evaluate_grid(Method.parse(args.method), signal, a, b, q, workers=args.workers)
    if field.errors:
        raise CliError("; ".join(field.errors[:5]))
    out = _Outputs()
    try:
        _write_field(out.add(args.out), field)
        if args.heatmap:
            fileio.write_heatmap_ppm(out.add(args.heatmap), field)
        if args.report:
            _dump_json({"config": _config(args), "shape": list(field.shape)}, out.add(args.report))
    except Exception:
        out.cleanup()
        raise
    return EXIT_OK


def _line_data_from_args(args):
    if args.line_data:
        data = fileio.read_line_data_csv(args.line_data)
        missing = [c.value for c in WaveletComponent if c not in data]
        if missing:
            raise CliError(f"{args.line_data}: no line data for component(s) {missing}")
        return data[WaveletComponent.COMPONENT1], data[WaveletComponent.COMPONENT2]
    if not args.signal:
        raise CliError("propagate needs --signal or --line-data")
    if args.k is None or args.c is None or args.a_range is None:
        raise CliError("line spec needs --k, --c and --a-range")
    lo, hi = parse_range(args.a_range)
    spec = riemann.LineSegmentSpec(args.k, args.c, lo, hi, args.nodes)
    signal = parse_signal(args.signal)
    lds = []
    for c in WaveletComponent:
        if args.source == "analytic":
            if not isinstance(signal, Harmonic):
                raise CliError("analytic line data needs a harmonic signal")
            lds.append(oracle.harmonic_line_data(signal.omega, spec, c))
        else:
            src = riemann.direct_source(c, signal, _quadrature(args), args.fd_step)
            lds.append(riemann.build_line_data(spec, c, src))
    return tuple(lds)


def cmd_propagate(args) -> int:
    ld1, ld2 = _line_data_from_args(args)
    t0 = time.perf_counter()
    field = riemann.fill_triangle(ld1, ld2, args.na, args.nb, simplified=args.simplified)
    elapsed = time.perf_counter() - t0
    if not np.any(field.evaluated):
        raise CliError("no lattice node falls inside the determinacy triangle")
    out = _Outputs()
    try:
        _write_field(out.add(args.out), field, inside_column=True)
        if args.heatmap:
            fileio.write_heatmap_ppm(out.add(args.heatmap), field)
        if args.line_data_out:
            fileio.write_line_data_csv(out.add(args.line_data_out), ld1, ld2)
        if args.check:
            if not args.signal:
                raise CliError("--check needs --signal to run the direct method")
            signal = parse_signal(args.signal)
            ref = evaluate_grid(Method.PV_SPLIT, signal, field.a_values, field.b_values,
                                _quadrature(args), workers=args.workers)
            ref.evaluated &= field.evaluated
            ref.w[~field.evaluated] = np.nan
            max_abs, rms = verification.compare_fields(field, ref)
            report = {
                "config": _config(args),
                "inside_nodes": int(field.evaluated.sum()),
                "max_abs_diff": max_abs,
                "rms_diff": rms,
            }
            if args.timing:
                report["propagation_seconds"] = elapsed
            _dump_json(report, out.add(args.check_report))
    except Exception:
        out.cleanup()
        raise
    return EXIT_OK


def cmd_verify(args) -> int:
    rng = np.random.default_rng(args.seed)
    a_lo, a_hi = parse_range(args.probe_a)
    probes = [(rng.uniform(a_lo, a_hi), rng.uniform(-args.probe_b, args.probe_b))
              for _ in range(args.n_probes)]
    target = (0.5 * (a_lo + a_hi), 0.0)
    h = args.h
    checks = []

    def check(name, value, limit, passed=None):
        ok = value <= limit if passed is None else passed
        checks.append({"name": name, "value": value, "limit": limit, "pass": bool(ok)})

    residuals = {}
    for c in WaveletComponent:
        fam = verification.fixed_target_family(c.R, target)
        r1 = verification.residual_conjugate(fam, probes, h)
        r2 = verification.residual_conjugate(fam, probes, h / 2)
        residuals[f"conjugate_{c.name.lower()}"] = {"h": r1.as_dict(), "h_half": r2.as_dict()}
        check(f"conjugate_residual_{c.name.lower()}", r1.max_abs, args.tol)
        ratio = r1.max_abs / r2.max_abs if r2.max_abs > 0 else float("inf")
        check(f"conjugate_order_{c.name.lower()}", ratio, 3.0, passed=ratio >= 3.0)

        field = oracle.harmonic_field(args.omega, c)
        if args.inject_error:
            clean = field
            field = lambda a, b, f=clean: f(a, b) + args.inject_error * a * b
        try:
            rh = verification.residual_hyperbolic(field, c.R, probes, h)
        except ShannonPDEError as exc:
            raise CliError(f"harmonic field: {exc}") from None
        residuals[f"harmonic_{c.name.lower()}"] = rh.as_dict()
        check(f"harmonic_pde_residual_{c.name.lower()}", rh.max_abs, 1e-10)

    boundary = {}
    for c in WaveletComponent:
        bc = verification.boundary_checks(c.R, target, np.linspace(a_lo, a_hi, 17),
                                          np.linspace(-args.probe_b, args.probe_b, 17))
        boundary[c.name.lower()] = bc
        check(f"boundary_b0_{c.name.lower()}", bc["on_b0_max_dev"], 0.0)
        check(f"boundary_a0_{c.name.lower()}", bc["on_a0_max_dev"], 0.0)
        check(f"line_constant_{c.name.lower()}", bc["on_line_k2_max_dev"], 1e-12)

    q = _quadrature(args)
    ops = verification.op_count_compare((args.grid, args.grid), q, args.ld_nodes)
    check("propagation_cheaper", ops.propagation_ops, ops.direct_ops, passed=ops.propagation_cheaper)

    report = {
        "config": _config(args),
        "residuals": residuals,
        "boundary_checks": boundary,
        "op_counts": ops.as_dict(),
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }
    _dump_json(report, args.report)
    failed = [c["name"] for c in checks if not c["pass"]]
    if failed:
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="shannonpde",
        description="Complex Shannon wavelet transform by direct quadrature and Riemann propagation.",
        epilog="Axes use min:max:count with inclusive endpoints.",
    )
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="evaluate the transform on an (a, b) grid")
    p.add_argument("--signal", "--input", dest="signal", required=True,
                   help="harmonic:OMEGA or csv:PATH (columns t,re,im)")
    p.add_argument("--method", default="pv-split", choices=[m.value for m in Method])
    p.add_argument("--a", required=True, help="scale axis min:max:count")
    p.add_argument("--b", required=True, help="shift axis min:max:count")
    p.add_argument("--out", default="-", help="field CSV (default stdout)")
    p.add_argument("--heatmap", help="PPM heatmap of |w|")
    p.add_argument("--report", help="JSON file echoing the configuration")
    p.add_argument("--workers", type=int, default=1)
    _add_quadrature_args(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("propagate", help="fill the determinacy triangle from line data")
    p.add_argument("--signal", help="harmonic:OMEGA or csv:PATH")
    p.add_argument("--line-data", help="line-data CSV written by --line-data-out")
    p.add_argument("--source", choices=["analytic", "direct"], default="analytic",
                   help="closed forms (harmonic only) or direct quadrature for line data")
    p.add_argument("--k", type=float, help="slope of the line b = c - k*a")
    p.add_argument("--c", type=float, help="intercept of the line")
    p.add_argument("--a-range", help="segment scales min:max")
    p.add_argument("--nodes", type=int, default=201, help="line-data nodes")
    p.add_argument("--na", type=int, default=16)
    p.add_argument("--nb", type=int, default=16)
    p.add_argument("--simplified", action="store_true",
                   help="use the k = 2n formula (fills the intercept row only)")
    p.add_argument("--fd-step", type=float, default=1e-3, help="step of the b-derivative difference")
    p.add_argument("--out", default="-", help="triangle CSV (default stdout)")
    p.add_argument("--heatmap")
    p.add_argument("--line-data-out")
    p.add_argument("--check", action="store_true", help="compare with the direct pv-split method")
    p.add_argument("--check-report", default="-", help="JSON comparison report (default stdout)")
    p.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
    p.add_argument("--workers", type=int, default=1)
    _add_quadrature_args(p)
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("verify", help="residual, boundary and cost-model checks")
    p.add_argument("--h", type=float, default=1e-3, help="finite-difference step")
    p.add_argument("--tol", type=float, default=1e-4, help="conjugate residual tolerance")
    p.add_argument("--probe-a", default="2:4", help="probe scales min:max")
    p.add_argument("--probe-b", type=float, default=0.5, help="probe shifts in [-x, x]")
    p.add_argument("--n-probes", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--omega", type=float, default=-2 * np.pi, help="tone for the closed-form PDE check")
    p.add_argument("--inject-error", type=float, default=0.0,
                   help="add x*a*b to the closed-form field (sabotage test)")
    p.add_argument("--grid", type=int, default=64, help="targets per axis for the cost model")
    p.add_argument("--ld-nodes", type=int, default=201)
    p.add_argument("--report", default="-", help="JSON report (default stdout)")
    _add_quadrature_args(p)
    p.set_defaults(func=cmd_verify)
    return ap


# options whose values may start with "-" (negative axis bounds)
_DASH_VALUE_OPTIONS = {"--a", "--b", "--signal", "--input", "--a-range", "--probe-a"}


def _join_dash_values(argv):
    out, it = [], iter(argv)
    for tok in it:
        if tok in _DASH_VALUE_OPTIONS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    ap = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = ap.parse_args(_join_dash_values(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (CliError, ShannonPDEError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

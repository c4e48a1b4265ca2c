"""Finite-difference residuals, field comparisons and the operation-count model."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .direct import QuadratureSpec, TransformField
from .errors import ShapeError
from .riemann import RiemannKernel, kernel_value


@dataclass(frozen=True)
class ResidualReport:
    max_abs: float
    mean_abs: float
    h: float
    n_points: int

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class OpCountReport:
    direct_ops: int
    propagation_ops: int
    targets: int

    @property
    def propagation_cheaper(self) -> bool:
        return self.propagation_ops < self.direct_ops

    def as_dict(self):
        d = asdict(self)
        d["propagation_cheaper"] = self.propagation_cheaper
        return d


def _report(values, h) -> ResidualReport:
    r = np.abs(np.asarray(values, dtype=complex))
    return ResidualReport(float(r.max()), float(r.mean()), float(h), int(r.size))


def _check_probes(probes, h):
    if not h > 0:
        raise ValueError("step h must be positive")
    probes = [(float(p[0]), float(p[1])) for p in probes]
    if not probes:
        raise ValueError("no probe points")
    for a, _ in probes:
        if a <= h:
            raise ValueError(f"probe scale a={a} must exceed the step h={h}")
    return probes


def _mixed(u, a, b, h):
    return (u(a + h, b + h) - u(a + h, b - h) - u(a - h, b + h) + u(a - h, b - h)) / (4.0 * h * h)


def residual_hyperbolic(field_eval, R: complex, probes, h: float) -> ResidualReport:
    """Residual of ``u_ab + (R/a) u_a`` by central differences.

    ``field_eval(a, b)`` returns the field value.  The mixed derivative uses
    the four-point cross stencil, ``u_a`` the two-point central difference.
    """
    probes = _check_probes(probes, h)
    res = []
    for a, b in probes:
        u_a = (field_eval(a + h, b) - field_eval(a - h, b)) / (2.0 * h)
        res.append(_mixed(field_eval, a, b, h) + R / a * u_a)
    return _report(res, h)


def residual_conjugate(kr_family, probes, h: float, form: str = "adjoint") -> ResidualReport:
    """Residual of the equation conjugate to ``u_ab + (R/a) u_a = 0``.

    ``kr_family(probe)`` returns the :class:`RiemannKernel` to test at that
    probe.  ``form="adjoint"`` checks the formal adjoint
    ``v_ab - d/da((R/a) v)``; ``form="printed"`` checks
    ``v_ab - (R/a) v_a``, which differs from it by ``R v / a^2``.
    """
    if form not in ("adjoint", "printed"):
        raise ValueError(f"unknown form {form!r}")
    probes = _check_probes(probes, h)
    res = []
    for a, b in probes:
        kr = kr_family((a, b))
        R = kr.R

        def v(x, y, kr=kr):
            return kernel_value(kr, (x, y))

        mixed = _mixed(v, a, b, h)
        if form == "adjoint":
            drift = (R / (a + h) * v(a + h, b) - R / (a - h) * v(a - h, b)) / (2.0 * h)
        else:
            drift = R / a * (v(a + h, b) - v(a - h, b)) / (2.0 * h)
        res.append(mixed - drift)
    return _report(res, h)


def fixed_target_family(R: complex, target):
    """Kernel family that always returns the kernel for one target."""
    kr = RiemannKernel(R, target)
    return lambda probe: kr


def boundary_checks(R: complex, target, a_values, b_values) -> dict:
    """Exact checks of the Riemann function on the target's characteristics.

    Returns the maximum deviation on ``b = b0`` (should be one), on
    ``a = a0`` (should be ``exp(R (b - b0)/a0)``) and, for the line through
    the target with slope ``k = 2``, from the constant ``exp(-2R)``.
    """
    kr = RiemannKernel(R, target)
    a0, b0 = kr.target
    a = np.asarray(a_values, dtype=float)
    b = np.asarray(b_values, dtype=float)
    on_b0 = np.abs(kernel_value(kr, (a, np.full(a.shape, b0))) - 1.0)
    on_a0 = np.abs(
        kernel_value(kr, (np.full(b.shape, a0), b)) - np.exp(R * (b - b0) / a0)
    )
    line = np.abs(kernel_value(kr, (a, b0 - 2.0 * a)) - np.exp(-2.0 * R))
    return {
        "on_b0_max_dev": float(on_b0.max()),
        "on_a0_max_dev": float(on_a0.max()),
        "on_line_k2_max_dev": float(line.max()),
    }


def compare_fields(f: TransformField, g: TransformField) -> tuple[float, float]:
    """Max and RMS of ``|f.w - g.w|`` over nodes evaluated in both fields."""
    if f.w.shape != g.w.shape:
        raise ShapeError(f"field shapes differ: {f.w.shape} vs {g.w.shape}")
    if not (np.allclose(f.a_values, g.a_values, rtol=1e-12, atol=0)
            and np.allclose(f.b_values, g.b_values, rtol=1e-12, atol=1e-15)):
        raise ShapeError("field axes differ")
    both = f.evaluated & g.evaluated & np.isfinite(f.w) & np.isfinite(g.w)
    if not np.any(both):
        raise ShapeError("no node is evaluated in both fields")
    d = np.abs(f.w[both] - g.w[both])
    return float(d.max()), float(np.sqrt(np.mean(d**2)))


def op_count_compare(grid_size, q: QuadratureSpec, ld_nodes: int) -> OpCountReport:
    """Node-count cost model of a full grid fill by both routes.

    Direct filling costs one quadrature (``q.nodes_per_point`` signal
    evaluations) per target.  Propagation costs three quadratures per line
    node (``u``, ``u_a``, ``u_b``) plus at most ``ld_nodes`` path nodes per
    target.
    """
    if np.ndim(grid_size) == 0:
        targets = int(grid_size)
    else:
        targets = int(np.prod([int(s) for s in grid_size]))
    if targets <= 0 or ld_nodes <= 0:
        raise ValueError("sizes must be positive")
    per_point = q.nodes_per_point
    direct = targets * per_point
    propagation = 3 * ld_nodes * per_point + targets * ld_nodes
    return OpCountReport(int(direct), int(propagation), targets)

"""Riemann-method propagation of component transforms off a sloped line.

Each component ``u`` solves ``u_ab + (R/a) u_a = 0`` on the scale-shift plane,
with characteristics ``a = const`` and ``b = const``.  Given ``u``, ``u_a`` and
``u_b`` on the segment ``b = c - k*a``, the value at a target ``M = (a0, b0)``
above the segment follows from the Riemann function

    v(a, b; a0, b0) = exp(R * (b - b0) / a)

as

    u(M) = [(uv)_P + (uv)_Q] / 2
           + 1/2 * int_QP (v u_a - u v_a) da - (v u_b - u v_b + 2 R/a u v) db

where ``P = (a0, c - k*a0)`` and ``Q = ((c - b0)/k, b0)`` are the feet of the
two characteristics through ``M``.  The path is parameterized by ``a`` with
``db = -k da`` and integrated by the composite trapezoid rule on the line
data lattice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .direct import TransformField
from .errors import (
    InconsistentLineDataError,
    InvalidScaleError,
    OutOfDeterminacyError,
    ShannonPDEError,
    SimplificationInapplicableError,
)
from .signals import ScaleShiftPoint, as_point
from .wavelet import WaveletComponent

# relative tolerance (of the segment length) for snapping to nodes or the line
_SNAP = 1e-12


@dataclass(frozen=True)
class LineSegmentSpec:
    """Segment of ``b = intercept_c - k*a`` for ``a_min <= a <= a_max``.

    ``a_min = 0`` is accepted so that a target on the intercept row can be
    reached; every other use needs ``a_min > 0``.
    """

    k: float
    intercept_c: float
    a_min: float
    a_max: float
    n_nodes: int

    def __post_init__(self):
        if not (np.isfinite(self.k) and self.k > 0):
            raise ValueError(f"slope k must be positive, got {self.k}")
        if not np.isfinite(self.intercept_c):
            raise ValueError("intercept must be finite")
        if not (np.isfinite(self.a_min) and self.a_min >= 0):
            raise InvalidScaleError(f"a_min must be non-negative, got {self.a_min}")
        if not (np.isfinite(self.a_max) and self.a_max > self.a_min):
            raise ValueError("a_max must exceed a_min")
        if int(self.n_nodes) != self.n_nodes or self.n_nodes < 3:
            raise ValueError("n_nodes must be an integer >= 3")

    @property
    def spacing(self) -> float:
        return (self.a_max - self.a_min) / (self.n_nodes - 1)

    def nodes(self) -> np.ndarray:
        return np.linspace(self.a_min, self.a_max, int(self.n_nodes))

    def line_b(self, a):
        return self.intercept_c - self.k * np.asarray(a, dtype=float)


@dataclass(frozen=True, eq=False)
class LineData:
    """Values of ``u``, ``u_a`` and ``u_b`` at the segment nodes."""

    spec: LineSegmentSpec
    component: WaveletComponent
    u: np.ndarray
    u_a: np.ndarray
    u_b: np.ndarray

    def __post_init__(self):
        n = int(self.spec.n_nodes)
        for name in ("u", "u_a", "u_b"):
            arr = np.array(getattr(self, name), dtype=complex).ravel()
            if arr.size != n:
                raise InconsistentLineDataError(f"{name} has {arr.size} values, expected {n}")
            if not np.all(np.isfinite(arr)):
                raise InconsistentLineDataError(f"{name} contains NaN or Inf")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "component", WaveletComponent.parse(self.component))

    @property
    def a(self) -> np.ndarray:
        return self.spec.nodes()

    @property
    def b(self) -> np.ndarray:
        return self.spec.line_b(self.a)

    def replace(self, **changes) -> "LineData":
        kw = dict(spec=self.spec, component=self.component, u=self.u, u_a=self.u_a, u_b=self.u_b)
        kw.update(changes)
        return LineData(**kw)


@dataclass(frozen=True)
class DeterminacyTriangle:
    """Right triangle fixed by the segment and the characteristics
    ``a = a_max`` and ``b = intercept_c - k*a_min``."""

    spec: LineSegmentSpec

    @property
    def vertices(self):
        s = self.spec
        top = s.intercept_c - s.k * s.a_min
        return (
            (s.a_min, top),
            (s.a_max, s.intercept_c - s.k * s.a_max),
            (s.a_max, top),
        )

    def contains(self, p, tol: float = 0.0) -> bool:
        a0, b0 = float(p[0]), float(p[1])
        s = self.spec
        return (
            s.a_min - tol <= a0 <= s.a_max + tol
            and s.intercept_c - s.k * a0 - tol <= b0 <= s.intercept_c - s.k * s.a_min + tol
        )


def triangle_of(spec: LineSegmentSpec) -> DeterminacyTriangle:
    return DeterminacyTriangle(spec)


@dataclass(frozen=True)
class RiemannKernel:
    R: complex
    target: ScaleShiftPoint

    def __post_init__(self):
        object.__setattr__(self, "target", as_point(self.target))


def kernel_value(kr: RiemannKernel, p):
    """``exp(R * (b - b0) / a)``.  ``p`` may hold arrays of ``a`` and ``b``."""
    a, b = _plane_args(p)
    return np.exp(kr.R * (b - kr.target.b) / a)


def kernel_partials(kr: RiemannKernel, p):
    """``(dv/da, dv/db) = (-R (b - b0)/a^2 v, R/a v)``."""
    a, b = _plane_args(p)
    v = np.exp(kr.R * (b - kr.target.b) / a)
    return -kr.R * (b - kr.target.b) / a**2 * v, kr.R / a * v


def _plane_args(p):
    a = np.asarray(p[0], dtype=float)
    b = np.asarray(p[1], dtype=float)
    if np.any(~np.isfinite(a)) or np.any(a <= 0):
        raise InvalidScaleError("kernel needs a > 0")
    if a.ndim == 0 and b.ndim == 0:
        return float(a), float(b)
    return a, b


def build_line_data(spec: LineSegmentSpec, c: WaveletComponent, source) -> LineData:
    """Sample ``source(a, b) -> (u, u_a, u_b)`` at the segment nodes."""
    c = WaveletComponent.parse(c)
    a = spec.nodes()
    b = spec.line_b(a)
    vals = np.empty((3, a.size), dtype=complex)
    for i, (ai, bi) in enumerate(zip(a, b)):
        try:
            vals[:, i] = source(ai, bi)
        except ShannonPDEError as exc:
            raise type(exc)(f"line node {i} (a={ai:.9g}, b={bi:.9g}): {exc}") from exc
    return LineData(spec, c, vals[0], vals[1], vals[2])


def direct_source(c: WaveletComponent, signal, q=None, h: float = 1e-3):
    """Line-data callback backed by the direct quadratures."""
    from .direct import (
        DEFAULT_QUADRATURE,
        cwt_component_pv,
        partial_a_component,
        partial_b_component,
    )

    q = DEFAULT_QUADRATURE if q is None else q

    def source(a, b):
        p = ScaleShiftPoint(a, b)
        return (
            cwt_component_pv(c, signal, p, q),
            partial_a_component(c, signal, p, q),
            partial_b_component(c, signal, p, q, h),
        )

    return source


def _interp(a_nodes, values, x):
    """Linear interpolation that returns node values untouched on a node."""
    j = int(np.searchsorted(a_nodes, x))
    if j < a_nodes.size and a_nodes[j] == x:
        return values[j]
    j = min(max(j, 1), a_nodes.size - 1)
    t = (x - a_nodes[j - 1]) / (a_nodes[j] - a_nodes[j - 1])
    return (1.0 - t) * values[j - 1] + t * values[j]


def _path(ld: LineData, target):
    """Check the target and return the path geometry.

    Returns ``(a0, b0, a_q, on_line)`` with coordinates snapped to nodes or
    to the line when they agree to rounding.
    """
    s = ld.spec
    a0, b0 = float(target[0]), float(target[1])
    if not (np.isfinite(a0) and np.isfinite(b0)) or a0 <= 0:
        raise InvalidScaleError(f"target scale must be positive, got a0={a0}")
    span = s.a_max - s.a_min
    tol = _SNAP * max(span, abs(s.a_max))
    nodes = s.nodes()

    def snap(x):
        j = int(np.argmin(np.abs(nodes - x)))
        return nodes[j] if abs(nodes[j] - x) <= tol else x

    a0 = snap(a0)
    a_q = snap((s.intercept_c - b0) / s.k)
    if a_q < s.a_min or a0 > s.a_max:
        raise OutOfDeterminacyError(
            f"target ({a0:.9g}, {b0:.9g}) outside the determinacy triangle: "
            f"needs line data on [{a_q:.9g}, {a0:.9g}], have [{s.a_min:.9g}, {s.a_max:.9g}]"
        )
    if a_q > a0 + tol:
        raise OutOfDeterminacyError(
            f"target ({a0:.9g}, {b0:.9g}) lies below the initial line"
        )
    on_line = abs(a_q - a0) <= tol
    return a0, b0, min(a_q, a0), on_line


def _path_nodes(ld: LineData, a_q: float, a0: float):
    a = ld.a
    inner = (a > a_q) & (a < a0)
    idx = np.nonzero(inner)[0]
    pa = np.concatenate([[a_q], a[idx], [a0]])
    pu = np.concatenate([[_interp(a, ld.u, a_q)], ld.u[idx], [_interp(a, ld.u, a0)]])
    pua = np.concatenate([[_interp(a, ld.u_a, a_q)], ld.u_a[idx], [_interp(a, ld.u_a, a0)]])
    pub = np.concatenate([[_interp(a, ld.u_b, a_q)], ld.u_b[idx], [_interp(a, ld.u_b, a0)]])
    return pa, pu, pua, pub


def _trapezoid(x, y):
    return np.sum(0.5 * (y[1:] + y[:-1]) * np.diff(x))


def _on_intercept(ld: LineData, b0: float) -> bool:
    s = ld.spec
    return abs(b0 - s.intercept_c) <= _SNAP * max(1.0, abs(s.intercept_c))


def propagate_general(ld: LineData, target) -> complex:
    """Value of the component transform at ``target`` from line data.

    A path node at ``a = 0`` only occurs for a target on the intercept row;
    there the kernel is taken along the line, where it equals
    ``exp(-R*k)``, and the singular terms of the integrand cancel.  This is
    only consistent when ``exp(-R*k) = 1``.
    """
    a0, b0, a_q, on_line = _path(ld, target)
    if on_line:
        return complex(_interp(ld.a, ld.u, a0))
    s = ld.spec
    R = ld.component.R
    pa, pu, pua, pub = _path_nodes(ld, a_q, a0)
    pb = s.line_b(pa)
    kr = RiemannKernel(R, ScaleShiftPoint(a0, b0))

    integrand = np.empty(pa.size, dtype=complex)
    v_all = np.empty(pa.size, dtype=complex)
    pos = pa > 0
    v = kernel_value(kr, (pa[pos], pb[pos]))
    v_a, v_b = kernel_partials(kr, (pa[pos], pb[pos]))
    u, u_a, u_b, ap = pu[pos], pua[pos], pub[pos], pa[pos]
    # db = -k da along the segment
    integrand[pos] = (v * u_a - u * v_a) + s.k * (v * u_b - u * v_b + 2.0 * R / ap * u * v)
    v_all[pos] = v
    if not np.all(pos):
        v_line = np.exp(-R * s.k)
        if abs(v_line - 1.0) > 1e-9:
            raise OutOfDeterminacyError(
                "path reaches a = 0 where the Riemann function is discontinuous "
                f"(exp(-R k) = {v_line:.6g}); use k = 2n"
            )
        zero = ~pos
        integrand[zero] = pua[zero] + s.k * pub[zero]
        v_all[zero] = 1.0
    ends = 0.5 * (pu[-1] * v_all[-1] + pu[0] * v_all[0])
    return complex(ends + 0.5 * _trapezoid(pa, integrand))


def propagate_simplified(ld: LineData, target) -> complex:
    """Propagation for even integer slopes and a target on the intercept row.

    With ``k = 2n`` and ``b0 = intercept_c`` the Riemann function equals one
    on the whole path and the representation reduces to

        u(M) = (u_P + u_Q)/2 + 1/2 int_QP (u_a - 2Rn/a u) da - (u_b + R/a u) db
    """
    s = ld.spec
    n = s.k / 2.0
    if abs(n - round(n)) > 1e-12 or round(n) < 1:
        raise SimplificationInapplicableError(f"slope k={s.k} is not an even positive integer")
    n = int(round(n))
    b0 = float(target[1])
    if not _on_intercept(ld, b0):
        raise SimplificationInapplicableError(
            f"target ordinate b0={b0} differs from the line intercept {s.intercept_c}; "
            "the Riemann function is not constant on the path"
        )
    a0, b0, a_q, on_line = _path(ld, (target[0], s.intercept_c))
    if on_line:
        return complex(_interp(ld.a, ld.u, a0))
    R = ld.component.R
    pa, pu, pua, pub = _path_nodes(ld, a_q, a0)
    integrand = np.empty(pa.size, dtype=complex)
    pos = pa > 0
    ap = pa[pos]
    integrand[pos] = (pua[pos] - 2.0 * R * n / ap * pu[pos]) + s.k * (pub[pos] + R / ap * pu[pos])
    # the 1/a terms cancel exactly for k = 2n; a = 0 keeps the regular part
    integrand[~pos] = pua[~pos] + s.k * pub[~pos]
    return complex(0.5 * (pu[-1] + pu[0]) + 0.5 * _trapezoid(pa, integrand))


def fill_triangle(ld1: LineData, ld2: LineData, na: int, nb: int, simplified: bool = False) -> TransformField:
    """Propagate both components onto a lattice over the triangle's bounding box.

    Nodes outside the triangle are NaN with ``evaluated`` false.  With
    ``simplified`` only the intercept row can be filled.
    """
    if ld1.spec != ld2.spec:
        raise InconsistentLineDataError("line data of the two components use different segments")
    if ld1.component is not WaveletComponent.COMPONENT1 or ld2.component is not WaveletComponent.COMPONENT2:
        raise InconsistentLineDataError("expected component 1 and component 2 line data")
    if na < 2 or nb < 2:
        raise ValueError("need at least two nodes per axis")
    s = ld1.spec
    (a_lo, b_hi), (a_hi, b_lo), _ = triangle_of(s).vertices
    a_axis = np.linspace(a_lo, a_hi, na)
    b_axis = np.linspace(b_lo, b_hi, nb)
    w1 = np.full((na, nb), np.nan + 0j)
    w2 = np.full((na, nb), np.nan + 0j)
    tri = triangle_of(s)
    tol = _SNAP * max(1.0, abs(b_hi - b_lo), abs(a_hi))
    prop = propagate_simplified if simplified else propagate_general
    for i, a0 in enumerate(a_axis):
        if a0 <= 0:
            continue
        for j, b0 in enumerate(b_axis):
            if not tri.contains((a0, b0), tol):
                continue
            if simplified and not _on_intercept(ld1, b0):
                continue
            w1[i, j] = prop(ld1, (a0, b0))
            w2[i, j] = prop(ld2, (a0, b0))
    return TransformField(a_axis, b_axis, w1 - w2, w1=w1, w2=w2)

"""Direct evaluation of the transform and its split components.

Three routes are provided:

* full-wavelet quadrature in ``xi = (t - b)/a`` (regular integrand),
* principal-value quadrature of each singular component, pairing nodes
  symmetrically about the pole so the odd singular part cancels,
* an FFT multiplier for sampled signals that uses the box spectrum of the
  wavelet.

All time-domain integrals are truncated to ``|xi| <= halfwidth_xi`` and
multiplied by a smooth window that is flat on the inner part of the range.
The window makes the non-decaying a-derivative integrand summable and keeps
the truncation error a slowly varying function of the scale.
"""

from __future__ import annotations

import enum
import functools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InsufficientSupportError,
    InvalidScaleError,
    ShannonPDEError,
    ShapeError,
    UnsupportedInputError,
)
from .signals import Harmonic, Sampled, as_point
from .wavelet import WaveletComponent, eval_psi, spectrum_band

# prefactor of both component integrals, -1j/(2*pi**2)
PV_PREFACTOR = -1j / (2.0 * np.pi**2)

# max number of shift values evaluated in one vectorized block
_BLOCK = 32


@dataclass(frozen=True)
class QuadratureSpec:
    """Truncation and node density for the time-domain integrals.

    ``pv_exclusion_pairs`` is the number of midpoint pairs straddling the
    pole inside ``|xi| < pv_exclusion_pairs * step`` (see :func:`pole_zone`).
    The pairing is the same there as elsewhere; the value only sizes the zone.
    ``taper_fraction`` is the outer share of the half-width over which the
    window falls smoothly from one to zero; ``0`` gives a hard truncation.
    """

    halfwidth_xi: float = 400.0
    nodes_per_unit_xi: int = 64
    pv_exclusion_pairs: int = 1
    taper_fraction: float = 0.5

    def __post_init__(self):
        if not self.halfwidth_xi > 0:
            raise ValueError("halfwidth_xi must be positive")
        if int(self.nodes_per_unit_xi) != self.nodes_per_unit_xi or self.nodes_per_unit_xi < 2:
            raise ValueError("nodes_per_unit_xi must be an integer >= 2")
        if int(self.pv_exclusion_pairs) != self.pv_exclusion_pairs or self.pv_exclusion_pairs < 1:
            raise ValueError("pv_exclusion_pairs must be a positive integer")
        if not 0.0 <= self.taper_fraction < 1.0:
            raise ValueError("taper_fraction must lie in [0, 1)")
        if self.pv_exclusion_pairs >= self.half_nodes:
            raise ValueError("pv_exclusion_pairs exceeds the number of node pairs")

    @property
    def step(self) -> float:
        return 1.0 / self.nodes_per_unit_xi

    @property
    def half_nodes(self) -> int:
        return int(round(self.halfwidth_xi * self.nodes_per_unit_xi))

    @property
    def nodes_per_point(self) -> int:
        """Signal evaluations needed for one component at one point."""
        return 2 * self.half_nodes


DEFAULT_QUADRATURE = QuadratureSpec()


def _smoothstep(x):
    # C-infinity step: 0 for x <= 0, 1 for x >= 1
    x = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        f0 = np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)
        f1 = np.where(x < 1, np.exp(-1.0 / np.where(x < 1, 1.0 - x, 1.0)), 0.0)
    return f0 / (f0 + f1)


def window(xi, q: QuadratureSpec):
    """Smooth truncation window on ``|xi| <= halfwidth_xi``."""
    r = np.abs(np.asarray(xi, dtype=float))
    H = q.halfwidth_xi
    if q.taper_fraction == 0.0:
        return (r <= H).astype(float)
    start = (1.0 - q.taper_fraction) * H
    return 1.0 - _smoothstep((r - start) / (H - start))


@functools.lru_cache(maxsize=16)
def _full_nodes(q: QuadratureSpec):
    n = q.half_nodes
    xi = np.arange(-n, n + 1) * q.step
    w = np.full(xi.size, q.step)
    w[0] *= 0.5
    w[-1] *= 0.5
    w = w * window(xi, q)
    return xi, w


@functools.lru_cache(maxsize=16)
def _pv_nodes(q: QuadratureSpec):
    """Positive half of the symmetric midpoint node set for the principal value.

    Pairs sit at ``+/-(j + 1/2) * step``.  The paired integrand is even and
    smooth, so the midpoint sum carries no boundary error at the pole.
    """
    s = (np.arange(q.half_nodes) + 0.5) * q.step
    w = np.full(s.size, q.step) * window(s, q)
    return s, w


def pole_zone(q: QuadratureSpec) -> np.ndarray:
    """Offsets ``s`` of the pairs ``+/-s`` nearest to the pole."""
    s, _ = _pv_nodes(q)
    return s[: q.pv_exclusion_pairs].copy()


def _check_support(signal, a: float, b, q: QuadratureSpec):
    if isinstance(signal, Sampled):
        lo, hi = signal.support
        b = np.atleast_1d(b)
        half = a * q.halfwidth_xi
        bad = (b + half < lo) | (b - half > hi)
        if np.any(bad):
            raise InsufficientSupportError(
                f"window around b={b[bad][0]:.6g} (a={a:.6g}) misses the "
                f"sample range [{lo:.6g}, {hi:.6g}]"
            )
    elif not isinstance(signal, Harmonic) and not callable(signal):
        raise UnsupportedInputError(f"cannot evaluate signal of type {type(signal).__name__}")


def _blocks(b):
    for i in range(0, b.size, _BLOCK):
        yield slice(i, i + _BLOCK)


def _direct_row(signal, a, b, q):
    xi, w = _full_nodes(q)
    kern = np.conj(eval_psi(xi)) * w
    out = np.empty(b.size, dtype=complex)
    for sl in _blocks(b):
        f = signal(b[sl, None] + a * xi[None, :])
        out[sl] = f @ kern
    return out / np.pi


def _pv_row(c: WaveletComponent, signal, a, b, q):
    s, w = _pv_nodes(q)
    phase = np.exp(1j * c.modulation * s)
    kp = phase * w / s
    km = np.conj(phase) * w / s
    out = np.empty(b.size, dtype=complex)
    for sl in _blocks(b):
        fp = signal(b[sl, None] + a * s[None, :])
        fm = signal(b[sl, None] - a * s[None, :])
        out[sl] = fp @ kp - fm @ km
    return PV_PREFACTOR * out


def _partial_a_row(c: WaveletComponent, signal, a, b, q):
    xi, w = _full_nodes(q)
    kern = np.exp(1j * c.modulation * xi) * w
    out = np.empty(b.size, dtype=complex)
    for sl in _blocks(b):
        f = signal(b[sl, None] + a * xi[None, :])
        out[sl] = f @ kern
    return -c.modulation / (2.0 * np.pi**2 * a) * out


def cwt_direct(signal, p, q: QuadratureSpec = DEFAULT_QUADRATURE) -> complex:
    """Transform at one point using the full (regular) wavelet."""
    p = as_point(p)
    _check_support(signal, p.a, p.b, q)
    return complex(_direct_row(signal, p.a, np.array([p.b]), q)[0])


def cwt_component_pv(c: WaveletComponent, signal, p, q: QuadratureSpec = DEFAULT_QUADRATURE) -> complex:
    """Principal-value transform with one singular component.

    Evaluates ``-1j/(2 pi^2) PV int f(t) exp(1j*M*(t-b)/a) / (t-b) dt`` where
    ``M`` is the component modulation.
    """
    p = as_point(p)
    _check_support(signal, p.a, p.b, q)
    return complex(_pv_row(c, signal, p.a, np.array([p.b]), q)[0])


def partial_a_component(c: WaveletComponent, signal, p, q: QuadratureSpec = DEFAULT_QUADRATURE) -> complex:
    """Scale derivative of :func:`cwt_component_pv`, from its regular integral.

    ``-K/(2*pi*a**2) * int f(t) exp(1j*M*(t-b)/a) dt`` with ``M = K*pi``.
    """
    p = as_point(p)
    _check_support(signal, p.a, p.b, q)
    return complex(_partial_a_row(c, signal, p.a, np.array([p.b]), q)[0])


def partial_b_component(
    c: WaveletComponent, signal, p, q: QuadratureSpec = DEFAULT_QUADRATURE, h: float = 1e-3
) -> complex:
    """Shift derivative by a central difference of the principal value."""
    if not h > 0:
        raise ValueError("finite-difference step must be positive")
    p = as_point(p)
    b = np.array([p.b + h, p.b - h])
    _check_support(signal, p.a, b, q)
    up, down = _pv_row(c, signal, p.a, b, q)
    return complex((up - down) / (2.0 * h))


class Method(enum.Enum):
    DIRECT_TIME = "direct"
    PV_SPLIT = "pv-split"
    FOURIER = "fourier"

    @classmethod
    def parse(cls, value) -> "Method":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {"direct-time": "direct", "directtime": "direct", "pvsplit": "pv-split", "pv": "pv-split"}
        return cls(aliases.get(key, key))


@dataclass
class TransformField:
    """Complex transform values on an ``a`` x ``b`` lattice.

    Rows index scales, columns index shifts.  ``evaluated`` marks nodes that
    carry a value; the others hold NaN.  ``errors`` collects per-node failure
    messages and ``near_edge`` flags nodes close to a band threshold.
    """

    a_values: np.ndarray
    b_values: np.ndarray
    w: np.ndarray
    w1: np.ndarray | None = None
    w2: np.ndarray | None = None
    evaluated: np.ndarray | None = None
    errors: list = field(default_factory=list)
    near_edge: np.ndarray | None = None

    def __post_init__(self):
        self.a_values = np.asarray(self.a_values, dtype=float)
        self.b_values = np.asarray(self.b_values, dtype=float)
        shape = (self.a_values.size, self.b_values.size)
        for name in ("w", "w1", "w2", "evaluated", "near_edge"):
            arr = getattr(self, name)
            if arr is not None and np.shape(arr) != shape:
                raise ShapeError(f"{name} has shape {np.shape(arr)}, expected {shape}")
        if self.evaluated is None:
            self.evaluated = np.isfinite(self.w)

    @property
    def shape(self):
        return self.w.shape


def validate_axes(a_values, b_values):
    a = np.asarray(a_values, dtype=float)
    b = np.asarray(b_values, dtype=float)
    if a.ndim != 1 or b.ndim != 1 or a.size == 0 or b.size == 0:
        raise ShapeError("empty axis")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ShapeError("non-finite axis value")
    if np.any(a <= 0):
        raise InvalidScaleError("scale axis must be positive")
    if np.any(np.diff(a) <= 0) or np.any(np.diff(b) <= 0):
        raise ShapeError("axes must be strictly ascending")
    return a, b


def _fourier_mask(omega, a):
    lo, hi = spectrum_band(a)
    tol = 1e-12 * abs(lo)
    mask = ((omega > lo + tol) & (omega < hi - tol)).astype(float)
    # a bin on the edge sees half of each component's sign jump
    mask[np.abs(omega - lo) <= tol] = 0.5
    mask[np.abs(omega - hi) <= tol] = 0.5
    return mask


def cwt_fourier_grid(signal, a_values, b_values) -> TransformField:
    """FFT-multiplier transform of a sampled signal.

    The forward DFT uses ``exp(-2j*pi*nu*t)`` and ``omega = 2*pi*nu``.  Each
    row keeps the bins with ``-3*pi/a < omega < -pi/a`` and scales the inverse
    transform by ``1/pi``; the data are treated as periodic.  ``b_values``
    must lie on the sample lattice.
    """
    if not isinstance(signal, Sampled):
        raise UnsupportedInputError("Fourier method needs a sampled signal")
    a, b = validate_axes(a_values, b_values)
    idx_f = (b - signal.t0) / signal.dt
    idx = np.rint(idx_f).astype(np.int64)
    if np.any(np.abs(idx_f - idx) > 1e-6) or np.any(idx < 0) or np.any(idx >= len(signal)):
        raise UnsupportedInputError("shift values must lie on the sample lattice")
    spec = np.fft.fft(signal.values)
    omega = 2.0 * np.pi * np.fft.fftfreq(len(signal), signal.dt)
    w = np.empty((a.size, b.size), dtype=complex)
    for i, ai in enumerate(a):
        row = np.fft.ifft(spec * _fourier_mask(omega, ai)) / np.pi
        w[i] = row[idx]
    return TransformField(a, b, w)


def _row_or_nodes(fn, signal, a, b, q, errors):
    # evaluate a row in one go; fall back node by node to isolate failures
    try:
        _check_support(signal, a, b, q)
        return fn(signal, a, b, q)
    except ShannonPDEError:
        out = np.full(b.size, np.nan + 0j)
        for j, bj in enumerate(b):
            try:
                _check_support(signal, a, bj, q)
                out[j] = fn(signal, a, np.array([bj]), q)[0]
            except ShannonPDEError as exc:
                errors.append(f"node (a={a:.9g}, b={bj:.9g}): {exc}")
        return out


def evaluate_grid(
    method, signal, a_values, b_values, q: QuadratureSpec = DEFAULT_QUADRATURE, workers: int = 1
) -> TransformField:
    """Fill a transform field with one of the three methods.

    ``PV_SPLIT`` also fills ``w1`` and ``w2`` and sets ``w = w1 - w2``.
    Nodes that fail are left as NaN and reported in ``errors``.
    """
    method = Method.parse(method)
    a, b = validate_axes(a_values, b_values)
    if method is Method.FOURIER:
        field_ = cwt_fourier_grid(signal, a, b)
        _flag_edges(field_, signal)
        return field_

    errors: list[str] = []
    if method is Method.DIRECT_TIME:
        def row(i):
            return _row_or_nodes(_direct_row, signal, a[i], b, q, errors)
    else:
        c1, c2 = WaveletComponent.COMPONENT1, WaveletComponent.COMPONENT2

        def row(i):
            r1 = _row_or_nodes(functools.partial(_pv_row, c1), signal, a[i], b, q, errors)
            r2 = _row_or_nodes(functools.partial(_pv_row, c2), signal, a[i], b, q, errors)
            return r1, r2

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, range(a.size)))
    else:
        rows = [row(i) for i in range(a.size)]

    if method is Method.DIRECT_TIME:
        field_ = TransformField(a, b, np.array(rows, dtype=complex).reshape(a.size, b.size))
    else:
        w1 = np.array([r[0] for r in rows], dtype=complex).reshape(a.size, b.size)
        w2 = np.array([r[1] for r in rows], dtype=complex).reshape(a.size, b.size)
        field_ = TransformField(a, b, w1 - w2, w1=w1, w2=w2)
    field_.errors = sorted(set(errors))
    _flag_edges(field_, signal)
    return field_


def _flag_edges(field_: TransformField, signal):
    if not isinstance(signal, Harmonic):
        return
    from .oracle import near_band_edge

    flags = np.zeros(field_.shape, dtype=bool)
    for i, ai in enumerate(field_.a_values):
        flags[i, :] = any(near_band_edge(signal.omega, ai, c) for c in WaveletComponent)
    field_.near_edge = flags

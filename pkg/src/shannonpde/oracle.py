"""Closed-form transforms of a pure tone ``exp(1j*omega*t)``.

For each component the transform is ``+/- exp(1j*omega*b) / (2*pi)``, the
sign flipping where ``omega*a`` crosses ``-modulation``.  The field is
independent of the scale away from that threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BranchCrossingError, OnThresholdError
from .signals import ScaleShiftPoint, as_point
from .wavelet import WaveletComponent

# relative tolerance for deciding that omega*a sits exactly on a threshold
THRESHOLD_RTOL = 1e-12


@dataclass(frozen=True)
class HarmonicCase:
    omega: float
    component: WaveletComponent


def branch_sign(omega: float, a: float, c: WaveletComponent) -> int:
    """Sign of the closed form: +1 above the threshold, -1 below.

    Works for ``a >= 0``; at ``a = 0`` every finite tone is above threshold.
    """
    x = omega * a + c.modulation
    if abs(x) <= THRESHOLD_RTOL * c.modulation:
        raise OnThresholdError(
            f"omega={omega} sits on the {c.name} threshold at a={a}"
        )
    return 1 if x > 0 else -1


def near_band_edge(omega: float, a: float, c: WaveletComponent, width: float = 0.05) -> bool:
    """True when ``omega*a`` is within ``width`` of the component threshold."""
    return abs(omega * a + c.modulation) < width


def harmonic_component(hc: HarmonicCase, p) -> complex:
    p = as_point(p)
    s = branch_sign(hc.omega, p.a, hc.component)
    return s * np.exp(1j * hc.omega * p.b) / (2.0 * np.pi)


def harmonic_partial_b(hc: HarmonicCase, p) -> complex:
    return 1j * hc.omega * harmonic_component(hc, p)


def harmonic_partial_a(hc: HarmonicCase, p) -> complex:
    p = as_point(p)
    branch_sign(hc.omega, p.a, hc.component)
    return 0j


def harmonic_full(omega: float, p) -> complex:
    """``W1 - W2``: ``exp(1j*omega*b)/pi`` inside the band, else zero."""
    w1 = harmonic_component(HarmonicCase(omega, WaveletComponent.COMPONENT1), p)
    w2 = harmonic_component(HarmonicCase(omega, WaveletComponent.COMPONENT2), p)
    return w1 - w2


def harmonic_field(omega: float, c: WaveletComponent):
    """Callable ``(a, b) -> W_c`` for use with residual checks."""
    hc = HarmonicCase(omega, c)
    return lambda a, b: harmonic_component(hc, ScaleShiftPoint(a, b))


def harmonic_line_data(omega: float, spec, c: WaveletComponent):
    """Line data on ``spec`` filled from the closed forms.

    A node at ``a = 0`` (allowed for the intercept construction) takes the
    ``a -> 0+`` limit, which is always the upper branch.

    Raises
    ------
    BranchCrossingError
        If a threshold lies on the closed segment.
    """
    from .riemann import LineData

    c = WaveletComponent.parse(c)
    if omega < 0:
        a_star = c.modulation / -omega
        if spec.a_min <= a_star <= spec.a_max:
            raise BranchCrossingError(
                f"{c.name} threshold a={a_star:.6g} lies on segment "
                f"[{spec.a_min}, {spec.a_max}] for omega={omega}"
            )
    a = spec.nodes()
    b = spec.line_b(a)
    signs = np.array([branch_sign(omega, ai, c) for ai in a], dtype=float)
    u = signs * np.exp(1j * omega * b) / (2.0 * np.pi)
    return LineData(spec, c, u, np.zeros_like(u), 1j * omega * u)

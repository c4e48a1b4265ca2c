"""Complex Shannon wavelet and its two singular exponential components.

The wavelet is ``psi(xi) = sinc(xi) * exp(-2j*pi*xi)`` with the normalized
sinc ``sin(pi*xi)/(pi*xi)``.  It splits as ``psi = psi1 - psi2`` where

    psi1(xi) = 1j * exp(-3j*pi*xi) / (2*pi*xi)
    psi2(xi) = 1j * exp(-1j*pi*xi) / (2*pi*xi)

Each component has a simple pole at ``xi = 0``; only the difference is
regular there.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import InvalidScaleError, SingularArgumentError

# below this |xi| the sinc is evaluated from its Taylor series
SINC_SERIES_THRESHOLD = 1e-10


class WaveletComponent(enum.Enum):
    """One of the two singular kernels of the split wavelet.

    ``modulation`` is the phase rate of the kernel in ``xi`` (``3*pi`` or
    ``pi``) and ``R = 1j * modulation`` is the coefficient of the hyperbolic
    equation the corresponding transform satisfies.
    """

    COMPONENT1 = 1
    COMPONENT2 = 2

    @property
    def modulation(self) -> float:
        return 3.0 * np.pi if self is WaveletComponent.COMPONENT1 else np.pi

    @property
    def R(self) -> complex:
        return 1j * self.modulation

    @property
    def derivative_factor(self) -> int:
        """Integer ``K`` with ``modulation = K * pi``."""
        return 3 if self is WaveletComponent.COMPONENT1 else 1

    @classmethod
    def parse(cls, value) -> "WaveletComponent":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        if key in ("1", "c1", "component1", "w1"):
            return cls.COMPONENT1
        if key in ("2", "c2", "component2", "w2"):
            return cls.COMPONENT2
        raise ValueError(f"unknown wavelet component {value!r}")


def _check_scale(a):
    a_arr = np.asarray(a, dtype=float)
    if not np.all(np.isfinite(a_arr)) or np.any(a_arr <= 0):
        raise InvalidScaleError(f"scale must be positive and finite, got {a!r}")


def eval_sinc(xi):
    """Normalized sinc ``sin(pi*xi)/(pi*xi)`` with the removable point filled."""
    xi = np.asarray(xi, dtype=float)
    small = np.abs(xi) < SINC_SERIES_THRESHOLD
    px = np.pi * np.where(small, 1.0, xi)
    out = np.where(small, 1.0 - (np.pi * xi) ** 2 / 6.0, np.sin(px) / px)
    return out[()] if out.ndim == 0 else out


def eval_psi(xi):
    """Complex Shannon wavelet ``sinc(xi) * exp(-2j*pi*xi)``."""
    xi = np.asarray(xi, dtype=float)
    out = eval_sinc(xi) * np.exp(-2j * np.pi * xi)
    if out.ndim == 0:
        return complex(out)
    return out


def eval_component(c: WaveletComponent, xi):
    """Singular kernel ``1j * exp(-1j*modulation*xi) / (2*pi*xi)``.

    Raises
    ------
    SingularArgumentError
        If any ``xi`` is exactly zero.
    """
    xi = np.asarray(xi, dtype=float)
    if np.any(xi == 0.0):
        raise SingularArgumentError("wavelet component has a pole at xi = 0")
    out = 1j * np.exp(-1j * c.modulation * xi) / (2.0 * np.pi * xi)
    if out.ndim == 0:
        return complex(out)
    return out


def amplitude_norm(a: float) -> float:
    """Amplitude normalization ``C(a) = 1/(pi*a)``."""
    _check_scale(a)
    return 1.0 / (np.pi * a)


def spectrum_band(a: float) -> tuple[float, float]:
    """Open angular-frequency interval where a pure tone has non-zero transform.

    For ``f(t) = exp(1j*omega*t)`` the transform at scale ``a`` is non-zero
    iff ``-3*pi/a < omega < -pi/a``.
    """
    _check_scale(a)
    return (-3.0 * np.pi / a, -np.pi / a)


def scale_band(omega: float) -> tuple[float, float] | None:
    """Open interval of scales where a tone of frequency ``omega`` is visible.

    Inverse of :func:`spectrum_band`; empty (``None``) for ``omega >= 0``.
    """
    if omega >= 0:
        return None
    return (np.pi / -omega, 3.0 * np.pi / -omega)


def in_band(omega: float, a: float) -> bool:
    lo, hi = spectrum_band(a)
    return lo < omega < hi

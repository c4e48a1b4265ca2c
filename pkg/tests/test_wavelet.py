import numpy as np
import pytest
from hypothesis import given, strategies as st

from shannonpde import amplitude_norm, eval_component, eval_psi, eval_sinc, spectrum_band
from shannonpde.errors import InvalidScaleError, SingularArgumentError
from shannonpde.wavelet import WaveletComponent, in_band, scale_band

from conftest import C1, C2


def test_sinc_values():
    assert eval_sinc(0.0) == 1.0
    assert abs(eval_sinc(1.0)) < 1e-16
    assert eval_sinc(0.5) == pytest.approx(2 / np.pi, rel=1e-15)
    assert eval_sinc(1e-12) == pytest.approx(1.0, abs=1e-20)


def test_psi_values():
    assert eval_psi(0.0) == 1 + 0j
    assert eval_psi(0.5) == pytest.approx(-2 / np.pi + 0j, abs=1e-15)
    assert eval_psi(0.3) == pytest.approx(eval_component(C1, 0.3) - eval_component(C2, 0.3), abs=1e-14)


def test_component_values():
    assert eval_component(C1, 0.5) == pytest.approx(-1 / np.pi, abs=1e-15)
    assert eval_component(C2, 0.5) == pytest.approx(1 / np.pi, abs=1e-15)
    assert eval_component(C1, 0.5) - eval_component(C2, 0.5) == pytest.approx(eval_psi(0.5), abs=1e-15)


@pytest.mark.parametrize("c", [C1, C2])
def test_component_pole_rejected(c):
    with pytest.raises(SingularArgumentError):
        eval_component(c, 0.0)
    with pytest.raises(SingularArgumentError):
        eval_component(c, np.array([1.0, 0.0]))


def test_component_constants():
    assert C1.modulation == 3 * np.pi and C2.modulation == np.pi
    for c in WaveletComponent:
        assert c.R == 1j * c.modulation
        assert c.modulation == c.derivative_factor * np.pi


def test_amplitude_norm():
    assert amplitude_norm(1.0) == pytest.approx(1 / np.pi)
    assert amplitude_norm(2.0) == pytest.approx(1 / (2 * np.pi))
    for bad in (0.0, -1.0, np.nan):
        with pytest.raises(InvalidScaleError):
            amplitude_norm(bad)


def test_spectrum_band():
    assert spectrum_band(1.0) == pytest.approx((-3 * np.pi, -np.pi))
    assert spectrum_band(3.0) == pytest.approx((-np.pi, -np.pi / 3))
    assert in_band(-2 * np.pi, 1.0)
    assert not in_band(2 * np.pi, 1.0)
    assert scale_band(-2 * np.pi) == pytest.approx((0.5, 1.5))
    assert scale_band(1.0) is None
    with pytest.raises(InvalidScaleError):
        spectrum_band(0.0)


magnitudes = st.floats(1e-6, 1e3)
signs = st.sampled_from([-1.0, 1.0])


@given(magnitudes, signs)
def test_split_identity(m, s):
    xi = s * m
    c1 = eval_component(C1, xi)
    diff = eval_psi(xi) - (c1 - eval_component(C2, xi))
    # the components are ~1/(2 pi xi); their rounding dominates near the pole
    floor = 8 * np.finfo(float).eps * abs(c1)
    assert abs(diff) < 1e-12 + floor


@given(st.floats(1.0, 1e6), signs)
def test_decay_bound(m, s):
    assert abs(eval_psi(s * m)) <= 1 / (np.pi * m) * (1 + 1e-15)


@given(st.floats(-1e3, 1e3))
def test_even_magnitude(xi):
    assert abs(eval_psi(-xi)) == pytest.approx(abs(eval_psi(xi)), rel=1e-14, abs=1e-300)
    assert abs(eval_psi(xi)) <= 1.0


@given(st.floats(-1e3, 1e3))
def test_reflection_is_conjugate(xi):
    assert eval_psi(-xi) == pytest.approx(np.conj(eval_psi(xi)), abs=1e-15)


@given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
def test_norm_decreasing(a1, a2):
    if a1 < a2:
        assert amplitude_norm(a1) > amplitude_norm(a2) > 0


def test_vectorized():
    xi = np.linspace(-3, 3, 13)
    out = eval_psi(xi)
    assert out.shape == xi.shape
    assert out[6] == 1 + 0j

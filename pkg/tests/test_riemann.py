import numpy as np
import pytest
from hypothesis import given, strategies as st

from shannonpde import (
    Harmonic,
    LineSegmentSpec,
    RiemannKernel,
    build_line_data,
    fill_triangle,
    harmonic_line_data,
    kernel_partials,
    kernel_value,
    propagate_general,
    propagate_simplified,
    triangle_of,
)
from shannonpde.errors import (
    InconsistentLineDataError,
    InvalidScaleError,
    OutOfDeterminacyError,
    SimplificationInapplicableError,
)
from shannonpde.riemann import direct_source

from conftest import C1, C2, TWO_PI


def closed(omega, b):
    return np.exp(1j * omega * b) / TWO_PI


def test_kernel_examples():
    R = 3j * np.pi
    kr = RiemannKernel(R, (1.0, 1.0))
    assert kernel_value(kr, (1.0, 1.0)) == 1
    assert kernel_value(kr, (2.0, 1.0)) == 1
    assert kernel_value(kr, (1.0, 1.5)) == pytest.approx(np.exp(1.5j * np.pi))
    with pytest.raises(InvalidScaleError):
        kernel_value(kr, (0.0, 1.0))


def test_kernel_partials_match_differences():
    kr = RiemannKernel(1j * np.pi, (2.0, 0.3))
    a, b, h = 1.7, -0.2, 1e-6
    va, vb = kernel_partials(kr, (a, b))
    fa = (kernel_value(kr, (a + h, b)) - kernel_value(kr, (a - h, b))) / (2 * h)
    fb = (kernel_value(kr, (a, b + h)) - kernel_value(kr, (a, b - h))) / (2 * h)
    assert va == pytest.approx(fa, abs=1e-8)
    assert vb == pytest.approx(fb, abs=1e-8)


@given(st.floats(0.1, 5.0), st.floats(-3, 3), st.floats(0.1, 5.0), st.sampled_from([1j * np.pi, 3j * np.pi]))
def test_kernel_characteristics(a0, b0, a, R):
    kr = RiemannKernel(R, (a0, b0))
    assert kernel_value(kr, (a, b0)) == 1
    # on the line through the target with slope 2 the kernel is exp(-2R) = 1
    assert abs(kernel_value(kr, (a, b0 - 2 * a)) - 1) < 1e-12


def test_segment_spec():
    s = LineSegmentSpec(2.0, 1.0, 0.5, 1.5, 11)
    assert s.spacing == pytest.approx(0.1)
    assert s.line_b(1.0) == pytest.approx(-1.0)
    for args in [(0.0, 1.0, 0.5, 1.5, 11), (2.0, 1.0, -0.1, 1.5, 11), (2.0, 1.0, 1.5, 0.5, 11),
                 (2.0, 1.0, 0.5, 1.5, 2)]:
        with pytest.raises(ValueError):
            LineSegmentSpec(*args)


def test_triangle():
    tri = triangle_of(LineSegmentSpec(2.0, 2.0, 0.5, 1.0, 11))
    assert tri.vertices == ((0.5, 1.0), (1.0, 0.0), (1.0, 1.0))
    assert tri.contains((0.9, 0.5))
    assert not tri.contains((0.6, 0.5))


def test_line_data_validation():
    spec = LineSegmentSpec(2.0, 1.0, 1.0, 1.2, 5)
    z = np.zeros(5, dtype=complex)
    with pytest.raises(InconsistentLineDataError):
        harmonic_line_data(1.0, spec, C1).replace(u=np.zeros(4))
    bad = z.copy()
    bad[2] = np.nan
    with pytest.raises(InconsistentLineDataError):
        harmonic_line_data(1.0, spec, C1).replace(u_a=bad)
    ld = harmonic_line_data(1.0, spec, C1)
    with pytest.raises(ValueError):
        ld.u[0] = 1.0


@pytest.mark.parametrize("omega", [1.0, -TWO_PI])
@pytest.mark.parametrize("c", [C1, C2])
def test_propagate_general_harmonic(omega, c):
    spec = LineSegmentSpec(2.0, 1.0, 1.0, 1.1, 201)
    ld = harmonic_line_data(omega, spec, c)
    sign = 1 if omega * 1.05 + c.modulation > 0 else -1
    for a0, b0 in [(1.05, -1.05), (1.1, -1.15), (1.08, -1.1)]:
        got = propagate_general(ld, (a0, b0))
        assert got == pytest.approx(sign * closed(omega, b0), abs=1e-6)


def test_propagation_second_order():
    omega = -TWO_PI
    target = (1.2, -1.2)
    errs = []
    for n in (51, 101):
        ld = harmonic_line_data(omega, LineSegmentSpec(2.0, 1.0, 1.0, 1.2, n), C1)
        errs.append(abs(propagate_general(ld, target) - closed(omega, target[1])))
    assert 3.0 < errs[0] / errs[1] < 5.0


def test_on_line_target_returns_data():
    spec = LineSegmentSpec(2.0, 1.0, 1.0, 1.1, 11)
    ld = harmonic_line_data(1.0, spec, C2)
    assert propagate_general(ld, (spec.nodes()[3], spec.line_b(spec.nodes()[3]))) == ld.u[3]


def test_out_of_triangle():
    ld = harmonic_line_data(1.0, LineSegmentSpec(2.0, 1.0, 1.0, 1.1, 11), C1)
    with pytest.raises(OutOfDeterminacyError):
        propagate_general(ld, (1.2, -1.1))
    with pytest.raises(OutOfDeterminacyError):
        propagate_general(ld, (1.05, 0.0))
    with pytest.raises(OutOfDeterminacyError):
        propagate_general(ld, (1.02, -1.15))
    with pytest.raises(InvalidScaleError):
        propagate_general(ld, (0.0, -1.0))


def test_intercept_configuration():
    spec = LineSegmentSpec(2.0, 0.7, 0.0, 0.1, 201)
    for omega in (1.0, -TWO_PI):
        ld = harmonic_line_data(omega, spec, C1)
        for a0 in (0.025, 0.05, 0.1):
            g = propagate_general(ld, (a0, 0.7))
            s = propagate_simplified(ld, (a0, 0.7))
            assert g == pytest.approx(s, abs=1e-10)
            assert s == pytest.approx(closed(omega, 0.7), abs=1e-6)


def test_simplified_rejects():
    ld = harmonic_line_data(1.0, LineSegmentSpec(3.0, 0.7, 0.0, 0.2, 21), C1)
    with pytest.raises(SimplificationInapplicableError):
        propagate_simplified(ld, (0.1, 0.7))
    ld = harmonic_line_data(1.0, LineSegmentSpec(2.0, 0.7, 0.0, 0.2, 21), C1)
    with pytest.raises(SimplificationInapplicableError):
        propagate_simplified(ld, (0.1, 0.6))


def test_general_refuses_discontinuous_origin():
    ld = harmonic_line_data(1.0, LineSegmentSpec(1.0, 0.7, 0.0, 0.2, 21), C2)
    with pytest.raises(OutOfDeterminacyError):
        propagate_general(ld, (0.1, 0.7))


def test_fill_triangle():
    spec = LineSegmentSpec(2.0, 1.0, 1.0, 1.2, 201)
    ld1 = harmonic_line_data(-TWO_PI, spec, C1)
    ld2 = harmonic_line_data(-TWO_PI, spec, C2)
    field = fill_triangle(ld1, ld2, 6, 6)
    ok = field.evaluated
    assert ok.any() and not ok.all()
    bb = np.broadcast_to(field.b_values, field.shape)
    np.testing.assert_allclose(field.w[ok], (np.exp(-1j * TWO_PI * bb) / np.pi)[ok], atol=1e-5)
    with pytest.raises(InconsistentLineDataError):
        fill_triangle(ld2, ld1, 6, 6)


def test_fill_triangle_simplified_row():
    spec = LineSegmentSpec(2.0, 0.7, 0.0, 0.2, 101)
    ld1 = harmonic_line_data(1.0, spec, C1)
    ld2 = harmonic_line_data(1.0, spec, C2)
    field = fill_triangle(ld1, ld2, 5, 3, simplified=True)
    assert field.evaluated[1:, -1].all()
    assert not field.evaluated[:, :-1].any()


def test_build_line_data_direct_source():
    spec = LineSegmentSpec(2.0, 1.0, 1.0, 1.1, 5)
    ld = build_line_data(spec, C1, direct_source(C1, Harmonic(-TWO_PI)))
    ref = harmonic_line_data(-TWO_PI, spec, C1)
    np.testing.assert_allclose(ld.u, ref.u, atol=1e-6)
    np.testing.assert_allclose(ld.u_a, ref.u_a, atol=1e-4)
    np.testing.assert_allclose(ld.u_b, ref.u_b, atol=1e-4)


def test_build_line_data_reports_node():
    spec = LineSegmentSpec(2.0, 1.0, 1.0, 1.1, 5)

    def src(a, b):
        if a > 1.05:
            raise InvalidScaleError("boom")
        return 0, 0, 0

    with pytest.raises(InvalidScaleError, match="line node 3"):
        build_line_data(spec, C1, src)

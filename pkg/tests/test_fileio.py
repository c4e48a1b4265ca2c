import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shannonpde import Harmonic, LineSegmentSpec, Sampled, TransformField, harmonic_line_data
from shannonpde.errors import MalformedInputError, SpacingError
from shannonpde.fileio import (
    MISSING_RGB,
    heatmap_bytes,
    ramp_colour,
    read_field_csv,
    read_line_data_csv,
    read_signal_csv,
    write_field_csv,
    write_line_data_csv,
    write_signal_csv,
)
from shannonpde.signals import sample

from conftest import C1, C2

finite = st.floats(-1e6, 1e6, allow_nan=False)


@settings(max_examples=30)
@given(st.floats(-100, 100), st.floats(1e-3, 10), st.lists(st.tuples(finite, finite), min_size=1, max_size=20))
def test_signal_roundtrip(tmp_path_factory, t0, dt, vals):
    path = tmp_path_factory.mktemp("sig") / "s.csv"
    s = Sampled(t0, dt, np.array([complex(*v) for v in vals]))
    write_signal_csv(path, s)
    back = read_signal_csv(path)
    np.testing.assert_array_equal(back.values, s.values)
    np.testing.assert_allclose(back.times, s.times, rtol=1e-15, atol=1e-12)


def test_signal_bad_spacing(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("t,re,im\n0,1,0\n0.1,1,0\n0.25,1,0\n")
    with pytest.raises(SpacingError, match=":4"):
        read_signal_csv(p)


@pytest.mark.parametrize("text,match", [
    ("", "empty"),
    ("x,y\n1,2\n", "header"),
    ("t,re,im\n0,1\n", "columns"),
    ("t,re,im\n0,a,0\n", "not a number"),
    ("t,re,im\n", "no samples"),
])
def test_signal_malformed(tmp_path, text, match):
    p = tmp_path / "s.csv"
    p.write_text(text)
    with pytest.raises(MalformedInputError, match=match):
        read_signal_csv(p)


def test_missing_file(tmp_path):
    with pytest.raises(MalformedInputError):
        read_signal_csv(tmp_path / "nope.csv")


def test_field_roundtrip(tmp_path):
    a = np.array([0.5, 1.0, 2.0])
    b = np.array([-1.0, 0.0])
    rng = np.random.default_rng(1)
    w1 = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    w2 = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    w1[1, 1] = w2[1, 1] = np.nan
    f = TransformField(a, b, w1 - w2, w1=w1, w2=w2)
    p = tmp_path / "f.csv"
    write_field_csv(p, f, inside_column=True)
    lines = p.read_text().splitlines()
    assert lines[0].endswith(",inside") and lines[4].endswith(",,,,,,,0")
    g = read_field_csv(p)
    np.testing.assert_array_equal(g.a_values, a)
    np.testing.assert_array_equal(g.evaluated, f.evaluated)
    ok = f.evaluated
    np.testing.assert_array_equal(g.w[ok], f.w[ok])
    np.testing.assert_array_equal(g.w1[ok], w1[ok])


def test_field_csv_deterministic(tmp_path):
    f = TransformField(np.array([1.0]), np.array([0.0, 0.1]), np.array([[1 + 2j, 0.1 + 0.2j]]))
    write_field_csv(tmp_path / "x.csv", f)
    write_field_csv(tmp_path / "y.csv", f)
    assert (tmp_path / "x.csv").read_bytes() == (tmp_path / "y.csv").read_bytes()


def test_line_data_roundtrip(tmp_path):
    spec = LineSegmentSpec(2.0, 1.0, 1.0, 1.1, 11)
    ld1 = harmonic_line_data(-2 * np.pi, spec, C1)
    ld2 = harmonic_line_data(-2 * np.pi, spec, C2)
    p = tmp_path / "ld.csv"
    write_line_data_csv(p, ld1, ld2)
    back = read_line_data_csv(p)
    assert back[C1].spec == spec
    np.testing.assert_array_equal(back[C2].u_b, ld2.u_b)


def test_line_data_mixed_lines(tmp_path):
    p = tmp_path / "ld.csv"
    spec = LineSegmentSpec(2.0, 1.0, 1.0, 1.1, 3)
    write_line_data_csv(p, harmonic_line_data(1.0, spec, C1))
    text = p.read_text().splitlines()
    text[2] = text[2].replace(",2.0,1.0,", ",3.0,1.0,")
    p.write_text("\n".join(text) + "\n")
    with pytest.raises(MalformedInputError, match="several lines"):
        read_line_data_csv(p)


def test_ramp_endpoints():
    np.testing.assert_array_equal(ramp_colour([0.0, 1.0]), [[0, 0, 0], [255, 255, 220]])


def test_heatmap():
    vals = np.array([[0.0, 1.0, np.nan], [0.5, 2.0, 0.0]])
    data = heatmap_bytes(vals)
    header = b"P6\n3 2\n255\n"
    assert data.startswith(header)
    px = np.frombuffer(data[len(header):], dtype=np.uint8).reshape(2, 3, 3)
    assert tuple(px[0, 2]) == MISSING_RGB
    assert tuple(px[1, 1]) == (255, 255, 220)
    assert tuple(px[0, 0]) == (0, 0, 0)
    zeros = heatmap_bytes(np.zeros((1, 2)))
    assert zeros[len(b"P6\n2 1\n255\n"):] == bytes(6)

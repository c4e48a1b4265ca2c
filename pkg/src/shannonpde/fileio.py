"""CSV and PPM readers/writers.

Floats are written with ``repr`` (shortest round-trip form) so identical
inputs give identical bytes and reading back is exact.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from .direct import TransformField
from .errors import MalformedInputError, SpacingError
from .riemann import LineData, LineSegmentSpec
from .signals import Sampled
from .wavelet import WaveletComponent

SIGNAL_HEADER = ["t", "re", "im"]
FIELD_HEADER = ["a", "b", "w_re", "w_im", "w1_re", "w1_im", "w2_re", "w2_im"]
LINE_HEADER = ["component", "a", "b", "k", "intercept_c",
               "u_re", "u_im", "ua_re", "ua_im", "ub_re", "ub_im"]

# relative tolerance on sample spacing
SPACING_RTOL = 1e-9

# heatmap colour ramp: (position, (r, g, b)); linear between stops
RAMP = (
    (0.00, (0, 0, 0)),
    (0.25, (40, 0, 120)),
    (0.50, (180, 30, 90)),
    (0.75, (250, 140, 20)),
    (1.00, (255, 255, 220)),
)
# colour of nodes without a value
MISSING_RGB = (128, 128, 128)


def _fmt(x: float) -> str:
    return repr(float(x))


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _write_rows(path, header, rows):
    Path(path).write_text(_csv_text(header, rows), encoding="utf-8")


def _read_rows(path, header):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    reader = csv.reader(io.StringIO(text))
    try:
        first = next(reader)
    except StopIteration:
        raise MalformedInputError(f"{path}: empty file") from None
    if [h.strip() for h in first][: len(header)] != header:
        raise MalformedInputError(f"{path}:1: expected header {','.join(header)}")
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(first):
            raise MalformedInputError(f"{path}:{lineno}: expected {len(first)} columns, got {len(row)}")
        yield lineno, [c.strip() for c in row], first


def _float(path, lineno, s):
    try:
        return float(s)
    except ValueError:
        raise MalformedInputError(f"{path}:{lineno}: not a number: {s!r}") from None


def write_signal_csv(path, signal: Sampled):
    t = signal.times
    rows = ([_fmt(ti), _fmt(v.real), _fmt(v.imag)] for ti, v in zip(t, signal.values))
    _write_rows(path, SIGNAL_HEADER, rows)


def read_signal_csv(path) -> Sampled:
    """Read ``t,re,im`` rows with uniform ``t`` spacing into a sampled signal."""
    t, vals = [], []
    for lineno, row, _ in _read_rows(path, SIGNAL_HEADER):
        ti, re, im = (_float(path, lineno, s) for s in row)
        if not all(np.isfinite((ti, re, im))):
            raise MalformedInputError(f"{path}:{lineno}: non-finite value")
        t.append(ti)
        vals.append(complex(re, im))
    if not t:
        raise MalformedInputError(f"{path}: no samples")
    t = np.array(t)
    if t.size == 1:
        return Sampled(t[0], 1.0, np.array(vals))
    steps = np.diff(t)
    if not steps[0] > 0:
        raise SpacingError(f"{path}: times must increase")
    bad = np.nonzero(np.abs(steps - steps[0]) > SPACING_RTOL * steps[0])[0]
    if bad.size:
        raise SpacingError(
            f"{path}:{bad[0] + 3}: non-uniform time step {float(steps[bad[0]])!r}, "
            f"expected {float(steps[0])!r}"
        )
    candidates = [(t[-1] - t[0]) / (t.size - 1), steps[0]]
    dt = candidates[0]
    # prefer a step that regenerates the file's times exactly
    idx = np.arange(t.size)
    for cand in candidates:
        if np.array_equal(t[0] + cand * idx, t):
            dt = cand
            break
    return Sampled(t[0], dt, np.array(vals))


def _cols(z, ok):
    return [_fmt(z.real), _fmt(z.imag)] if ok else ["", ""]


def format_field_csv(field: TransformField, inside_column: bool = False) -> str:
    """One row per node; ``a`` varies slowest.  Missing values are empty."""
    header = FIELD_HEADER + (["inside"] if inside_column else [])
    rows = []
    for i, a in enumerate(field.a_values):
        for j, b in enumerate(field.b_values):
            ok = bool(field.evaluated[i, j])
            row = [_fmt(a), _fmt(b)] + _cols(field.w[i, j], ok)
            row += _cols(field.w1[i, j], ok) if field.w1 is not None else ["", ""]
            row += _cols(field.w2[i, j], ok) if field.w2 is not None else ["", ""]
            if inside_column:
                row.append("1" if ok else "0")
            rows.append(row)
    return _csv_text(header, rows)


def write_field_csv(path, field: TransformField, inside_column: bool = False):
    Path(path).write_text(format_field_csv(field, inside_column), encoding="utf-8")


def read_field_csv(path) -> TransformField:
    recs = list(_read_rows(path, FIELD_HEADER))
    if not recs:
        raise MalformedInputError(f"{path}: no rows")
    a_vals = sorted({_float(path, ln, r[0]) for ln, r, _ in recs})
    b_vals = sorted({_float(path, ln, r[1]) for ln, r, _ in recs})
    shape = (len(a_vals), len(b_vals))
    if len(recs) != shape[0] * shape[1]:
        raise MalformedInputError(f"{path}: rows do not form a full grid")
    ai = {v: i for i, v in enumerate(a_vals)}
    bi = {v: j for j, v in enumerate(b_vals)}
    w, w1, w2 = (np.full(shape, np.nan + 0j) for _ in range(3))
    has1 = has2 = False
    for ln, r, _ in recs:
        i, j = ai[float(r[0])], bi[float(r[1])]
        if r[2] != "":
            w[i, j] = complex(_float(path, ln, r[2]), _float(path, ln, r[3]))
        if r[4] != "":
            w1[i, j] = complex(_float(path, ln, r[4]), _float(path, ln, r[5]))
            has1 = True
        if r[6] != "":
            w2[i, j] = complex(_float(path, ln, r[6]), _float(path, ln, r[7]))
            has2 = True
    return TransformField(np.array(a_vals), np.array(b_vals), w,
                          w1=w1 if has1 else None, w2=w2 if has2 else None)


def write_line_data_csv(path, *line_data: LineData):
    rows = []
    for ld in line_data:
        s = ld.spec
        tag = str(ld.component.value)
        for a, b, u, ua, ub in zip(ld.a, ld.b, ld.u, ld.u_a, ld.u_b):
            rows.append([tag, _fmt(a), _fmt(b), _fmt(s.k), _fmt(s.intercept_c)]
                        + _cols(u, True) + _cols(ua, True) + _cols(ub, True))
    _write_rows(path, LINE_HEADER, rows)


def read_line_data_csv(path) -> dict:
    """Read line data; returns ``{WaveletComponent: LineData}``."""
    groups: dict = {}
    for ln, r, _ in _read_rows(path, LINE_HEADER):
        try:
            comp = WaveletComponent.parse(r[0])
        except ValueError:
            raise MalformedInputError(f"{path}:{ln}: unknown component {r[0]!r}") from None
        nums = [_float(path, ln, s) for s in r[1:]]
        groups.setdefault(comp, []).append((ln, nums))
    if not groups:
        raise MalformedInputError(f"{path}: no line data")
    out = {}
    for comp, recs in groups.items():
        arr = np.array([n for _, n in recs])
        a, b, k, c = arr[:, 0], arr[:, 1], arr[0, 2], arr[0, 3]
        if np.any(arr[:, 2] != k) or np.any(arr[:, 3] != c):
            raise MalformedInputError(f"{path}: component {comp.value} mixes several lines")
        spec = LineSegmentSpec(k, c, a[0], a[-1], a.size)
        nodes = spec.nodes()
        tol = SPACING_RTOL * max(spec.a_max, spec.spacing)
        bad = np.nonzero(np.abs(nodes - a) > tol)[0]
        if bad.size:
            raise SpacingError(f"{path}:{recs[bad[0]][0]}: line nodes are not equally spaced")
        u = arr[:, 4] + 1j * arr[:, 5]
        ua = arr[:, 6] + 1j * arr[:, 7]
        ub = arr[:, 8] + 1j * arr[:, 9]
        out[comp] = LineData(spec, comp, u, ua, ub)
    return out


def ramp_colour(x):
    """Map values in ``[0, 1]`` onto :data:`RAMP`; returns uint8 ``(..., 3)``."""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    pos = np.array([p for p, _ in RAMP])
    rgb = np.array([c for _, c in RAMP], dtype=float)
    out = np.stack([np.interp(x, pos, rgb[:, k]) for k in range(3)], axis=-1)
    return np.rint(out).astype(np.uint8)


def heatmap_bytes(values) -> bytes:
    """Binary PPM (P6) of ``|values|``: rows are scales, columns shifts.

    Magnitudes are scaled linearly from 0 to the field maximum; NaN nodes are
    drawn in :data:`MISSING_RGB`.
    """
    mag = np.abs(np.asarray(values))
    ok = np.isfinite(mag)
    top = mag[ok].max() if np.any(ok) else 0.0
    scaled = np.where(ok, mag / top if top > 0 else 0.0, 0.0)
    img = ramp_colour(scaled)
    img[~ok] = MISSING_RGB
    h, w = mag.shape
    return b"P6\n%d %d\n255\n" % (w, h) + img.tobytes()


def write_heatmap_ppm(path, field: TransformField):
    Path(path).write_bytes(heatmap_bytes(np.where(field.evaluated, field.w, np.nan)))

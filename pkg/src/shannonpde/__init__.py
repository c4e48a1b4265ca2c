"""Complex Shannon wavelet transform by direct quadrature and by Riemann
propagation of the two hyperbolic equations its split components satisfy."""

from .direct import (
    DEFAULT_QUADRATURE,
    Method,
    QuadratureSpec,
    TransformField,
    cwt_component_pv,
    cwt_direct,
    cwt_fourier_grid,
    evaluate_grid,
    partial_a_component,
    partial_b_component,
)
from .oracle import (
    HarmonicCase,
    harmonic_component,
    harmonic_full,
    harmonic_line_data,
    harmonic_partial_a,
    harmonic_partial_b,
)
from .riemann import (
    DeterminacyTriangle,
    LineData,
    LineSegmentSpec,
    RiemannKernel,
    build_line_data,
    fill_triangle,
    kernel_partials,
    kernel_value,
    propagate_general,
    propagate_simplified,
    triangle_of,
)
from .signals import Harmonic, Sampled, ScaleShiftPoint
from .verification import (
    OpCountReport,
    ResidualReport,
    compare_fields,
    op_count_compare,
    residual_conjugate,
    residual_hyperbolic,
)
from .wavelet import (
    WaveletComponent,
    amplitude_norm,
    eval_component,
    eval_psi,
    eval_sinc,
    spectrum_band,
)

__version__ = "0.1.0"

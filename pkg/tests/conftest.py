import numpy as np
import pytest

from shannonpde import QuadratureSpec, WaveletComponent

C1 = WaveletComponent.COMPONENT1
C2 = WaveletComponent.COMPONENT2
TWO_PI = 2.0 * np.pi


@pytest.fixture
def q_default():
    return QuadratureSpec()


@pytest.fixture
def q_small():
    # narrower window for sampled signals with finite support
    return QuadratureSpec(halfwidth_xi=40.0, nodes_per_unit_xi=64)

import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from periodforge import ALL_TYPES, FramedPeriods


@pytest.fixture(params=[t.key for t in ALL_TYPES])
def ctype(request):
    from periodforge import curve_type
    return curve_type(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture
def generic_frame():
    return FramedPeriods(1.07 + 0.13j, 0.21 + 1.24j)


@pytest.fixture
def cusp_frame():
    return FramedPeriods(1.0, 10j)


def rel_err(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)

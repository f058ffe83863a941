"""Weierstrass kernel: values, symmetries, periodicity, eta, Fourier."""

import cmath
import math

import numpy as np
import pytest

from oracles import wp_brute, wp_cusp_limit, wzeta_cusp_limit
from periodforge import (FramedPeriods, QSeries, dedekind_eta,
                         fourier_coefficients, quasi_period_eta1, use_backend,
                         wp, wp_deriv, wp_prime, wzeta)
from periodforge.backend import active_backend
from periodforge.errors import (ContractViolationError, DegenerateFrameError,
                                PoleError)
from periodforge.identities import eta_power_expansion

PI = math.pi


def test_degenerate_frame_rejected():
    with pytest.raises(DegenerateFrameError):
        FramedPeriods(1.0, 0.5)
    with pytest.raises(DegenerateFrameError):
        FramedPeriods(0.0, 1j)


def test_pole_error():
    w = FramedPeriods(1.0, 1j)
    with pytest.raises(PoleError):
        wp(0.0, w)
    with pytest.raises(PoleError):
        wzeta(1.0 + 1j, w)


def test_wzeta_odd():
    w = FramedPeriods(1.0, 1j)
    z = 0.3 + 0.1j
    assert abs(wzeta(-z, w) + wzeta(z, w)) < 1e-12 * abs(wzeta(z, w))


def test_halfperiod_cusp_values(cusp_frame):
    assert abs(wp(0.5, cusp_frame) - 2 * PI**2 / 3) < 1e-6
    assert abs(wp(1.0 / 3.0, cusp_frame) - PI**2) < 1e-6


def test_wp_against_brute_force_sum():
    w = FramedPeriods(1.0, 0.1 + 1.2j)
    z = 0.37 + 0.21j
    direct = wp_brute(z, w.omega0, w.omega1, window=400)
    assert abs(wp(z, w) - direct) < 1e-9 * abs(direct)


def test_wzeta_against_cusp_limit(cusp_frame):
    for z in (0.21, 0.37 + 0.11j, -0.13 + 0.22j):
        assert abs(wzeta(z, cusp_frame) - wzeta_cusp_limit(z)) < 1e-6
        assert abs(wp(z, cusp_frame) - wp_cusp_limit(z)) < 1e-6


def test_wp_prime_is_derivative(rng):
    w = FramedPeriods(1.1, 0.2 + 1.3j)
    h = 1e-6
    for _ in range(5):
        z = complex(rng.uniform(0.1, 0.4), rng.uniform(0.05, 0.3))
        num = (wp(z + h, w) - wp(z - h, w)) / (2 * h)
        assert abs(num - wp_prime(z, w)) < 1e-8 * max(1.0, abs(num))


def test_wzeta_derivative_is_minus_wp(rng):
    w = FramedPeriods(1.0, 0.3 + 1.1j)
    h = 1e-6
    for _ in range(5):
        z = complex(rng.uniform(0.1, 0.4), rng.uniform(0.05, 0.3))
        num = (wzeta(z + h, w) - wzeta(z - h, w)) / (2 * h)
        assert abs(num + wp(z, w)) < 1e-8 * max(1.0, abs(num))


def test_double_periodicity(rng):
    w = FramedPeriods(1.3 + 0.1j, 0.4 + 1.5j)
    for _ in range(4):
        z = complex(rng.uniform(0.05, 0.5), rng.uniform(0.02, 0.4))
        for shift in (w.omega0, w.omega1, 3 * w.omega0 - 2 * w.omega1):
            assert abs(wp(z + shift, w) - wp(z, w)) < 1e-11 * max(1.0, abs(wp(z, w)))
            assert abs(wp_prime(z + shift, w) - wp_prime(z, w)) \
                < 1e-11 * max(1.0, abs(wp_prime(z, w)))


def test_quasi_periodicity(rng):
    w = FramedPeriods(1.0, 0.2 + 1.1j)
    eta0, eta1 = quasi_period_eta1(w)
    # eta_i = 2 zeta(omega_i / 2)
    assert abs(eta0 - 2 * wzeta(w.omega0 / 2, w)) < 1e-12 * abs(eta0)
    assert abs(eta1 - 2 * wzeta(w.omega1 / 2, w)) < 1e-12 * abs(eta1)
    for _ in range(4):
        z = complex(rng.uniform(0.05, 0.45), rng.uniform(0.02, 0.35))
        assert abs(wzeta(z + w.omega0, w) - wzeta(z, w) - eta0) < 1e-10
        assert abs(wzeta(z + w.omega1, w) - wzeta(z, w) - eta1) < 1e-10


def test_legendre_relation():
    for tau in (1j, 0.2 + 0.9j, -0.3 + 1.7j):
        w = FramedPeriods(1.0, tau)
        eta0, eta1 = quasi_period_eta1(w)
        assert abs(eta0 * w.omega1 - eta1 * w.omega0 - 2j * PI) < 1e-10


def test_quasi_period_scaling():
    w1 = FramedPeriods(1.0, 1j)
    w2 = FramedPeriods(2.0, 2j)
    e1 = quasi_period_eta1(w1)
    e2 = quasi_period_eta1(w2)
    assert abs(e2[0] - e1[0] / 2) < 1e-12
    assert abs(e2[1] - e1[1] / 2) < 1e-12


def test_homogeneity():
    w = FramedPeriods(1.0, 0.3 + 1.4j)
    z = 0.27 + 0.12j
    for s in (2.0, 0.35):
        ws = w.scaled(s)
        assert abs(wp(s * z, ws) - wp(z, w) / s**2) < 1e-12 * abs(wp(z, w))
        assert abs(wzeta(s * z, ws) - wzeta(z, w) / s) < 1e-12 * abs(wzeta(z, w))


def test_wp_deriv_tower(rng):
    # wp_deriv(j+1) is the derivative of wp_deriv(j)
    w = FramedPeriods(1.0, 0.15 + 1.05j)
    h = 1e-6
    z = 0.31 + 0.17j
    for j in (1, 2, 3, 4):
        num = (wp_deriv(z + h, w, j - 1) - wp_deriv(z - h, w, j - 1)) / (2 * h)
        assert abs(num - wp_deriv(z, w, j)) < 1e-7 * max(1.0, abs(num))


@pytest.mark.parametrize("backend", ["numba", "numpy"])
def test_backends_agree(backend):
    previous = active_backend()
    try:
        use_backend(backend)
        w = FramedPeriods(1.02 - 0.05j, 0.23 + 1.31j)
        vals = (wp(0.3 + 0.2j, w), wzeta(0.3 + 0.2j, w), dedekind_eta(w.tau))
    finally:
        use_backend(previous)
    ref_w = FramedPeriods(1.02 - 0.05j, 0.23 + 1.31j)
    ref = (wp(0.3 + 0.2j, ref_w), wzeta(0.3 + 0.2j, ref_w), dedekind_eta(ref_w.tau))
    for a, b in zip(vals, ref):
        assert abs(a - b) <= 1e-13 * max(1.0, abs(b))


# -- Dedekind eta -------------------------------------------------------------

def test_eta_translation_law():
    tau = 0.2 + 0.9j
    assert abs(dedekind_eta(tau + 1) - cmath.exp(1j * PI / 12) * dedekind_eta(tau)) < 1e-12


def test_eta_inversion_law():
    tau = 0.3 + 1.1j
    lhs = dedekind_eta(-1 / tau)
    rhs = cmath.sqrt(tau / 1j) * dedekind_eta(tau)
    assert abs(lhs - rhs) < 1e-12 * abs(rhs)


def test_eta_leading_term():
    val = dedekind_eta(10j)
    assert abs(val - math.exp(-20 * PI / 24)) <= 1e-20 * abs(val)
    assert abs(val.imag) < 1e-25


def test_eta_small_imag_part():
    # reduction handles tau close to the real axis
    tau = 0.125 + 0.01j
    lhs = dedekind_eta(tau + 1)
    rhs = cmath.exp(1j * PI / 12) * dedekind_eta(tau)
    assert abs(lhs - rhs) < 1e-10 * abs(rhs)


def test_eta_rejects_lower_half_plane():
    with pytest.raises(DegenerateFrameError):
        dedekind_eta(1.0 - 0.3j)


# -- Fourier extraction -------------------------------------------------------

def test_fourier_constant():
    qs = fourier_coefficients(lambda tau: 1.0, 4)
    assert abs(qs[0] - 1) < 1e-12
    assert all(abs(qs[n]) < 1e-10 for n in range(1, 5))


def test_fourier_eta24_over_q():
    f = lambda tau: dedekind_eta(tau) ** 24 * cmath.exp(-2j * PI * tau)
    qs = fourier_coefficients(f, 3)
    _, expected = eta_power_expansion({1: 24}, 3)
    for n in range(4):
        assert abs(qs[n] - expected[n]) < 1e-6


def test_fourier_rejects_nonperiodic():
    with pytest.raises(ContractViolationError):
        fourier_coefficients(lambda tau: tau, 2)


def test_precision_profiles():
    from periodforge import set_precision
    w = FramedPeriods(1.0, 0.2 + 1.2j)
    ref = wp(0.31 + 0.17j, w)
    try:
        set_precision("fast")
        fast = wp(0.31 + 0.17j, w)
    finally:
        set_precision("double")
    assert abs(fast - ref) < 1e-10 * abs(ref)
    with pytest.raises(KeyError):
        set_precision("quad")


def test_qseries_offsets():
    a = QSeries([1.0, 2.0], order=2)
    b = QSeries([0.5, -1.0], order=2)
    assert (a + b).coefficients == [1.5, 1.0]
    from fractions import Fraction
    c = QSeries([1.0], offset=Fraction(1, 24))
    with pytest.raises(ValueError):
        a + c

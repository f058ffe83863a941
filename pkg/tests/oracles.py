"""Independent oracles used by the test-suite.

Everything here is deliberately computed along different pipelines from
the package kernels:

* ``wp_brute``: truncated direct lattice sum with an Eisenstein tail
  correction (the correction constants come from the one-dimensional
  resummation below, not from the package's q-series).
* ``hurwitz_sum``: sum_{n in Z} (n + w)^-m in closed cotangent form, by exact
  polynomial recursion in cot.
* ``eisenstein_rows``: G_m(a) as a sum of horizontal-row hurwitz sums.
* ``zeta_direct``: Riemann zeta by direct summation with an Euler-Maclaurin
  tail (no Bernoulli numbers).
* cusp limits: the Im(tau) -> infinity forms of wp and zeta.
"""

import cmath
import math
from fractions import Fraction

import numpy as np


def zeta_direct(m: int, terms: int = 20000) -> float:
    k = np.arange(1, terms + 1, dtype=float)
    tail = terms ** (1 - m) / (m - 1) + 0.5 * terms ** (-m) \
        + m * terms ** (-m - 1) / 12.0
    return float(np.sum(k ** (-m))) + tail


def _cot_poly(m: int):
    # sum_{n in Z} (n+w)^-m = pi^m * Q_m(cot(pi w)); Q_2 = 1 + c^2,
    # Q_{m+1} = Q_m'(c) (1 + c^2) / m
    q = [Fraction(1), Fraction(0), Fraction(1)]
    for mm in range(2, m):
        dq = [i * c for i, c in enumerate(q)][1:]
        prod = [Fraction(0)] * (len(dq) + 2)
        for i, c in enumerate(dq):
            prod[i] += c
            prod[i + 2] += c
        q = [c / mm for c in prod]
    return q


def hurwitz_sum(m: int, w: complex) -> complex:
    """sum over n in Z of (n + w)^-m, m >= 2, w not an integer."""
    if abs(w.imag) > 30.0:
        # |sum| <= C exp(-2 pi |Im w|) < 1e-80 here; avoids cot overflow
        return 0j
    c = cmath.cos(math.pi * w) / cmath.sin(math.pi * w)
    val = 0j
    for coef in reversed(_cot_poly(m)):
        val = val * c + complex(coef)
    return math.pi**m * val


def eisenstein_rows(m: int, r0: Fraction, tau: complex, rows: int = None,
                    r1: Fraction = Fraction(0)) -> complex:
    """G_m(r0 + r1*tau) for the lattice Z + Z tau by row resummation."""
    if rows is None:
        rows = int(40.0 / (2.0 * math.pi * tau.imag)) + 3
    total = 0j
    r0, r1 = Fraction(r0), Fraction(r1)
    for n in range(-rows, rows + 1):
        shift = n + r1
        if shift == 0:
            if r0 % 1 == 0:
                total += 2.0 * zeta_direct(m) if m % 2 == 0 else 0.0
            else:
                total += hurwitz_sum(m, complex(r0))
        else:
            total += hurwitz_sum(m, complex(r0) + complex(shift) * tau)
    return total


def _half_row_tail(j: int, w: complex, m0: int) -> complex:
    # sum_{m >= m0} (m + w)^-j by Euler-Maclaurin (no cancellation)
    base = m0 + w
    return (base ** (1 - j) / (j - 1) + base ** (-j) / 2.0
            + j * base ** (-j - 1) / 12.0
            - j * (j + 1) * (j + 2) * base ** (-j - 3) / 720.0)


def _row_tail(j: int, w: complex, window: int) -> complex:
    # sum over |m| > window of (m + w)^-j
    return _half_row_tail(j, w, window + 1) \
        + (-1) ** j * _half_row_tail(j, -w, window + 1)


def _outside_power_sum(j: int, tau: complex, window: int) -> complex:
    """sum of (m + n*tau)^-j over index pairs outside the box |m|,|n| <= window."""
    total = 0j
    for n in range(-window, window + 1):
        total += _row_tail(j, n * tau, window)
    for n in range(window + 1, window + 60):
        rows = hurwitz_sum(j, n * tau) + hurwitz_sum(j, -n * tau)
        total += rows
        if abs(rows) < 1e-30:
            break
    return total


def wp_brute(z: complex, omega0: complex, omega1: complex, window: int = 250) -> complex:
    """Direct lattice sum for wp over the index box |m|, |n| <= window, plus
    tail corrections sum_k (k+1) z^k sum_outside w^-(k+2); the outside power
    sums are evaluated directly (row tails by Euler-Maclaurin, whole rows in
    cotangent closed form), never as differences of full lattice sums."""
    m, n = np.meshgrid(np.arange(-window, window + 1), np.arange(-window, window + 1))
    w = m * omega0 + n * omega1
    mask = (m != 0) | (n != 0)
    w = w[mask]
    s = np.sum(1.0 / (z - w) ** 2 - 1.0 / w**2)
    val = 1.0 / z**2 + s
    tau = omega1 / omega0
    for k in (1, 2, 3, 4, 5, 6):
        out = _outside_power_sum(k + 2, tau, window) / omega0 ** (k + 2)
        val += (k + 1) * z**k * out
    return complex(val)


def wp_cusp_limit(z: complex) -> complex:
    return math.pi**2 / cmath.sin(math.pi * z) ** 2 - math.pi**2 / 3.0


def wzeta_cusp_limit(z: complex) -> complex:
    return math.pi * cmath.cos(math.pi * z) / cmath.sin(math.pi * z) \
        + math.pi**2 / 3.0 * z

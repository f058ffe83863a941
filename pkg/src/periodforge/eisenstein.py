"""Classical and shifted Eisenstein series, and the per-type coefficient series.

For a frame with lattice Omega and a torsion shift a = r0*omega0 + r1*omega1,

    G_m(0) = sum_{w in Omega, w != 0} w^-m          (m >= 3)
    G_m(a) = sum_{w in Omega} (w + a)^-m            (a not in Omega, m >= 3)

Both converge absolutely for m >= 3.  Evaluation avoids raw double sums:

  * G_m(0) via the classical q-expansion
        G_m = 2 zeta(m) + 2 (2 pi i)^m / (m-1)! * sum sigma_{m-1}(n) q^n
    on the reduced basis (zero for odd m);
  * G_m(a) via the kernel derivative identity
        G_m(a) = p^(m-2)(-a) / (m-1)!.

The weight-1 and weight-2 quantities that replace the non-convergent sums
(p at a half or third period, and the zeta combination of type g2) are
exposed through ``exceptional_series``.

``series_coefficient`` returns the evaluators of the Laurent coefficients
A_n, B_n of the inverse functions x(z), y(z) of each type:

    a2:  x = z^-2/4 + sum_{n>=1} A_n z^(2n),   y = -z^-3/4 + sum B_n z^(2n-1)
    b2:  x = z^-1/2 + sum_{n>=0} A_n z^(2n+1), y = -z^-2/4 + sum B_n z^(2n)
    g2:  x = z^-1/2 + sum_{n>=0} A_n z^n,      y = -z^-1/2 + sum B_n z^n
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from . import backend
from .elliptic import TWO_PI_I, FramedPeriods, _frame_data, wp, wp_deriv, wzeta
from .errors import UnsupportedWeightError
from .families import CurveType, curve_type

_ALLOWED_SHIFTS = {Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)}


@dataclass(frozen=True)
class ShiftPoint:
    """Torsion shift a = r0*omega0 + r1*omega1, r_i in {0, 1/3, 1/2, 2/3} mod 1."""

    r0: Fraction
    r1: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "r0", Fraction(self.r0) % 1)
        object.__setattr__(self, "r1", Fraction(self.r1) % 1)
        for r in (self.r0, self.r1):
            if r not in _ALLOWED_SHIFTS:
                raise ValueError(f"shift denominator of {r} not supported (use 0, 1/3, 1/2, 2/3)")

    def is_zero(self) -> bool:
        return self.r0 == 0 and self.r1 == 0

    def point(self, w: FramedPeriods) -> complex:
        return complex(self.r0) * w.omega0 + complex(self.r1) * w.omega1

    def __neg__(self) -> "ShiftPoint":
        return ShiftPoint(-self.r0, -self.r1)


@lru_cache(maxsize=128)
def _bernoulli(n: int) -> Fraction:
    if n == 0:
        return Fraction(1)
    out = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += Fraction(math.comb(m + 1, j)) * out[j]
        out.append(-acc / (m + 1))
    return out[n]


@lru_cache(maxsize=128)
def zeta_even(m: int) -> float:
    """Riemann zeta at a positive even integer, via Bernoulli numbers."""
    if m < 2 or m % 2:
        raise ValueError("even positive argument required")
    k = m // 2
    val = Fraction((-1) ** (k + 1), 2) * _bernoulli(m) / Fraction(math.factorial(m))
    return float(val) * (2.0 * math.pi) ** m


def eisenstein_G(m: int, a: ShiftPoint, w: FramedPeriods) -> complex:
    """Shifted Eisenstein series G_m(a) of weight m >= 3 on the frame's lattice."""
    if m <= 2:
        raise UnsupportedWeightError(
            f"G_{m} does not converge absolutely; use exceptional_series "
            "('p_half', 'p_third', 'zeta_combo') for the low-weight quantities")
    if a.is_zero():
        if m % 2:
            return 0.0 + 0.0j
        w0p, _, _, q, kmax, _ = _frame_data(w.omega0, w.omega1)
        s = 2.0 * zeta_even(m) \
            + 2.0 * TWO_PI_I**m / math.factorial(m - 1) * backend.lambert(q, m - 1, kmax)
        return s / w0p**m
    return wp_deriv(-a.point(w), w, m - 2) / math.factorial(m - 1)


# -- exceptional low-weight series ------------------------------------------

def _p_half(w: FramedPeriods) -> complex:
    return wp(w.omega0 / 2.0, w)


def _p_third(w: FramedPeriods) -> complex:
    return wp(w.omega0 / 3.0, w)


def _zeta_combo(w: FramedPeriods) -> complex:
    return wzeta(w.omega0 / 3.0, w) - 2.0 / 3.0 * wzeta(w.omega0 / 2.0, w)


_EXCEPTIONAL = {
    ("b2", "p_half"): (_p_half, 2),
    ("g2", "p_third"): (_p_third, 2),
    ("g2", "zeta_combo"): (_zeta_combo, 1),
}


def exceptional_series(t: CurveType, name: str) -> Callable[[FramedPeriods], complex]:
    """Evaluator of a low-weight series: p(omega0/2), p(omega0/3), or
    zeta(omega0/3) - (2/3) zeta(omega0/2)."""
    t = curve_type(t)
    try:
        return _EXCEPTIONAL[(t.key, name)][0]
    except KeyError:
        raise KeyError(f"no exceptional series {name!r} for type {t.key}") from None


# -- Laurent-coefficient evaluators ------------------------------------------

def series_coefficient(t: CurveType, which: str, n: int) -> Callable[[FramedPeriods], complex]:
    """Evaluator of the coefficient A_n (which='A') or B_n (which='B') of x(z), y(z)."""
    t = curve_type(t)
    if which not in ("A", "B"):
        raise ValueError("which must be 'A' or 'B'")
    half = ShiftPoint(Fraction(1, 2))
    third = ShiftPoint(Fraction(1, 3))
    two_thirds = ShiftPoint(Fraction(2, 3))
    zero = ShiftPoint(Fraction(0))

    if t.key == "a2":
        if n < 1:
            raise ValueError("a2 coefficients are defined for n >= 1")
        if which == "A":
            return lambda w: (2 * n + 1) / 4.0 * eisenstein_G(2 * n + 2, zero, w)
        return lambda w: (2 * n + 1) * n / 4.0 * eisenstein_G(2 * n + 2, zero, w)

    if t.key == "b2":
        if n < 0:
            raise ValueError("b2 coefficients are defined for n >= 0")
        if n == 0:
            fac = 0.5 if which == "A" else 0.25
            return lambda w: fac * _p_half(w)
        fac = 0.5 if which == "A" else (2 * n + 1) / 4.0
        return lambda w: fac * (eisenstein_G(2 * n + 2, half, w)
                                - eisenstein_G(2 * n + 2, zero, w))

    if n < 0:
        raise ValueError("g2 coefficients are defined for n >= 0")
    if n == 0:
        if which == "A":
            return lambda w: (wzeta(w.omega0 / 3.0, w) / 3.0
                              - wzeta(2.0 * w.omega0 / 3.0, w) / 6.0)
        return lambda w: (wzeta(w.omega0 / 3.0, w)
                          - wzeta(2.0 * w.omega0 / 3.0, w) / 2.0)
    if n == 1:
        fac = 0.5 if which == "A" else -0.5
        return lambda w: fac * _p_third(w)
    if which == "A":
        return lambda w: 0.5 * (eisenstein_G(n + 1, third, w)
                                - eisenstein_G(n + 1, zero, w))
    return lambda w: (0.5 * eisenstein_G(n + 1, zero, w)
                      + 0.5 * eisenstein_G(n + 1, third, w)
                      - eisenstein_G(n + 1, two_thirds, w))


# -- slash operator / cusp values --------------------------------------------

def slash_value(f: Callable[[FramedPeriods], complex], m: int, gamma: str,
                height: float = 10.0) -> complex:
    """Approximate cusp value of the weight-m form attached to a homogeneous
    evaluator f (f(c*w) = c^-m f(w)).

    gamma='E' evaluates omega0^m * f at the frame (1, i*height); gamma='S'
    transports the cusp 0 to i*infinity first.  At the default height,
    |q| = exp(-2 pi height) makes the truncation error far below 1e-6.
    """
    if gamma == "E":
        return f(FramedPeriods(1.0, 1j * height))
    if gamma == "S":
        tau = 1j * height
        return f(FramedPeriods(1.0, -1.0 / tau)) * tau ** (-m)
    raise ValueError("gamma must be 'E' or 'S'")

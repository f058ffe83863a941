"""The three rank-2 families of affine elliptic curves and their gradings.

The package computes with three classical one-parameter families, tagged by
the crystallographic dihedral types ``a2``, ``b2``, ``g2`` (p = 3, 4, 6):

    a2:  F(x, y, g) = y^2 - (4x^3 - gs*x - gl)            (Weierstrass)
    b2:  F(x, y, g) = y^2 - (x^4 - gs*x^2 + gl + gs^2/8)  (Legendre-Jacobi)
    g2:  F(x, y, g) = x*(y^2 - x^2) + gs*(3x^2 + y^2) - gl - 2*gs^3   (Hesse)

All variables are quasi-homogeneous.  Normalizing wt(F) = 1:

    type   wt(x)  wt(y)  wt(gs)  wt(gl)  wt(Delta)  wt(z)
    a2     1/3    1/2    2/3     1       2          -1/6
    b2     1/4    1/2    1/2     1       3          -1/4
    g2     1/3    1/3    1/3     1       4          -1/3

where z is the time coordinate of the Hamiltonian flow attached to F and
wt(z) = wt(x) + wt(y) - wt(F) is negative for all three types.

The curve of type ``t`` acquires N = level(t) points at infinity; the linear
automorphism ``sigma`` permutes them cyclically and fixes F.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exactpoly import GradedPoly

F0 = Fraction(0)


@dataclass(frozen=True)
class CurveType:
    """Discrete tag carrying every per-type constant.

    Attributes
    ----------
    key : one of "a2", "b2", "g2".
    p : dihedral index (3, 4, 6).
    level : number N = p//2 of points at infinity; the congruence level.
    k : Coxeter-system integer (6, 4, 3) controlling the character and the
        power root of the discriminant.
    d : denominator in the coefficient grading wt(A_n) = (1+n)/d.
    weights : weight of each symbol, keyed by "x","y","gs","gl","z","F","disc".
    disc_const : boundary constant c of the totally real chamber
        ``-|gs|^(p/2) < c*gl < |gs|^(p/2)`` (sqrt(27), 8, 1/2); kept for
        documentation and chamber tests only.
    """

    key: str
    p: int
    level: int
    k: int
    d: int
    weights: dict = field(repr=False)
    disc_const: float = field(repr=False)

    @property
    def n0(self) -> int:
        """Index whose Laurent coefficient has weight 1 (the energy step)."""
        return self.d - 1

    @property
    def frame_weight_gs(self) -> int:
        """gs picks up s**-frame_weight_gs when the frame is scaled by s."""
        return int(-self.weights["gs"] / self.weights["z"])

    @property
    def frame_weight_gl(self) -> int:
        return int(-self.weights["gl"] / self.weights["z"])

    def gpoly(self, coeffs) -> GradedPoly:
        return GradedPoly(coeffs, self.weights["gs"], self.weights["gl"])

    def __str__(self):
        return self.key


A2 = CurveType(
    key="a2", p=3, level=1, k=6, d=3,
    weights={"x": Fraction(1, 3), "y": Fraction(1, 2), "gs": Fraction(2, 3),
             "gl": Fraction(1), "z": Fraction(-1, 6), "F": Fraction(1),
             "disc": Fraction(2)},
    disc_const=math.sqrt(27.0),
)

B2 = CurveType(
    key="b2", p=4, level=2, k=4, d=2,
    weights={"x": Fraction(1, 4), "y": Fraction(1, 2), "gs": Fraction(1, 2),
             "gl": Fraction(1), "z": Fraction(-1, 4), "F": Fraction(1),
             "disc": Fraction(3)},
    disc_const=8.0,
)

G2 = CurveType(
    key="g2", p=6, level=3, k=3, d=3,
    weights={"x": Fraction(1, 3), "y": Fraction(1, 3), "gs": Fraction(1, 3),
             "gl": Fraction(1), "z": Fraction(-1, 3), "F": Fraction(1),
             "disc": Fraction(4)},
    disc_const=0.5,
)

ALL_TYPES = (A2, B2, G2)
_BY_KEY = {t.key: t for t in ALL_TYPES}


def curve_type(key) -> CurveType:
    """Look up a CurveType by its key ("a2"/"b2"/"g2"), passing instances through."""
    if isinstance(key, CurveType):
        return key
    try:
        return _BY_KEY[str(key).lower()]
    except KeyError:
        raise KeyError(f"unknown curve type {key!r}; expected one of a2, b2, g2") from None


@dataclass(frozen=True)
class ModuliPoint:
    """A point g = (gs, gl) of the base space of a family."""

    gs: complex
    gl: complex
    type: CurveType

    def as_tuple(self):
        return (self.gs, self.gl)


@dataclass(frozen=True)
class CurvePoint:
    """An affine point (x, y); membership in a fiber is checked via evaluate_F."""

    x: complex
    y: complex


def evaluate_F(t: CurveType, pt: CurvePoint, g: ModuliPoint) -> complex:
    """Defining polynomial of the family of type ``t`` at (pt, g)."""
    t = curve_type(t)
    x, y = pt.x, pt.y
    gs, gl = g.gs, g.gl
    if t.key == "a2":
        return y * y - (4 * x**3 - gs * x - gl)
    if t.key == "b2":
        return y * y - (x**4 - gs * x * x + gl + gs * gs / 8)
    return x * (y * y - x * x) + gs * (3 * x * x + y * y) - gl - 2 * gs**3


def grad_F(t: CurveType, pt: CurvePoint, g: ModuliPoint):
    """Gradient (dF/dx, dF/dy) at (pt, g); its zero locus is the critical set."""
    t = curve_type(t)
    x, y = pt.x, pt.y
    gs = g.gs
    if t.key == "a2":
        return (-12 * x * x + gs, 2 * y)
    if t.key == "b2":
        return (-4 * x**3 + 2 * gs * x, 2 * y)
    return (y * y - 3 * x * x + 6 * gs * x, 2 * x * y + 2 * gs * y)


# Discriminants, with the multiplicity structure used downstream.  The (+)
# factor is listed first.  The a2 discriminant is irreducible over Q[gs, gl]
# and is kept unfactored.

def _disc_polys(t: CurveType):
    t = curve_type(t)
    if t.key == "a2":
        full = t.gpoly({(0, 2): -27, (3, 0): 1})
        return [(full, 1)], full
    if t.key == "b2":
        plus = t.gpoly({(0, 1): 8, (2, 0): 1})
        minus = t.gpoly({(0, 1): -8, (2, 0): 1})
        red = t.gpoly({(0, 2): -64, (4, 0): 1})
        return [(plus, 1), (minus, 2)], red
    plus = t.gpoly({(0, 1): 1, (3, 0): 2})
    minus = t.gpoly({(0, 1): -1, (3, 0): 2})
    red = t.gpoly({(0, 2): -1, (6, 0): 4})
    return [(plus, 1), (minus, 3)], red


def discriminant_factors(t: CurveType):
    """Ordered list of (irreducible factor, multiplicity) as GradedPoly."""
    return _disc_polys(t)[0]


def discriminant_poly(t: CurveType) -> GradedPoly:
    """The discriminant as an exact polynomial, multiplicities included."""
    factors = discriminant_factors(t)
    out = curve_type(t).gpoly({(0, 0): 1})
    for f, m in factors:
        out = out * f**m
    return out


def reduced_discriminant_poly(t: CurveType) -> GradedPoly:
    """Square-free part of the discriminant (product of distinct factors)."""
    return _disc_polys(t)[1]


def discriminant(t: CurveType, g: ModuliPoint) -> complex:
    return discriminant_poly(t).eval(g.gs, g.gl)


def reduced_discriminant(t: CurveType, g: ModuliPoint) -> complex:
    return reduced_discriminant_poly(t).eval(g.gs, g.gl)


def sigma_action(t: CurveType, pt: CurvePoint) -> CurvePoint:
    """Order-N linear curve automorphism; fixes F and permutes the infinities."""
    t = curve_type(t)
    if t.key == "a2":
        return pt
    if t.key == "b2":
        return CurvePoint(-pt.x, -pt.y)
    return CurvePoint((pt.y - pt.x) / 2, (-3 * pt.x - pt.y) / 2)


def _fractional_power(s: complex, e: Fraction) -> complex:
    # principal branch: exact for s in the slit plane C minus the ray (-inf, 0]
    if s == 0:
        raise ValueError("scale factor must be nonzero")
    return cmath.exp(complex(e) * cmath.log(s))


def scale_action(t: CurveType, s: complex, pt: CurvePoint, g: ModuliPoint):
    """Weighted rescaling (x,y,gs,gl) -> (s^wt(x) x, ..., s^wt(gl) gl).

    Fractional powers use the principal branch, so the action is exact only
    for s in the slit plane (in particular for real s > 0, which is what the
    homogeneity tests use).  F scales by s^wt(F) = s.
    """
    t = curve_type(t)
    w = t.weights
    pt2 = CurvePoint(_fractional_power(s, w["x"]) * pt.x,
                     _fractional_power(s, w["y"]) * pt.y)
    g2 = ModuliPoint(_fractional_power(s, w["gs"]) * g.gs,
                     _fractional_power(s, w["gl"]) * g.gl, t)
    return pt2, g2

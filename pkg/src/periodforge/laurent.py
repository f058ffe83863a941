"""Exact Laurent-series solutions of the Hamiltonian system at infinity.

For each type the pair (x(z), y(z)) solving

    dx/dz = dF/dy,   dy/dz = -dF/dx,   F(x, y, g) = 0

has a formal Laurent expansion at every point at infinity of the fiber; there
are exactly N = level(t) such branches, with exponent supports

    a2:        x in z^(2n),   y in z^(2n-1)              (one branch)
    b2:        x in z^(2n+1), y in z^(2n)                (two branches)
    g2, inf1/2: all integer powers                        (poles in x and y)
    g2, inf3:  x in even powers >= 0, y in odd powers    (x has no pole)

and coefficients that are exact rational weighted-homogeneous polynomials in
(gs, gl): the coefficient of z^P in x has weight wt(x) - P*wt(z), equivalently
the n-th coefficient pair has weight (1+n)/d.

The solver pins the leading pole coefficients of each branch (they are
constants forced by the leading balance of the system), then walks level by
level: the two Hamilton equations determine each coefficient pair linearly,
except at the single level n0 = d-1 of weight 1 where the 2x2 system is
singular and the energy constraint F = 0 (its z^0 coefficient, which contains
gl linearly) supplies the missing equation.  The linear systems are extracted
by evaluating the residual at probe values, so the implementation stays
uniform over types and branches, and every solve is exact over Q.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional

from .errors import InternalConsistencyError
from .exactpoly import GradedPoly
from .families import CurveType, curve_type

BIG = 10**9


class LaurentSeries:
    """Truncated Laurent series in the local coordinate with GradedPoly
    coefficients.  ``known`` bounds the exponents whose coefficients are
    final; arithmetic propagates the bound conservatively."""

    __slots__ = ("c", "known", "wgs", "wgl")

    def __init__(self, coeffs: Dict[int, GradedPoly], known: int, wgs, wgl):
        self.c = {p: v for p, v in coeffs.items() if not v.is_zero()}
        self.known = known
        self.wgs = wgs
        self.wgl = wgl

    def _zero_poly(self) -> GradedPoly:
        return GradedPoly.zero(self.wgs, self.wgl)

    def min_possible_exp(self) -> int:
        # below this exponent every coefficient is known to vanish
        return min(self.c) if self.c else self.known + 1

    def coeff(self, p: int) -> GradedPoly:
        if p > self.known:
            raise InternalConsistencyError(
                f"coefficient of power {p} requested beyond validity bound {self.known}")
        return self.c.get(p, self._zero_poly())

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        known = min(self.known, other.known)
        out = {p: v for p, v in self.c.items() if p <= known}
        for p, v in other.c.items():
            if p <= known:
                out[p] = out.get(p, self._zero_poly()) + v
        return LaurentSeries(out, known, self.wgs, self.wgl)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + other.scale(Fraction(-1))

    def scale(self, factor) -> "LaurentSeries":
        if isinstance(factor, GradedPoly):
            return LaurentSeries({p: v * factor for p, v in self.c.items()},
                                 self.known, self.wgs, self.wgl)
        f = Fraction(factor)
        return LaurentSeries({p: v * f for p, v in self.c.items()},
                             self.known, self.wgs, self.wgl)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        known = min(self.known + other.min_possible_exp(),
                    other.known + self.min_possible_exp())
        known = min(known, BIG)
        out: Dict[int, GradedPoly] = {}
        for p1, v1 in self.c.items():
            for p2, v2 in other.c.items():
                p = p1 + p2
                if p > known:
                    continue
                prod = v1 * v2
                out[p] = out.get(p, self._zero_poly()) + prod
        return LaurentSeries(out, known, self.wgs, self.wgl)

    def diff(self) -> "LaurentSeries":
        return LaurentSeries({p - 1: v * Fraction(p) for p, v in self.c.items() if p != 0},
                             self.known - 1, self.wgs, self.wgl)


def _const_series(poly: GradedPoly) -> LaurentSeries:
    return LaurentSeries({0: poly}, BIG, poly.wgs, poly.wgl)


def _symbols(t: CurveType):
    w = t.weights
    gs = GradedPoly.gs(w["gs"], w["gl"])
    gl = GradedPoly.gl(w["gs"], w["gl"])
    one = GradedPoly.const(1, w["gs"], w["gl"])
    return gs, gl, one


def fy_series(t: CurveType, x: LaurentSeries, y: LaurentSeries) -> LaurentSeries:
    t = curve_type(t)
    gs, _, _ = _symbols(t)
    if t.key in ("a2", "b2"):
        return y.scale(Fraction(2))
    return (x * y).scale(Fraction(2)) + y.scale(gs * 2)


def fx_series(t: CurveType, x: LaurentSeries, y: LaurentSeries) -> LaurentSeries:
    t = curve_type(t)
    gs, _, _ = _symbols(t)
    if t.key == "a2":
        return (x * x).scale(Fraction(-12)) + _const_series(gs)
    if t.key == "b2":
        return (x * x * x).scale(Fraction(-4)) + x.scale(gs * 2)
    return (y * y) + (x * x).scale(Fraction(-3)) + x.scale(gs * 6)


def f_series(t: CurveType, x: LaurentSeries, y: LaurentSeries) -> LaurentSeries:
    t = curve_type(t)
    gs, gl, _ = _symbols(t)
    if t.key == "a2":
        return (y * y) + (x * x * x).scale(Fraction(-4)) + x.scale(gs) + _const_series(gl)
    if t.key == "b2":
        return (y * y) - (x * x * x * x) + (x * x).scale(gs) \
            + _const_series(gl * Fraction(-1) - gs * gs * Fraction(1, 8))
    return (x * y * y) - (x * x * x) + (x * x).scale(gs * 3) + (y * y).scale(gs) \
        + _const_series(gl * Fraction(-1) - gs * gs * gs * Fraction(2))


# -- branch bookkeeping -------------------------------------------------------

@dataclass(frozen=True)
class _Branch:
    x_init: dict          # leading pole-block coefficients, power -> Fraction
    y_init: dict
    x_power: Optional[callable]   # level n -> exponent of the x unknown (or None)
    y_power: Optional[callable]
    n0_level: int


def _branch(t: CurveType, infinity: int) -> _Branch:
    t = curve_type(t)
    if not 1 <= infinity <= t.level:
        raise ValueError(f"infinity index {infinity} out of range 1..{t.level} for {t.key}")
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    if t.key == "a2":
        return _Branch({-2: quarter}, {-3: -quarter},
                       lambda n: 2 * n, lambda n: 2 * n - 1, 2)
    if t.key == "b2":
        s = 1 if infinity == 1 else -1
        return _Branch({-1: s * half}, {-2: -s * quarter},
                       lambda n: 2 * n + 1, lambda n: 2 * n, 1)
    if infinity == 1:
        return _Branch({-1: half}, {-1: -half}, lambda n: n, lambda n: n, 2)
    if infinity == 2:
        return _Branch({-1: -half}, {-1: -half}, lambda n: n, lambda n: n, 2)
    return _Branch({}, {-1: Fraction(1)},
                   lambda n: n if n % 2 == 0 else None,
                   lambda n: n if n % 2 == 1 else None, 2)


@dataclass
class FormalSolution:
    """Exact truncated Laurent solution of one branch.

    ``x`` and ``y`` map z-exponents to GradedPoly coefficients (zeros
    omitted); all exponents <= order are final.
    """

    type: CurveType
    infinity: int
    order: int
    x: Dict[int, GradedPoly]
    y: Dict[int, GradedPoly]

    def series(self, which: str) -> LaurentSeries:
        t = self.type
        data = self.x if which == "x" else self.y
        return LaurentSeries(dict(data), self.order, t.weights["gs"], t.weights["gl"])

    def eval_x(self, z: complex, gs: complex, gl: complex) -> complex:
        return sum(poly.eval(gs, gl) * z**p for p, poly in self.x.items())

    def eval_y(self, z: complex, gs: complex, gl: complex) -> complex:
        return sum(poly.eval(gs, gl) * z**p for p, poly in self.y.items())

    def rows(self, which: str):
        data = self.x if which == "x" else self.y
        out = []
        for p in sorted(data):
            for key, val in data[p].items():
                out.append((p, GradedPoly.monomial_name(key),
                            val.numerator, val.denominator))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf)
        for which in ("x", "y"):
            buf.write(f"# function: {which}\n")
            wr.writerow(["power", "monomial", "numerator", "denominator"])
            wr.writerows(self.rows(which))
        return buf.getvalue()

    def to_json(self) -> str:
        def encode(data):
            return {str(p): {GradedPoly.monomial_name(k): f"{v.numerator}/{v.denominator}"
                             for k, v in data[p].items()} for p in sorted(data)}
        return json.dumps({"type": self.type.key, "infinity": self.infinity,
                           "order": self.order,
                           "x": encode(self.x), "y": encode(self.y)}, indent=1)


def recurrence_determinant(t: CurveType, n: int) -> int:
    """Tabulated determinant values attached to the order-n induction step;
    positive for all n past the energy level n0 of each type."""
    t = curve_type(t)
    if t.key == "a2":
        return 2 * (2 * n + 3) * (n - 2)
    if t.key == "b2":
        return 2 * (2 * n - 3) * (n + 2)
    return (n + 2) * (n - 2)


def _expected_weight(t: CurveType, which: str, power: int) -> Fraction:
    return t.weights[which] - power * t.weights["z"]


def _solve_level(t, br, x, y, level, order):
    """Determine the unknown coefficient(s) at one level; returns False when
    every slot exponent exceeds the requested order."""
    gs_w, gl_w = t.weights["gs"], t.weights["gl"]
    px = br.x_power(level)
    py = br.y_power(level)
    slots = []
    if px is not None:
        slots.append(("x", px))
    if py is not None:
        slots.append(("y", py))
    if not slots or min(p for _, p in slots) > order:
        return False
    bound = max(p for _, p in slots)

    eqs = [("hx", px - 1)] if px is not None else []
    if py is not None:
        eqs.append(("hy", py - 1))
    if level == br.n0_level:
        eqs.append(("en", 0))

    def residual(trial):
        xc = dict(x)
        yc = dict(y)
        for (kind, p), val in zip(slots, trial):
            target = xc if kind == "x" else yc
            target[p] = GradedPoly.const(val, gs_w, gl_w)
        xs = LaurentSeries(xc, bound, gs_w, gl_w)
        ys = LaurentSeries(yc, bound, gs_w, gl_w)
        out = []
        for eq, p in eqs:
            if eq == "hx":
                ser = xs.diff() - fy_series(t, xs, ys)
            elif eq == "hy":
                ser = ys.diff() + fx_series(t, xs, ys)
            else:
                ser = f_series(t, xs, ys)
            out.append(ser.coeff(p))
        return out

    zeros = [Fraction(0)] * len(slots)
    base = residual(zeros)
    cols = []
    for i in range(len(slots)):
        trial = list(zeros)
        trial[i] = Fraction(1)
        probe = residual(trial)
        col = []
        for r0, r1 in zip(base, probe):
            delta = r1 - r0
            if not delta.is_rational():
                raise InternalConsistencyError(
                    "unknown enters an equation with a non-constant factor")
            col.append(delta.rational_value())
        cols.append(col)

    # exact Gaussian elimination on the (len(eqs) x len(slots)) system
    rows = [([cols[i][r] for i in range(len(slots))], -base[r]) for r in range(len(eqs))]
    solution = [None] * len(slots)
    for i in range(len(slots)):
        pivot = next((r for r in range(i, len(rows)) if rows[r][0][i] != 0), None)
        if pivot is None:
            raise InternalConsistencyError(
                f"singular system at level {level} of {t.key} branch")
        rows[i], rows[pivot] = rows[pivot], rows[i]
        pc, prhs = rows[i]
        for r in range(len(rows)):
            if r == i or rows[r][0][i] == 0:
                continue
            f = rows[r][0][i] / pc[i]
            rows[r] = ([a - f * b for a, b in zip(rows[r][0], pc)],
                       rows[r][1] - prhs * f)
    for i in range(len(slots)):
        coeffs, rhs = rows[i]
        solution[i] = rhs * (Fraction(1) / coeffs[i])
    for r in range(len(slots), len(rows)):
        coeffs, rhs = rows[r]
        if any(cf != 0 for cf in coeffs) or not rhs.is_zero():
            raise InternalConsistencyError(
                f"inconsistent overdetermined system at level {level} of {t.key}")

    for (kind, p), val in zip(slots, solution):
        expected = _expected_weight(t, kind, p)
        if not val.is_zero():
            if val.weight() != expected:
                raise InternalConsistencyError(
                    f"coefficient at power {p} has weight {val.weight()}, expected {expected}")
            (x if kind == "x" else y)[p] = val
    return True


def solve_formal(t: CurveType, infinity: int, order: int = 16) -> FormalSolution:
    """Solve the formal system for one infinity branch through z^order.

    Coefficients are exact rationals; the returned solution satisfies both
    Hamilton equations and the energy constraint identically through the
    truncation order (see residual_check).
    """
    t = curve_type(t)
    br = _branch(t, infinity)
    gs_w, gl_w = t.weights["gs"], t.weights["gl"]
    x = {p: GradedPoly.const(v, gs_w, gl_w) for p, v in br.x_init.items()}
    y = {p: GradedPoly.const(v, gs_w, gl_w) for p, v in br.y_init.items()}
    level = 0
    while _solve_level(t, br, x, y, level, order):
        level += 1
    return FormalSolution(t, infinity, order, x, y)


def residual_check(sol: FormalSolution):
    """The three defect series (dx/dz - dF/dy, dy/dz + dF/dx, F) of a solution.

    Each returned LaurentSeries must vanish identically through its validity
    bound; any stored coefficient is a genuine defect.
    """
    t = sol.type
    xs = sol.series("x")
    ys = sol.series("y")
    hx = xs.diff() - fy_series(t, xs, ys)
    hy = ys.diff() + fx_series(t, xs, ys)
    en = f_series(t, xs, ys)
    return hx, hy, en


def apply_sigma(sol: FormalSolution) -> FormalSolution:
    """Push a solution through the curve automorphism; the image is the branch
    of the next infinity point (indices cycle 1 -> 2 -> ... -> N -> 1)."""
    t = sol.type
    if t.key == "a2":
        return FormalSolution(t, sol.infinity, sol.order, dict(sol.x), dict(sol.y))
    if t.key == "b2":
        x = {p: -v for p, v in sol.x.items()}
        y = {p: -v for p, v in sol.y.items()}
    else:
        powers = set(sol.x) | set(sol.y)
        zero = GradedPoly.zero(t.weights["gs"], t.weights["gl"])
        x, y = {}, {}
        for p in powers:
            xv = sol.x.get(p, zero)
            yv = sol.y.get(p, zero)
            nx = (yv - xv) * Fraction(1, 2)
            ny = (xv * Fraction(-3) - yv) * Fraction(1, 2)
            if not nx.is_zero():
                x[p] = nx
            if not ny.is_zero():
                y[p] = ny
    nxt = sol.infinity % curve_type(t).level + 1
    return FormalSolution(t, nxt, sol.order, x, y)

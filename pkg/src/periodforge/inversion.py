"""The inversion map E from framed periods to moduli, and the meromorphic
inverse functions x(z), y(z).

Closed forms (all on the lattice of the frame, with half/third periods taken
along omega0):

    a2:  gs = (15/4) G_4(0)            gl = (35/16) G_6(0)
    b2:  gs = (3/2) p(omega0/2)
         gl = (5/32) p(omega0/2)^2 + (5/8) G_4(0) - (5/8) G_4(omega0/2)
    g2:  gs = zeta(omega0/3) - (2/3) zeta(omega0/2)
         gl = 2 gs^3 - G_3(omega0/3)
         (cross-check: gs^2 = p(omega0/3)/3)

and the partial-fraction expansions

    a2:  x = p(z)/4
         y = p'(z)/8
    b2:  x = -zeta(omega0/2)/2 + zeta(z)/2 - zeta(z - omega0/2)/2
         y = -p(z)/4 + p(z - omega0/2)/4
    g2:  x = -zeta(omega0/3)/6 - zeta(2 omega0/3)/6 + zeta(z)/2 - zeta(z - omega0/3)/2
         y = +zeta(omega0/3)/2 + zeta(2 omega0/3)/2 - zeta(z)/2
             - zeta(z - omega0/3)/2 + zeta(z - 2 omega0/3)

The zeta coefficients in x and y sum to zero, so both functions are honestly
doubly periodic.  E is invariant under the congruence group of the type and
inverts the forward period map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .eisenstein import ShiftPoint, eisenstein_G
from .elliptic import FramedPeriods, lattice_distance, wp, wp_prime, wzeta
from .errors import InconsistencyError, PoleError
from .families import CurveType, ModuliPoint, curve_type, discriminant

_HALF = ShiftPoint(Fraction(1, 2))
_THIRD = ShiftPoint(Fraction(1, 3))
_ZERO = ShiftPoint(Fraction(0))

# fixed interior sample points (fractions of the frame) for the diagnostics
_DIAG_SAMPLES = ((0.2311, 0.1713), (0.4097, 0.3512))


def moduli_from_frame(t: CurveType, w: FramedPeriods):
    """The pair (gs, gl) of the inversion map, without diagnostics."""
    t = curve_type(t)
    if t.key == "a2":
        gs = 3.75 * eisenstein_G(4, _ZERO, w)
        gl = 35.0 / 16.0 * eisenstein_G(6, _ZERO, w)
        return gs, gl
    if t.key == "b2":
        ph = wp(w.omega0 / 2.0, w)
        gs = 1.5 * ph
        gl = 5.0 / 32.0 * ph * ph + 0.625 * (eisenstein_G(4, _ZERO, w)
                                             - eisenstein_G(4, _HALF, w))
        return gs, gl
    gs = wzeta(w.omega0 / 3.0, w) - 2.0 / 3.0 * wzeta(w.omega0 / 2.0, w)
    gl = 2.0 * gs**3 - eisenstein_G(3, _THIRD, w)
    return gs, gl


@dataclass
class InversionResult:
    g: ModuliPoint
    diagnostics: dict = field(default_factory=dict)


def invert(t: CurveType, w: FramedPeriods, check: bool = True) -> InversionResult:
    """Moduli point of a frame, with residual diagnostics.

    Diagnostics record |F(x(z), y(z), g)| at fixed sample points, |Delta(g)|
    (flagged when closer to zero than 1e-12 of its natural scale), and for
    type g2 the relative defect of gs^2 = p(omega0/3)/3, which must stay
    below 1e-9 (an InconsistencyError otherwise signals kernel inaccuracy).
    """
    t = curve_type(t)
    gs, gl = moduli_from_frame(t, w)
    g = ModuliPoint(gs, gl, t)
    diag = {}
    if t.key == "g2" and check:
        target = wp(w.omega0 / 3.0, w) / 3.0
        rel = abs(gs * gs - target) / max(abs(target), 1e-300)
        diag["gs_square_defect"] = rel
        if rel > 1e-9:
            raise InconsistencyError(
                f"gs^2 cross-check failed for g2 frame {w}: relative defect {rel:.3e}")
    if check:
        disc = discriminant(t, g)
        wd = t.weights["disc"]
        scale = (abs(gs) ** float(wd / t.weights["gs"])
                 + abs(gl) ** float(wd / t.weights["gl"]) + 1e-300)
        diag["abs_discriminant"] = abs(disc)
        diag["discriminant_flag"] = bool(abs(disc) < 1e-12 * scale)
        energy = 0.0
        for f0, f1 in _DIAG_SAMPLES:
            z = f0 * w.omega0 + f1 * w.omega1
            fx = x_of_z(t, z, w, g=g)
            fy = y_of_z(t, z, w, g=g)
            energy = max(energy, abs(_energy(t, fx, fy, gs, gl)))
        diag["energy_residual"] = energy
    return InversionResult(g, diag)


def _energy(t, x, y, gs, gl):
    if t.key == "a2":
        return y * y - (4.0 * x**3 - gs * x - gl)
    if t.key == "b2":
        return y * y - (x**4 - gs * x * x + gl + gs * gs / 8.0)
    return x * (y * y - x * x) + gs * (3.0 * x * x + y * y) - gl - 2.0 * gs**3


def pole_set_fractions(t: CurveType, which: str):
    """Pole locations of x(z) or y(z) as multiples of omega0/N, modulo the lattice."""
    t = curve_type(t)
    if t.key == "a2":
        return (0,)
    if t.key == "b2":
        return (0, 1)
    return (0, 1) if which == "x" else (0, 1, 2)


def pole_distance(t: CurveType, z: complex, w: FramedPeriods, which: str = "y") -> float:
    """Distance from z to the poles of x(z) (which='x') or y(z) (which='y')."""
    t = curve_type(t)
    n = t.level
    return min(lattice_distance(z - k * w.omega0 / n, w)
               for k in pole_set_fractions(t, which))


def _guard(t, z, w, which, tol):
    d = pole_distance(t, z, w, which)
    if d < tol * abs(w.omega0):
        raise PoleError(f"{which}(z) evaluated {d:.3e} away from a pole")
    return d


def x_of_z(t: CurveType, z: complex, w: FramedPeriods, g=None,
           pole_tol: float = 1e-9) -> complex:
    t = curve_type(t)
    _guard(t, z, w, "x", pole_tol)
    if t.key == "a2":
        return wp(z, w) / 4.0
    if t.key == "b2":
        half = w.omega0 / 2.0
        return -0.5 * wzeta(half, w) + 0.5 * wzeta(z, w) - 0.5 * wzeta(z - half, w)
    third = w.omega0 / 3.0
    return (-wzeta(third, w) / 6.0 - wzeta(2.0 * third, w) / 6.0
            + 0.5 * wzeta(z, w) - 0.5 * wzeta(z - third, w))


def y_of_z(t: CurveType, z: complex, w: FramedPeriods, g=None,
           pole_tol: float = 1e-9) -> complex:
    t = curve_type(t)
    _guard(t, z, w, "y", pole_tol)
    if t.key == "a2":
        return wp_prime(z, w) / 8.0
    if t.key == "b2":
        half = w.omega0 / 2.0
        return -0.25 * wp(z, w) + 0.25 * wp(z - half, w)
    third = w.omega0 / 3.0
    return (0.5 * wzeta(third, w) + 0.5 * wzeta(2.0 * third, w)
            - 0.5 * wzeta(z, w) - 0.5 * wzeta(z - third, w)
            + wzeta(z - 2.0 * third, w))


def hamilton_residual(t: CurveType, z: complex, w: FramedPeriods, g=None):
    """Defect of the Hamilton equations at z, derivatives by Richardson-refined
    central differences with step 1e-5 of the pole distance."""
    t = curve_type(t)
    if g is None:
        g = invert(t, w, check=False).g
    d = min(_guard(t, z, w, "x", 1e-7), _guard(t, z, w, "y", 1e-7))
    h = 1e-5 * d

    def deriv(f):
        d1 = (f(z + h) - f(z - h)) / (2.0 * h)
        d2 = (f(z + h / 2.0) - f(z - h / 2.0)) / h
        return (4.0 * d2 - d1) / 3.0

    dx = deriv(lambda zz: x_of_z(t, zz, w))
    dy = deriv(lambda zz: y_of_z(t, zz, w))
    x = x_of_z(t, z, w)
    y = y_of_z(t, z, w)
    gs = g.gs
    if t.key == "a2":
        fx, fy = -12.0 * x * x + gs, 2.0 * y
    elif t.key == "b2":
        fx, fy = -4.0 * x**3 + 2.0 * gs * x, 2.0 * y
    else:
        fx, fy = y * y - 3.0 * x * x + 6.0 * gs * x, 2.0 * x * y + 2.0 * gs * y
    return dx - fy, dy + fx


# -- ring generators of the modular side -------------------------------------

_PI = 3.141592653589793


def modular_generators(t: CurveType, w: FramedPeriods) -> dict:
    """Values of the standard weighted generators attached to the frame.

    Normalization (inverting the linear relations fixed by the cusp values):

        a2: e4 = 12 gs w0^4 / pi^4             e6 = 216 gl w0^6 / pi^6
        b2: alpha2 = gs w0^2 / pi^2            beta4 = (gl + gs^2/8) w0^4 / (16 pi^4)
        g2: alpha1 = sqrt(3) gs w0 / pi        beta3 = -(3 sqrt(3)/2) gl w0^3 / pi^3
    """
    t = curve_type(t)
    gs, gl = moduli_from_frame(t, w)
    w0 = w.omega0
    if t.key == "a2":
        return {"e4": 12.0 * gs * w0**4 / _PI**4,
                "e6": 216.0 * gl * w0**6 / _PI**6}
    if t.key == "b2":
        return {"alpha2": gs * w0**2 / _PI**2,
                "beta4": (gl + gs * gs / 8.0) * w0**4 / (16.0 * _PI**4)}
    rt3 = 3.0 ** 0.5
    return {"alpha1": rt3 * gs * w0 / _PI,
            "beta3": -1.5 * rt3 * gl * w0**3 / _PI**3}

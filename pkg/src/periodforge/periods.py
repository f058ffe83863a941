"""Forward period computation: the inverse P of the moduli map E.

E (see :mod:`periodforge.inversion`) is cheap, holomorphic, and globally
invertible modulo the congruence group of the type, so the forward periods
are found by damped Newton iteration on E with the Jacobian taken by central
differences.  Robustness comes from two standard tricks:

  * weighted rescaling: gs and gl pick up s^-ws and s^-wl when the frame is
    scaled by s (ws, wl = 4,6 / 2,4 / 1,3 per type), so every target is first
    normalized to unit size and the solved frame is scaled back;
  * continuation: when Newton from the hexagonal anchor frame
    (1, exp(i pi/3)) stalls, the target is approached along a path in moduli
    space with adaptive bisection (at most 32 intermediate solves).

For type a2 the classical arithmetic-geometric mean applied to the roots of
4x^3 - gs x - gl supplies an independent computation of the same lattice
(the differential dx/(2y) halves the classical dx/y periods), used as an
oracle against the Newton path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .elliptic import FramedPeriods
from .errors import ConvergenceError, DegenerateFrameError, DiscriminantZeroError
from .families import CurveType, ModuliPoint, curve_type, discriminant
from .inversion import moduli_from_frame
from .modular import reduce_frame_to_box

ANCHOR = FramedPeriods(1.0 + 0.0j, cmath.exp(1j * math.pi / 3.0))


@dataclass
class PeriodResult:
    frame: FramedPeriods
    method: str
    residual: float
    reduced: bool = True
    iterations: int = 0


def _as_moduli(t, g):
    if isinstance(g, ModuliPoint):
        return g
    return ModuliPoint(complex(g[0]), complex(g[1]), curve_type(t))


def _rel_residual(t, frame, g) -> float:
    gs, gl = moduli_from_frame(t, frame)
    scale = max(abs(g.gs), abs(g.gl), 1e-30)
    return max(abs(gs - g.gs), abs(gl - g.gl)) / scale


def _check_discriminant(t, g):
    disc = discriminant(t, g)
    wd = t.weights["disc"]
    scale = (abs(g.gs) ** float(wd / t.weights["gs"])
             + abs(g.gl) ** float(wd / t.weights["gl"]) + 1e-300)
    if abs(disc) < 1e-12 * scale:
        raise DiscriminantZeroError(
            f"moduli point {g.as_tuple()} lies on the discriminant of {t.key}")


def _newton_core(t, target, start: FramedPeriods, tol: float, max_iter: int):
    """Damped Newton for E(frame) = target; returns (frame, residual, iters)
    or raises ConvergenceError."""
    v = np.array([start.omega0, start.omega1], dtype=complex)
    scale = max(abs(target[0]), abs(target[1]), 1e-30)
    trace = []

    def fval(vec):
        if vec[0] == 0 or vec[1] == 0 or not (vec[1] / vec[0]).imag > 0:
            return None
        try:
            gs, gl = moduli_from_frame(t, FramedPeriods(vec[0], vec[1]))
        except (OverflowError, ZeroDivisionError, DegenerateFrameError):
            return None
        if not (np.isfinite(gs) and np.isfinite(gl)):
            return None
        return np.array([gs - target[0], gl - target[1]]) / scale

    f = fval(v)
    if f is None:
        raise ConvergenceError("seed frame is degenerate")
    for it in range(max_iter):
        rn = float(np.max(np.abs(f)))
        trace.append(rn)
        if rn < tol:
            return FramedPeriods(v[0], v[1]), rn, it
        jac = np.empty((2, 2), dtype=complex)
        for col in range(2):
            h = 1e-6 * max(abs(v[col]), 1e-6)
            vp, vm = v.copy(), v.copy()
            vp[col] += h
            vm[col] -= h
            fp, fm = fval(vp), fval(vm)
            if fp is None or fm is None:
                raise ConvergenceError("Jacobian stencil left the period domain", trace)
            jac[:, col] = (fp - fm) / (2.0 * h)
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            raise ConvergenceError("singular Jacobian in Newton iteration", trace) from None
        alpha = 1.0
        while alpha > 2.0**-12:
            cand = v + alpha * step
            fc = fval(cand)
            if fc is not None and float(np.max(np.abs(fc))) < rn * (1.0 - 0.25 * alpha):
                v, f = cand, fc
                break
            alpha *= 0.5
        else:
            raise ConvergenceError(f"Newton stalled at residual {rn:.3e}", trace)
    rn = float(np.max(np.abs(f)))
    if rn < tol:
        return FramedPeriods(v[0], v[1]), rn, max_iter
    raise ConvergenceError(f"no convergence after {max_iter} iterations "
                           f"(residual {rn:.3e})", trace)


def _normalize_target(t, g):
    """Scale factor c such that E(c * frame) = g once E(frame) equals the
    unit-size target; returns (c, scaled_target)."""
    ws, wl = t.frame_weight_gs, t.frame_weight_gl
    size = max(abs(g.gs) ** (1.0 / ws) if g.gs else 0.0,
               abs(g.gl) ** (1.0 / wl) if g.gl else 0.0)
    if size == 0.0:
        raise DiscriminantZeroError("the origin of moduli space is excluded")
    c = 1.0 / size
    return c, (g.gs * c**ws, g.gl * c**wl)


def periods_newton(t: CurveType, g, seed: FramedPeriods = None, tol: float = 1e-11,
                   max_iter: int = 60, max_steps: int = 32) -> PeriodResult:
    """Frame with E(frame) = g, reduced to the fundamental box of the type.

    Raises DiscriminantZeroError on singular targets and ConvergenceError
    (with the residual trace) if Newton plus continuation fail.
    """
    t = curve_type(t)
    g = _as_moduli(t, g)
    _check_discriminant(t, g)
    c, target = _normalize_target(t, g)
    start = seed if seed is not None else ANCHOR
    try:
        frame, _, iters = _newton_core(t, target, start, tol, max_iter)
    except ConvergenceError:
        frame, iters = _continuation(t, target, tol, max_iter, max_steps)
    frame = frame.scaled(c)
    frame, _, reduced = reduce_frame_to_box(t, frame)
    res = _rel_residual(t, frame, g)
    if res > max(tol * 10.0, 1e-10):
        raise ConvergenceError(f"post-reduction residual {res:.3e} too large")
    return PeriodResult(frame, "newton", res, reduced, iters)


_BULGES = (0.0, 0.37j, -0.43j, 0.59 + 0.31j, -0.52 + 0.27j)


def _continuation(t, target, tol, max_iter, max_steps):
    # the straight path from the anchor may cross the discriminant; retry
    # with quadratic complex detours until one stays clear
    err = None
    for bulge in _BULGES:
        try:
            return _continuation_path(t, target, bulge, tol, max_iter, max_steps)
        except ConvergenceError as exc:
            err = exc
    raise err


def _continuation_path(t, target, bulge, tol, max_iter, max_steps):
    g_anchor = moduli_from_frame(t, ANCHOR)
    size = (abs(g_anchor[0]) + abs(target[0]) + 1.0,
            abs(g_anchor[1]) + abs(target[1]) + 1.0)
    frame = ANCHOR
    t_cur, t_goal = 0.0, 1.0
    iters = 0

    def path(s):
        det = bulge * s * (1.0 - s)
        return (g_anchor[0] * (1.0 - s) + target[0] * s + det * size[0],
                g_anchor[1] * (1.0 - s) + target[1] * s + det * size[1])

    for _ in range(max_steps):
        mid = t_goal
        gt = path(mid)
        try:
            _check_discriminant(t, ModuliPoint(gt[0], gt[1], t))
            frame_new, _, it = _newton_core(t, gt, frame, tol, max_iter)
        except (ConvergenceError, DiscriminantZeroError):
            t_goal = t_cur + 0.5 * (mid - t_cur)
            if t_goal - t_cur < 1e-6:
                raise ConvergenceError("continuation pinched at a discriminant crossing")
            continue
        frame, iters = frame_new, iters + it
        if mid >= 1.0:
            return frame, iters
        t_cur, t_goal = mid, 1.0
    raise ConvergenceError(f"continuation failed after {max_steps} steps")


# -- arithmetic-geometric mean path for type a2 -------------------------------

def agm(a: complex, b: complex, tol: float = 1e-16) -> complex:
    """Arithmetic-geometric mean with the standard branch rule: at each step
    the square root with |a1 - b1| <= |a1 + b1| is taken (ties broken toward
    Im(b1/a1) > 0)."""
    for _ in range(128):
        a1 = 0.5 * (a + b)
        b1 = cmath.sqrt(a * b)
        if abs(a1 - b1) > abs(a1 + b1):
            b1 = -b1
        elif abs(abs(a1 - b1) - abs(a1 + b1)) < 1e-14 * abs(a1) and (b1 / a1).imag <= 0:
            b1 = -b1
        a, b = a1, b1
        if abs(a - b) <= tol * abs(a):
            return 0.5 * (a + b)
    return 0.5 * (a + b)


def periods_agm_a2(g, tol: float = 1e-8) -> PeriodResult:
    """Periods of dx/(2y) on y^2 = 4x^3 - gs x - gl via root AGMs.

    Half-periods of the classical lattice are pi/(2 M(...)) combinations of
    pairwise root differences; our normalization halves the classical
    lattice.  Branch/pairing ambiguities are resolved by checking E(frame)
    against g over the finitely many candidates.
    """
    from .families import A2
    g = _as_moduli(A2, g)
    _check_discriminant(A2, g)
    roots = np.roots([4.0, 0.0, -g.gs, -g.gl])
    best = None
    # the square roots feeding the AGM carry branch ambiguities; every choice
    # yields honest lattice vectors, so enumerate and let E(frame) = g decide
    for idx in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        e1, e2, e3 = (complex(roots[i]) for i in idx)
        # half period attached to a root uses both differences taken from it
        for s1 in (1.0, -1.0):
            for s2 in (1.0, -1.0):
                try:
                    wa = math.pi / (2.0 * agm(cmath.sqrt(e1 - e3),
                                              s1 * cmath.sqrt(e1 - e2)))
                    wb = math.pi / (2.0 * agm(cmath.sqrt(e3 - e1),
                                              s2 * cmath.sqrt(e3 - e2)))
                except ZeroDivisionError:
                    continue
                for w0, w1 in ((wa, wb), (wb, wa), (wa, -wb), (wb, -wa),
                               (wa, wa + wb), (wb, wa + wb),
                               (wa, wa - wb), (wb, wb - wa)):
                    if abs(w0) < 1e-300 or not (w1 / w0).imag > 0:
                        continue
                    frame = FramedPeriods(w0, w1)
                    res = _rel_residual(A2, frame, g)
                    if best is None or res < best[1]:
                        best = (frame, res)
                if best is not None and best[1] < 1e-12:
                    break
            if best is not None and best[1] < 1e-12:
                break
    if best is None or best[1] > tol:
        raise ConvergenceError(
            f"AGM period search failed (best residual "
            f"{float('nan') if best is None else best[1]:.3e})")
    frame, _, reduced = reduce_frame_to_box(A2, best[0])
    return PeriodResult(frame, "agm", _rel_residual(A2, frame, g), reduced)


def jacobian(t: CurveType, w: FramedPeriods, rel_h: float = 1e-6) -> np.ndarray:
    """Complex Jacobian d(gs, gl)/d(omega0, omega1) of E by central differences."""
    t = curve_type(t)
    v = np.array([w.omega0, w.omega1], dtype=complex)
    out = np.empty((2, 2), dtype=complex)
    for col in range(2):
        h = rel_h * max(abs(v[col]), 1e-8)
        vp, vm = v.copy(), v.copy()
        vp[col] += h
        vm[col] -= h
        gp = moduli_from_frame(t, FramedPeriods(vp[0], vp[1]))
        gm = moduli_from_frame(t, FramedPeriods(vm[0], vm[1]))
        out[:, col] = (np.array(gp) - np.array(gm)) / (2.0 * h)
    return out


def jacobian_ratio(t: CurveType, w: FramedPeriods) -> complex:
    """det dE / reduced discriminant at E(w); constant over the period domain."""
    from .families import reduced_discriminant_poly
    t = curve_type(t)
    gs, gl = moduli_from_frame(t, w)
    det = complex(np.linalg.det(jacobian(t, w)))
    red = reduced_discriminant_poly(t).eval(gs, gl)
    return det / red

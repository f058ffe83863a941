"""Numerical certification of the cusp/component, eta-quotient and
eta-product identities, and of the weight-1 character form lambda_N.

Each verifier samples frames, evaluates both sides of an identity, and
reports the maximal relative error together with the measured proportionality
constant, as JSON-friendly dictionaries:

    {"id": ..., "max_rel_err": ..., "pass": ..., "measured_constant": ...}

Shipped constants follow from the generator normalization of
:func:`periodforge.inversion.modular_generators` and are re-measured by the
report, so a failing constant is immediately visible next to its measured
value.  For the g2 eta products the constants consistent with that
normalization (and with the cubic theta identity a^3 = b^3 + c^3 relating the
level-3 quotients) are 256/27 for the discriminant and 16 for its reduced
form.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .elliptic import FramedPeriods, dedekind_eta, fourier_coefficients
from .families import (ALL_TYPES, CurveType, ModuliPoint, curve_type,
                       discriminant, reduced_discriminant)
from .inversion import modular_generators, moduli_from_frame
from .modular import Mat2Z, act_on_frame

_PI = math.pi


def sample_frames(count: int = 20, seed: int = 7, im_range=(0.5, 2.0),
                  vary_omega0: bool = True):
    """Deterministic pseudo-random frames with Im(tau) in the given range."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        tau = complex(rng.uniform(-0.45, 0.45), rng.uniform(*im_range))
        if vary_omega0:
            w0 = rng.uniform(0.85, 1.2) * cmath.exp(1j * rng.uniform(-0.5, 0.5))
        else:
            w0 = 1.0
        out.append(FramedPeriods(w0, w0 * tau))
    return out


def _report(ident: str, errs, measured=None, reference=None, tol=1e-8):
    rep = {"id": ident, "max_rel_err": float(max(errs)), "pass": bool(max(errs) < tol)}
    if measured is not None:
        rep["measured_constant"] = [measured.real, measured.imag]
    if reference is not None:
        rep["reference_constant"] = [complex(reference).real, complex(reference).imag]
    return rep


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


# -- component identities -----------------------------------------------------

def component_identity_rows(t: CurveType):
    """(id, lhs(gs, gl), rhs(generators, omega0)) for each discriminant factor."""
    t = curve_type(t)
    rt3 = math.sqrt(3.0)
    if t.key == "a2":
        return [("a2_cusp_inf",
                 lambda gs, gl: -27.0 * gl * gl + gs**3,
                 lambda gen, w0: _PI**12 / 1728.0 * (gen["e4"]**3 - gen["e6"]**2) / w0**12)]
    if t.key == "b2":
        return [
            ("b2_cusp_inf",
             lambda gs, gl: 8.0 * gl + gs * gs,
             lambda gen, w0: 128.0 * _PI**4 * gen["beta4"] / w0**4),
            ("b2_cusp_zero",
             lambda gs, gl: -8.0 * gl + gs * gs,
             lambda gen, w0: 2.0 * _PI**4 * (gen["alpha2"]**2 - 64.0 * gen["beta4"]) / w0**4),
        ]
    return [
        ("g2_cusp_inf",
         lambda gs, gl: gl + 2.0 * gs**3,
         lambda gen, w0: 2.0 / (3.0 * rt3) * _PI**3 * (gen["alpha1"]**3 - gen["beta3"]) / w0**3),
        ("g2_cusp_zero",
         lambda gs, gl: gl - 2.0 * gs**3,
         lambda gen, w0: -2.0 / (3.0 * rt3) * _PI**3 * (gen["alpha1"]**3 + gen["beta3"]) / w0**3),
    ]


def verify_component_identities(t: CurveType, samples=None, tol: float = 1e-8):
    """Check every discriminant-component identity over the sample frames."""
    t = curve_type(t)
    samples = samples or sample_frames()
    out = []
    for ident, lhs_f, rhs_f in component_identity_rows(t):
        errs = []
        for w in samples:
            gs, gl = moduli_from_frame(t, w)
            gen = modular_generators(t, w)
            errs.append(_rel(lhs_f(gs, gl), rhs_f(gen, w.omega0)))
        out.append(_report(ident, errs, tol=tol))
    return out


# -- eta quotients of the components ------------------------------------------

# rows: (id, type key, form(generators), eta exponents {scale: power}, prefactor)
ETA_QUOTIENT_ROWS = (
    ("level1_disc", "a2", lambda g: (g["e4"]**3 - g["e6"]**2) / 1728.0, {1: 24}),
    ("level2_inf", "b2", lambda g: g["beta4"], {2: 16, 1: -8}),
    ("level2_zero", "b2", lambda g: g["alpha2"]**2 - 64.0 * g["beta4"], {1: 16, 2: -8}),
    ("level3_inf", "g2", lambda g: (g["alpha1"]**3 - g["beta3"]) / 54.0, {3: 9, 1: -3}),
    ("level3_zero", "g2", lambda g: (g["alpha1"]**3 + g["beta3"]) / 2.0, {1: 9, 3: -3}),
)


def eta_quotient_value(tau: complex, exponents: dict) -> complex:
    out = 1.0 + 0.0j
    for scale, power in exponents.items():
        out *= dedekind_eta(scale * tau) ** power
    return out


def verify_eta_quotients(samples=None, tol: float = 1e-8):
    """All five component eta-quotient identities, over sample frames."""
    samples = samples or sample_frames()
    by_key = {t.key: t for t in ALL_TYPES}
    out = []
    for ident, key, form, exps in ETA_QUOTIENT_ROWS:
        t = by_key[key]
        errs, ratios = [], []
        for w in samples:
            gen = modular_generators(t, w)
            lhs = form(gen)
            rhs = eta_quotient_value(w.tau, exps)
            errs.append(_rel(lhs, rhs))
            ratios.append(lhs / rhs)
        out.append(_report(ident, errs, measured=complex(np.mean(ratios)),
                           reference=1.0, tol=tol))
    return out


# -- eta products of the discriminants ----------------------------------------

# constant, power of pi (= power of omega0), eta exponents
DISC_ETA = {
    "a2": (1.0, 12, {1: 24}),
    "b2": (512.0, 12, {1: 24}),
    "g2": (256.0 / 27.0, 12, {1: 24}),
}
RED_DISC_ETA = {
    "a2": (1.0, 12, {1: 24}),
    "b2": (256.0, 8, {1: 8, 2: 8}),
    "g2": (16.0, 6, {1: 6, 3: 6}),
}


def verify_discriminant_eta(t: CurveType, samples=None, tol: float = 1e-8):
    """Discriminant and reduced discriminant against their eta products."""
    t = curve_type(t)
    samples = samples or sample_frames()
    out = []
    for ident, table, form in (
            (f"{t.key}_disc_eta", DISC_ETA, discriminant),
            (f"{t.key}_reduced_disc_eta", RED_DISC_ETA, reduced_discriminant)):
        const, piw, exps = table[t.key]
        errs, ratios = [], []
        for w in samples:
            gs, gl = moduli_from_frame(t, w)
            lhs = form(t, ModuliPoint(gs, gl, t))
            eta_part = eta_quotient_value(w.tau, exps) * _PI**piw / w.omega0**piw
            errs.append(_rel(lhs, const * eta_part))
            ratios.append(lhs / eta_part)
        out.append(_report(ident, errs, measured=complex(np.mean(ratios)),
                           reference=const, tol=tol))
    return out


# -- the weight-1 form with character ------------------------------------------

def lambda_form(t: CurveType, tau: complex) -> complex:
    """lambda_N(tau) = eta(tau) * eta(N tau) for the level N of the type."""
    n = curve_type(t).level
    return dedekind_eta(tau) * dedekind_eta(n * tau)


def lambda_character_check(t: CurveType, tau_samples=None, tol: float = 1e-10):
    """Generator multipliers of lambda_N and the 2k-th power identity.

    The translation generator multiplies lambda_N/omega0 by
    zeta24^(N+1) = exp(pi i / k); the inverse of the other generator by
    zeta24^-(N+1); and lambda_N^(2k) reproduces the reduced discriminant up
    to the constant of RED_DISC_ETA.
    """
    t = curve_type(t)
    n = t.level
    if tau_samples is None:
        tau_samples = [w.tau for w in sample_frames(12, seed=11)]
    zeta24 = cmath.exp(1j * _PI / 12.0)
    expected_b = zeta24 ** (n + 1)
    expected_a = zeta24 ** (-(n + 1))
    a_inv = Mat2Z(1, 0, -n, 1).inverse()
    errs_b, errs_a, errs_p, ratios = [], [], [], []
    const, piw, exps = RED_DISC_ETA[t.key]
    for tau in tau_samples:
        w = FramedPeriods(1.0, tau)
        base = lambda_form(t, tau) / w.omega0
        wb = FramedPeriods(1.0, tau + 1.0)
        errs_b.append(abs(lambda_form(t, wb.tau) / wb.omega0 / base - expected_b))
        wa = act_on_frame(a_inv, w)
        errs_a.append(abs(lambda_form(t, wa.tau) / wa.omega0 / base - expected_a))
        gs, gl = moduli_from_frame(t, w)
        red = reduced_discriminant(t, ModuliPoint(gs, gl, t))
        lam_pow = lambda_form(t, tau) ** (2 * t.k) * _PI**piw
        errs_p.append(_rel(red, const * lam_pow))
        ratios.append(red / lam_pow)
    return [
        _report(f"{t.key}_lambda_translation_multiplier", errs_b, tol=tol),
        _report(f"{t.key}_lambda_shear_multiplier", errs_a, tol=tol),
        _report(f"{t.key}_lambda_power_reduced_disc", errs_p,
                measured=complex(np.mean(ratios)), reference=const, tol=1e-8),
    ]


# -- exact q-expansion oracle --------------------------------------------------

def eta_power_expansion(exponents: dict, nmax: int):
    """Exact integer q-expansion of prod_m prod_{n>=1} (1 - q^(m n))^e_m.

    Returns (offset, coeffs) with offset = sum e_m * m / 24 as a Fraction and
    coeffs[j] the integer coefficient of q^(offset + j), 0 <= j <= nmax.
    """
    coeffs = [Fraction(1)] + [Fraction(0)] * nmax
    for scale, e in exponents.items():
        for n in range(1, nmax // scale + 1):
            # multiply by (1 - q^(scale*n))^e via the generalized binomial
            step = scale * n
            factor = [Fraction(1)]
            c = Fraction(1)
            for k in range(1, nmax // step + 1):
                c = c * (e - k + 1) / k
                factor.append(c * (-1) ** k)
            new = [Fraction(0)] * (nmax + 1)
            for j, fj in enumerate(factor):
                if fj == 0:
                    continue
                base = j * step
                for i in range(0, nmax + 1 - base):
                    new[base + i] += fj * coeffs[i]
            coeffs = new
    offset = sum(Fraction(m) * e for m, e in exponents.items()) / 24
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ValueError("non-integer coefficient in eta power expansion")
        out.append(int(c))
    return offset, out


def component_fourier_checks(nmax: int = 8, height: float = 0.28, tol: float = 1e-6):
    """Integrality of the eta-quotient Fourier coefficients and the
    cusp/component vanishing pattern (the i*infinity component starts at q^1,
    the cusp-0 component has a nonzero constant term)."""
    by_key = {t.key: t for t in ALL_TYPES}
    out = []
    for ident, key, form, exps in ETA_QUOTIENT_ROWS:
        t = by_key[key]

        def f(tau, t=t, form=form):
            return form(modular_generators(t, FramedPeriods(1.0, tau)))

        qs = fourier_coefficients(f, nmax, height=height)
        coeffs = qs.coefficients
        int_err = max(abs(c - complex(round(c.real))) for c in coeffs)
        _, oracle = eta_power_expansion(exps, nmax)
        offset, _ = eta_power_expansion(exps, 0)
        shift = int(offset)
        oracle_errs = [abs(coeffs[shift + j] - oracle[j])
                       for j in range(nmax + 1 - shift)]
        rep = _report(f"{ident}_fourier", [int_err] + oracle_errs, tol=tol)
        rep["vanishing_at_inf"] = bool(abs(coeffs[0]) < tol)
        rep["coefficients"] = [round(c.real) for c in coeffs]
        out.append(rep)
    return out

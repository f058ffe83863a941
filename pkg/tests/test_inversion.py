"""Inversion map: cusp tables, invariance, dynamics certification."""

import math

import numpy as np
import pytest

from oracles import hurwitz_sum, wp_cusp_limit, wzeta_cusp_limit
from periodforge import (A2, ALL_TYPES, B2, G2, FramedPeriods, act_on_frame,
                         generators, hamilton_residual, invert, slash_value,
                         wp, wp_prime, x_of_z, y_of_z)
from periodforge.errors import PoleError
from periodforge.families import evaluate_F, CurvePoint, ModuliPoint
from periodforge.inversion import (modular_generators, moduli_from_frame,
                                   pole_distance)

PI = math.pi
SQ3 = math.sqrt(3.0)

# cusp values of (omega0^ws gs, omega0^wl gl) at the two cusp classes; the
# g2 value at the identity cusp is pinned to the sign forced by
# gl = 2 gs^3 - G_3(omega0/3) and the weight-3 cusp row
CUSP_GOLD = {
    ("a2", "E"): (PI**4 / 12, PI**6 / 216),
    ("b2", "E"): (PI**2, -PI**4 / 8),
    ("b2", "S"): (-PI**2 / 2, PI**4 / 32),
    ("g2", "E"): (PI / SQ3, -2 * PI**3 / (3 * SQ3)),
    ("g2", "S"): (-1j * PI / 3, 2j * PI**3 / 27),
}


@pytest.mark.parametrize("key,gamma", list(CUSP_GOLD))
def test_cusp_table(key, gamma):
    from periodforge import curve_type
    t = curve_type(key)
    gs = slash_value(lambda w: moduli_from_frame(t, w)[0], t.frame_weight_gs, gamma)
    gl = slash_value(lambda w: moduli_from_frame(t, w)[1], t.frame_weight_gl, gamma)
    egs, egl = CUSP_GOLD[(key, gamma)]
    assert abs(gs - egs) < 1e-6
    assert abs(gl - egl) < 1e-6


def test_cusp_table_trig_oracle(cusp_frame):
    # the identity-cusp rows re-derived from the degenerate limits
    gs_a2, gl_a2 = moduli_from_frame(A2, cusp_frame)
    assert abs(gs_a2 - 3.75 * 2 * zeta4()) < 1e-6
    ph = wp_cusp_limit(0.5)
    gs_b2, gl_b2 = moduli_from_frame(B2, cusp_frame)
    assert abs(gs_b2 - 1.5 * ph) < 1e-6
    assert abs(gl_b2 - (5 / 32 * ph**2 + 5 / 8 * (2 * zeta4() - hurwitz_sum(4, 0.5)))) < 1e-6
    gs_g2, gl_g2 = moduli_from_frame(G2, cusp_frame)
    combo = wzeta_cusp_limit(1 / 3) - 2 / 3 * wzeta_cusp_limit(1 / 2)
    assert abs(gs_g2 - combo) < 1e-6
    assert abs(gl_g2 - (2 * combo**3 - hurwitz_sum(3, 1 / 3))) < 1e-6


def zeta4():
    return PI**4 / 90


def test_invert_gamma1_invariance(ctype, generic_frame):
    g0 = moduli_from_frame(ctype, generic_frame)
    for m in generators(ctype):
        g1 = moduli_from_frame(ctype, act_on_frame(m, generic_frame))
        assert abs(g1[0] - g0[0]) < 1e-9 * max(1.0, abs(g0[0]))
        assert abs(g1[1] - g0[1]) < 1e-9 * max(1.0, abs(g0[1]))


def test_invert_diagnostics(generic_frame):
    res = invert(G2, generic_frame)
    assert res.diagnostics["gs_square_defect"] < 1e-9
    assert res.diagnostics["energy_residual"] < 1e-9
    assert not res.diagnostics["discriminant_flag"]


def test_invert_scaling(ctype, generic_frame):
    gs, gl = moduli_from_frame(ctype, generic_frame)
    s = 2.0
    gss, gls = moduli_from_frame(ctype, generic_frame.scaled(s))
    assert abs(gss - gs / s**ctype.frame_weight_gs) < 1e-10 * abs(gs)
    assert abs(gls - gl / s**ctype.frame_weight_gl) < 1e-10 * abs(gl)


def test_x_of_z_a2(generic_frame):
    z = 0.23 + 0.11j
    assert abs(x_of_z(A2, z, generic_frame) - wp(z, generic_frame) / 4) < 1e-13
    assert abs(y_of_z(A2, z, generic_frame) - wp_prime(z, generic_frame) / 8) < 1e-13


def test_xy_periodicity(ctype, rng):
    w = FramedPeriods(1.0 + 0.05j, 0.2 + 1.2j)
    for _ in range(4):
        z = complex(rng.uniform(0.03, 0.2), rng.uniform(0.02, 0.2))
        for shift in (w.omega0, w.omega1):
            x0, x1 = x_of_z(ctype, z, w), x_of_z(ctype, z + shift, w)
            y0, y1 = y_of_z(ctype, z, w), y_of_z(ctype, z + shift, w)
            assert abs(x0 - x1) < 1e-10 * max(1.0, abs(x0))
            assert abs(y0 - y1) < 1e-10 * max(1.0, abs(y0))


def test_energy_constraint(ctype, rng):
    w = FramedPeriods(1.02 - 0.04j, 0.15 + 1.18j)
    g = invert(ctype, w, check=False).g
    for _ in range(20):
        z = complex(rng.uniform(0.05, 0.9), rng.uniform(0.03, 0.9))
        if pole_distance(ctype, z, w, "y") < 0.05 or pole_distance(ctype, z, w, "x") < 0.05:
            continue
        val = evaluate_F(ctype, CurvePoint(x_of_z(ctype, z, w), y_of_z(ctype, z, w)), g)
        assert abs(val) < 1e-9


def test_wrong_energy_detected(generic_frame):
    g = invert(A2, generic_frame, check=False).g
    bad = ModuliPoint(g.gs, g.gl + 1.0, A2)
    z = 0.21 + 0.13j
    pt = CurvePoint(x_of_z(A2, z, generic_frame), y_of_z(A2, z, generic_frame))
    assert abs(evaluate_F(A2, pt, bad)) == pytest.approx(1.0, abs=1e-7)


def test_hamilton_residual(ctype, rng):
    w = FramedPeriods(1.0, 0.2 + 1.1j)
    for _ in range(6):
        z = complex(rng.uniform(0.08, 0.6), rng.uniform(0.05, 0.6))
        if min(pole_distance(ctype, z, w, "x"), pole_distance(ctype, z, w, "y")) < 0.08:
            continue
        r1, r2 = hamilton_residual(ctype, z, w)
        assert abs(r1) < 1e-7
        assert abs(r2) < 1e-7


def test_pole_guard():
    w = FramedPeriods(1.0, 1j)
    with pytest.raises(PoleError):
        x_of_z(B2, 0.5, w)          # half-period pole of x_b2
    with pytest.raises(PoleError):
        y_of_z(G2, 2.0 / 3.0, w)    # y_g2 has a pole at 2/3 omega0
    # x_g2 is regular at 2/3 omega0
    val = x_of_z(G2, 2.0 / 3.0, w)
    assert np.isfinite(val.real) and np.isfinite(val.imag)


def test_modular_generator_cusps():
    gens_e = {}
    for t in ALL_TYPES:
        for name, val in modular_generators(t, FramedPeriods(1.0, 10j)).items():
            gens_e[name] = val
    assert abs(gens_e["e4"] - 1) < 1e-6
    assert abs(gens_e["e6"] - 1) < 1e-6
    assert abs(gens_e["alpha2"] - 1) < 1e-6
    assert abs(gens_e["beta4"]) < 1e-6
    assert abs(gens_e["alpha1"] - 1) < 1e-6
    assert abs(gens_e["beta3"] - 1) < 1e-6
    beta4_s = slash_value(
        lambda w: modular_generators(B2, w)["beta4"] / w.omega0**4, 4, "S")
    assert abs(beta4_s - 1.0 / 256.0) < 1e-6


def test_constant_terms_match_closed_forms(generic_frame):
    # the additive constants of x(z) match their closed forms
    w = generic_frame
    gs_b2 = moduli_from_frame(B2, w)[0]
    assert abs(gs_b2 - 1.5 * wp(w.omega0 / 2, w)) < 1e-12 * abs(gs_b2)
    gs_g2 = moduli_from_frame(G2, w)[0]
    third = w.omega0 / 3
    from periodforge import wzeta
    combo = (2 / 3) * wzeta(third, w) - (1 / 3) * wzeta(2 * third, w)
    assert abs(gs_g2 - combo) < 1e-12 * abs(gs_g2)


def test_series_coefficients_match_formal_solution(ctype):
    # numeric Laurent coefficients agree with the exact polynomials at E(w)
    from periodforge import series_coefficient, solve_formal
    w = FramedPeriods(1.0, 0.21 + 1.33j)
    g = invert(ctype, w, check=False).g
    sol = solve_formal(ctype, 1, order=10)
    if ctype.key == "a2":
        pairs = [("A", n, 2 * n) for n in (1, 2, 3)] + [("B", n, 2 * n - 1) for n in (1, 2)]
    elif ctype.key == "b2":
        pairs = [("A", n, 2 * n + 1) for n in (0, 1, 2)] + [("B", n, 2 * n) for n in (0, 1)]
    else:
        pairs = [("A", n, n) for n in (0, 1, 2, 3)] + [("B", n, n) for n in (0, 1, 2)]
    for which, n, power in pairs:
        from periodforge import series_coefficient as sc
        numeric = sc(ctype, which, n)(w)
        table = sol.x if which == "A" else sol.y
        exact = table.get(power)
        exact_val = 0.0 if exact is None else exact.eval(g.gs, g.gl)
        assert abs(numeric - exact_val) < 1e-8 * max(1.0, abs(exact_val)), (which, n)

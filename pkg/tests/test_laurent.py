"""Exact Laurent engine: table regression, residuals, equivariance, exports."""

import csv
import io
import json
from fractions import Fraction

import pytest

from periodforge import (A2, ALL_TYPES, B2, G2, FramedPeriods,
                         recurrence_determinant, residual_check, solve_formal)
from periodforge.exactpoly import GradedPoly
from periodforge.inversion import invert, x_of_z, y_of_z
from periodforge.laurent import apply_sigma
from periodforge.reference_series import REFERENCE_EXPANSIONS

ALL_BRANCHES = [(t, i) for t in ALL_TYPES for i in range(1, t.level + 1)]


@pytest.mark.parametrize("t,infinity", ALL_BRANCHES, ids=lambda v: str(v))
def test_reference_expansions_exact(t, infinity):
    sol = solve_formal(t, infinity, order=8)
    x_ref, y_ref = REFERENCE_EXPANSIONS[(t.key, infinity)]
    for p, mono in x_ref.items():
        assert sol.x.get(p) == t.gpoly(mono), f"x coefficient at z^{p}"
    for p, mono in y_ref.items():
        assert sol.y.get(p) == t.gpoly(mono), f"y coefficient at z^{p}"


@pytest.mark.parametrize("t,infinity", ALL_BRANCHES, ids=lambda v: str(v))
def test_residuals_vanish(t, infinity):
    sol = solve_formal(t, infinity, order=12)
    hx, hy, en = residual_check(sol)
    assert not hx.c and hx.known >= 10
    assert not hy.c and hy.known >= 9
    assert not en.c and en.known >= 6


def test_residual_detects_perturbation():
    sol = solve_formal(A2, 1, order=8)
    p = max(sol.x)
    sol.x[p] = sol.x[p] * Fraction(-1)
    hx, hy, en = residual_check(sol)
    assert hx.c or hy.c or en.c


def test_recurrence_determinants():
    assert recurrence_determinant(A2, 3) == 18
    assert recurrence_determinant(B2, 2) == 8
    assert recurrence_determinant(G2, 2) == 0
    for t in ALL_TYPES:
        assert all(recurrence_determinant(t, n) > 0 for n in range(t.n0 + 1, 20))


def test_uniqueness_across_orders():
    a = solve_formal(B2, 1, order=10)
    b = solve_formal(B2, 1, order=16)
    for p, poly in a.x.items():
        assert b.x[p] == poly
    for p, poly in a.y.items():
        assert b.y[p] == poly


@pytest.mark.parametrize("t", ALL_TYPES, ids=lambda t: t.key)
def test_sigma_cycles_branches(t):
    sols = {i: solve_formal(t, i, order=10) for i in range(1, t.level + 1)}
    for i in range(1, t.level + 1):
        img = apply_sigma(sols[i])
        nxt = i % t.level + 1
        assert img.infinity == nxt
        assert img.x == sols[nxt].x
        assert img.y == sols[nxt].y


@pytest.mark.parametrize("t,infinity", ALL_BRANCHES, ids=lambda v: str(v))
def test_weight_homogeneity(t, infinity):
    sol = solve_formal(t, infinity, order=10)
    for which, table in (("x", sol.x), ("y", sol.y)):
        for p, poly in table.items():
            expected = t.weights[which] - p * t.weights["z"]
            assert poly.weight() == expected


def test_weights_match_level_grading():
    # coefficient pairs at level n carry weight (1+n)/d
    sol = solve_formal(B2, 1, order=8)
    for n in range(0, 4):
        poly = sol.x.get(2 * n + 1)
        if poly is not None:
            assert poly.weight() == Fraction(1 + n, 2)


@pytest.mark.parametrize("t", ALL_TYPES, ids=lambda t: t.key)
def test_series_matches_meromorphic_inverse(t):
    # substituting g = E(frame) into the truncated series reproduces x(z)
    w = FramedPeriods(1.04 + 0.08j, 0.2 + 1.3j)
    g = invert(t, w, check=False).g
    sol = solve_formal(t, 1, order=16)
    for zfrac in (0.035, 0.05 + 0.015j):
        z = zfrac * w.omega0
        xs = sol.eval_x(z, g.gs, g.gl)
        ys = sol.eval_y(z, g.gs, g.gl)
        assert abs(xs - x_of_z(t, z, w)) < 1e-8 * max(1.0, abs(xs))
        assert abs(ys - y_of_z(t, z, w)) < 1e-8 * max(1.0, abs(ys))


def test_invalid_branch_index():
    with pytest.raises(ValueError):
        solve_formal(A2, 2)
    with pytest.raises(ValueError):
        solve_formal(G2, 0)


def test_csv_export_roundtrip():
    sol = solve_formal(B2, 1, order=6)
    text = sol.to_csv()
    blocks = [b for b in text.split("# function:") if b.strip()]
    assert len(blocks) == 2
    parsed = list(csv.reader(io.StringIO("\n".join(blocks[0].splitlines()[1:]))))
    header, *body = [r for r in parsed if r]
    assert header == ["power", "monomial", "numerator", "denominator"]
    # the leading pole coefficient is 1/2 at power -1
    assert body[0] == ["-1", "1", "1", "2"]


def test_json_export():
    sol = solve_formal(G2, 3, order=6)
    data = json.loads(sol.to_json())
    assert data["type"] == "g2" and data["infinity"] == 3
    assert data["x"]["0"]["g_s"] == "-1/1"
    assert data["y"]["-1"]["1"] == "1/1"


def test_gradedpoly_invariants():
    p = G2.gpoly({(3, 0): Fraction(2), (0, 1): Fraction(-1)})
    assert p.is_homogeneous() and p.weight() == 1
    q = G2.gpoly({(1, 0): 1, (0, 1): 1})
    assert not q.is_homogeneous()
    assert GradedPoly.monomial_name((2, 1)) == "g_s^2*g_l"

"""Monodromy matrices, group relations, character, frame equivalence."""

import cmath
import math

import pytest

from periodforge import (A2, B2, G2, FramedPeriods, Mat2Z,
                         act_on_frame, character_theta, frame_equivalence,
                         fundamental_element, generators, is_in_gamma1)
from periodforge.errors import DegenerateFrameError
from periodforge.modular import (IDENTITY, evaluate_word, random_word,
                                 reduce_frame_to_box)


def test_generator_matrices():
    assert generators(A2) == (Mat2Z(1, 0, -1, 1), Mat2Z(1, 1, 0, 1))
    assert generators(B2)[0] == Mat2Z(1, 0, -2, 1)
    assert generators(G2)[0] == Mat2Z(1, 0, -3, 1)


def test_braid_relations(ctype):
    p = ctype.p
    lhs = evaluate_word(ctype, ["a", "b"] * (p // 2) + (["a"] if p % 2 else []))
    rhs = evaluate_word(ctype, ["b", "a"] * (p // 2) + (["b"] if p % 2 else []))
    assert lhs == rhs


def test_center_relation(ctype):
    a, b = generators(ctype)
    assert (a @ b) ** ctype.k == IDENTITY
    assert (a @ b) ** (ctype.k - 1) != IDENTITY


def test_fundamental_element():
    assert fundamental_element(A2) == Mat2Z(0, 1, -1, 0)
    assert fundamental_element(B2) == Mat2Z(-1, 0, 0, -1)
    assert fundamental_element(G2) == IDENTITY


def test_gamma1_membership():
    assert is_in_gamma1(A2, Mat2Z(3, 2, 7, 5))          # level 1: everything
    assert is_in_gamma1(B2, Mat2Z(1, 0, -2, 1))
    assert not is_in_gamma1(G2, Mat2Z(-1, 0, 0, -1))    # -id absent at level 3
    with pytest.raises(ValueError):
        is_in_gamma1(B2, Mat2Z(1, 1, 1, 1))


def test_generated_subgroup_in_gamma1(ctype, rng):
    for _ in range(200):
        word = random_word(ctype, rng, 16)
        assert is_in_gamma1(ctype, evaluate_word(ctype, word))


def test_character_theta(ctype):
    assert character_theta(ctype, []) == 1
    word = ["a", "b"] * ctype.k
    assert abs(character_theta(ctype, word) - 1) < 1e-12
    # anti-invariant character: k-th power sends each generator to -1
    single = character_theta(ctype, ["a"])
    assert abs(single**ctype.k + 1) < 1e-12
    assert abs(single ** (2 * ctype.k) - 1) < 1e-12
    # inverses carry the inverse value
    assert abs(character_theta(ctype, ["A"]) * single - 1) < 1e-14


def test_character_theta_a2_value():
    assert character_theta(A2, ["a"]) == pytest.approx(cmath.exp(1j * math.pi / 6))


def test_frame_equivalence_identity(generic_frame, ctype):
    assert frame_equivalence(ctype, generic_frame, generic_frame) == IDENTITY


def test_frame_equivalence_translation(generic_frame, ctype):
    b = generators(ctype)[1]
    moved = act_on_frame(b, generic_frame)
    assert moved.omega1 == generic_frame.omega1 + generic_frame.omega0
    assert frame_equivalence(ctype, generic_frame, moved) == b


def test_frame_equivalence_rejects_scaling(generic_frame, ctype):
    scaled = generic_frame.scaled(1.0 + 1e-3)
    assert frame_equivalence(ctype, generic_frame, scaled, tol=1e-6) is None


def test_frame_equivalence_random_words(ctype, rng, generic_frame):
    for _ in range(30):
        m = evaluate_word(ctype, random_word(ctype, rng, 12))
        rec = frame_equivalence(ctype, generic_frame, act_on_frame(m, generic_frame))
        assert rec == m


def test_frame_equivalence_degenerate():
    w = FramedPeriods(1.0, 1.0 + 1e-12j)
    with pytest.raises(DegenerateFrameError):
        frame_equivalence(A2, w, w)


def test_reduce_frame_to_box(ctype, rng):
    for _ in range(10):
        tau = complex(rng.uniform(-3, 3), rng.uniform(0.05, 0.4))
        w = FramedPeriods(1.0 + 0.2j, (1.0 + 0.2j) * tau)
        red, m, flag = reduce_frame_to_box(ctype, w)
        assert flag
        assert is_in_gamma1(ctype, m)
        assert abs(red.tau.real) <= 0.5 + 1e-9
        assert red.tau.imag >= tau.imag - 1e-12
        # the reduction matrix actually maps the frame
        again = act_on_frame(m, w)
        assert abs(again.omega0 - red.omega0) + abs(again.omega1 - red.omega1) < 1e-9

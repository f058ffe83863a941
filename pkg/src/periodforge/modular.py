"""Integer 2x2 arithmetic for the congruence groups Gamma_1(N), N = 1, 2, 3.

The monodromy of the type-t family is generated by two matrices acting on the
homology basis ([gamma0], [gamma1]) written as a row vector:

    A = [[1, 0], [-N, 1]],    B = [[1, 1], [0, 1]],    N = level(t).

Frames of periods (omega0, omega1) therefore transform as row vectors on the
right,

    (omega0, omega1) . M = (a*omega0 + c*omega1, b*omega0 + d*omega1),

which on tau = omega1/omega0 is the Moebius map tau -> (b + d*tau)/(a + c*tau).
Words in the generators are evaluated as matrix products in reading order;
the alternating word of length p reproduces the distinguished central element
of each type (the ``fundamental_element`` test pins this convention).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DegenerateFrameError
from .families import CurveType, curve_type

# word symbols: generator letters, upper case for inverses
WORD_SYMBOLS = ("a", "A", "b", "B")


@dataclass(frozen=True)
class Mat2Z:
    """Integer 2x2 matrix [[a, b], [c, d]]."""

    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "Mat2Z") -> "Mat2Z":
        return Mat2Z(self.a * other.a + self.b * other.c,
                     self.a * other.b + self.b * other.d,
                     self.c * other.a + self.d * other.c,
                     self.c * other.b + self.d * other.d)

    def inverse(self) -> "Mat2Z":
        if self.det() != 1:
            raise ValueError("only unimodular matrices are inverted here")
        return Mat2Z(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "Mat2Z":
        if n < 0:
            return self.inverse() ** (-n)
        out = IDENTITY
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = Mat2Z(1, 0, 0, 1)


def generators(t: CurveType):
    """Images (A, B) of the two monodromy generators in the row-vector basis."""
    t = curve_type(t)
    return Mat2Z(1, 0, -t.level, 1), Mat2Z(1, 1, 0, 1)


def is_in_gamma1(t: CurveType, m: Mat2Z) -> bool:
    """Membership in Gamma_1(N): det 1, c = 0 and a = d = 1 mod N."""
    if m.det() != 1:
        raise ValueError(f"matrix {m} has det {m.det()} != 1")
    n = curve_type(t).level
    return m.c % n == 0 and m.a % n == 1 % n and m.d % n == 1 % n


def evaluate_word(t: CurveType, word: Sequence[str]) -> Mat2Z:
    """Product of generator matrices in reading order ('a','A','b','B')."""
    a, b = generators(t)
    table = {"a": a, "A": a.inverse(), "b": b, "B": b.inverse()}
    out = IDENTITY
    for sym in word:
        try:
            out = out @ table[sym]
        except KeyError:
            raise ValueError(f"unknown word symbol {sym!r}") from None
    return out


def fundamental_element(t: CurveType) -> Mat2Z:
    """Image of the alternating word aba... of length p.

    Evaluates to [[0,1],[-1,0]], -Id and Id for types a2, b2, g2.
    """
    t = curve_type(t)
    word = ["a" if i % 2 == 0 else "b" for i in range(t.p)]
    return evaluate_word(t, word)


def character_theta(t: CurveType, word: Sequence[str]) -> complex:
    """Multiplicative character sending both generators to exp(pi*i/k).

    Inverse letters contribute exp(-pi*i/k); its k-th power is the sign
    character (each generator maps to -1) and its 2k-th power is trivial.
    """
    t = curve_type(t)
    total = 0
    for sym in word:
        if sym in ("a", "b"):
            total += 1
        elif sym in ("A", "B"):
            total -= 1
        else:
            raise ValueError(f"unknown word symbol {sym!r}")
    return cmath.exp(1j * math.pi * total / t.k)


# -- frames ---------------------------------------------------------------

def act_on_frame(m: Mat2Z, frame):
    """Right action of Gamma_1(N) on a frame: row vector times matrix."""
    w0, w1 = frame.omega0, frame.omega1
    return type(frame)(m.a * w0 + m.c * w1, m.b * w0 + m.d * w1)


def _solve_real_2x2(w0: complex, w1: complex, rhs: complex):
    # (p, q) with p*w0 + q*w1 = rhs, seen as a real 2x2 system
    det = w0.real * w1.imag - w0.imag * w1.real
    p = (rhs.real * w1.imag - rhs.imag * w1.real) / det
    q = (w0.real * rhs.imag - w0.imag * rhs.real) / det
    return p, q


def frame_equivalence(t: CurveType, w1, w2, tol: float = 1e-8) -> Optional[Mat2Z]:
    """Find M in Gamma_1(N) with w2 = w1 . M, or None.

    Solves the two linear systems omega0' = a*omega0 + c*omega1 and
    omega1' = b*omega0 + d*omega1 over the reals, rounds to integers and
    re-verifies.  Raises DegenerateFrameError when either frame is too close
    to a real line for the solve to be meaningful.
    """
    t = curve_type(t)
    for w in (w1, w2):
        tau = w.omega1 / w.omega0
        if abs(tau.imag) < tol:
            raise DegenerateFrameError(f"frame {w} has |Im tau| < {tol}")
    a_f, c_f = _solve_real_2x2(w1.omega0, w1.omega1, w2.omega0)
    b_f, d_f = _solve_real_2x2(w1.omega0, w1.omega1, w2.omega1)
    ints = [round(v) for v in (a_f, b_f, c_f, d_f)]
    m = Mat2Z(*ints)
    if m.det() != 1 or not is_in_gamma1(t, m):
        return None
    scale = max(abs(w2.omega0), abs(w2.omega1))
    back = (m.a * w1.omega0 + m.c * w1.omega1, m.b * w1.omega0 + m.d * w1.omega1)
    err = max(abs(back[0] - w2.omega0), abs(back[1] - w2.omega1))
    if err > tol * scale:
        return None
    return m


def random_word(t: CurveType, rng, max_len: int = 12):
    """Uniform random word in the generators and their inverses."""
    n = int(rng.integers(1, max_len + 1))
    return [WORD_SYMBOLS[int(rng.integers(0, 4))] for _ in range(n)]


def reduce_frame_to_box(t: CurveType, frame, max_steps: int = 64):
    """Reduce a frame by Gamma_1(N) so that |Re tau| <= 1/2 and Im tau is
    (locally) maximal under the generators.

    Returns (reduced_frame, M, reduced_flag) with reduced_frame = frame . M.
    The flag is False if the descent did not stabilize within max_steps.
    """
    t = curve_type(t)
    n = t.level
    a_mat = Mat2Z(1, 0, -n, 1)
    a_inv = a_mat.inverse()
    b_mat = Mat2Z(1, 1, 0, 1)
    acc = IDENTITY
    cur = frame
    reduced = False
    for _ in range(max_steps):
        tau = cur.omega1 / cur.omega0
        shift = round(tau.real)
        if shift:
            m = b_mat ** (-shift)
            cur = act_on_frame(m, cur)
            acc = acc @ m
            tau = cur.omega1 / cur.omega0
        best = None
        for m in (a_mat, a_inv):
            cand = act_on_frame(m, cur)
            gain = (cand.omega1 / cand.omega0).imag
            if gain > tau.imag * (1 + 1e-12):
                if best is None or gain > best[0]:
                    best = (gain, m)
        if best is None:
            reduced = True
            break
        cur = act_on_frame(best[1], cur)
        acc = acc @ best[1]
    tau = cur.omega1 / cur.omega0
    shift = round(tau.real)
    if shift:
        m = b_mat ** (-shift)
        cur = act_on_frame(m, cur)
        acc = acc @ m
    return cur, acc, reduced

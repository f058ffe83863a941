"""Exact rational polynomials in the moduli coordinates (gs, gl).

The Laurent engine and the discriminant bookkeeping both need polynomial
arithmetic that is bit-exact and aware of the quasi-homogeneous grading:
every monomial ``gs^i * gl^j`` carries the weight ``i*wt(gs) + j*wt(gl)``.
Coefficients are :class:`fractions.Fraction`; zero coefficients are never
stored.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"exact coefficient expected, got {type(v).__name__}")


class GradedPoly:
    """Polynomial in (gs, gl) with exact rational coefficients.

    ``wgs`` and ``wgl`` are the weights of the two variables.  Arithmetic does
    not force homogeneity (intermediate quantities in the solver mix grades);
    use :meth:`weight` / :meth:`is_homogeneous` to check the invariant where
    it is supposed to hold.
    """

    __slots__ = ("coeffs", "wgs", "wgl")

    def __init__(self, coeffs, wgs: Fraction, wgl: Fraction):
        self.wgs = wgs
        self.wgl = wgl
        self.coeffs = {}
        for (i, j), v in coeffs.items():
            v = _as_fraction(v)
            if v != 0:
                self.coeffs[(int(i), int(j))] = v

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, wgs, wgl) -> "GradedPoly":
        return cls({}, wgs, wgl)

    @classmethod
    def const(cls, value, wgs, wgl) -> "GradedPoly":
        return cls({(0, 0): Fraction(value)}, wgs, wgl)

    @classmethod
    def gs(cls, wgs, wgl) -> "GradedPoly":
        return cls({(1, 0): Fraction(1)}, wgs, wgl)

    @classmethod
    def gl(cls, wgs, wgl) -> "GradedPoly":
        return cls({(0, 1): Fraction(1)}, wgs, wgl)

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def monomial_weight(self, key) -> Fraction:
        i, j = key
        return i * self.wgs + j * self.wgl

    def weight(self):
        """Common weight of all monomials, or None (zero poly / inhomogeneous)."""
        weights = {self.monomial_weight(k) for k in self.coeffs}
        if len(weights) == 1:
            return weights.pop()
        return None

    def is_homogeneous(self) -> bool:
        return self.is_zero() or self.weight() is not None

    def is_rational(self) -> bool:
        """True when the polynomial is a pure constant (possibly zero)."""
        return all(k == (0, 0) for k in self.coeffs)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("polynomial is not a constant")
        return self.coeffs.get((0, 0), Fraction(0))

    def items(self) -> Iterator:
        return iter(sorted(self.coeffs.items()))

    # -- arithmetic ---------------------------------------------------

    def _like(self, coeffs) -> "GradedPoly":
        return GradedPoly(coeffs, self.wgs, self.wgl)

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return self._like(out)

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) - v
        return self._like(out)

    def __neg__(self) -> "GradedPoly":
        return self._like({k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, GradedPoly):
            out = {}
            for (i1, j1), v1 in self.coeffs.items():
                for (i2, j2), v2 in other.coeffs.items():
                    k = (i1 + i2, j1 + j2)
                    out[k] = out.get(k, Fraction(0)) + v1 * v2
            return self._like(out)
        f = _as_fraction(other)
        return self._like({k: v * f for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "GradedPoly":
        if n < 0:
            raise ValueError("negative power")
        out = GradedPoly.const(1, self.wgs, self.wgl)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # -- evaluation / formatting ---------------------------------------

    def eval(self, gs, gl):
        """Numeric evaluation at complex (gs, gl)."""
        total = 0j
        for (i, j), v in self.coeffs.items():
            total += complex(v) * gs**i * gl**j
        return total

    def eval_exact(self, gs: Fraction, gl: Fraction) -> Fraction:
        total = Fraction(0)
        for (i, j), v in self.coeffs.items():
            total += v * gs**i * gl**j
        return total

    @staticmethod
    def monomial_name(key) -> str:
        i, j = key
        parts = []
        if i:
            parts.append("g_s" if i == 1 else f"g_s^{i}")
        if j:
            parts.append("g_l" if j == 1 else f"g_l^{j}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = [f"({v})*{self.monomial_name(k)}" for k, v in self.items()]
        return " + ".join(terms)

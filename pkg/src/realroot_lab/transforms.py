"""Non-linear coefficient operators on finite polynomials.

All operators read the coefficient sequence ``a_k`` of the input with
``a_k = 0`` outside ``0..deg``, and return a polynomial truncated at the
input degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Mapping

from .exactpoly import Number, Poly, as_rational, bareiss_det, format_rational


@dataclass(frozen=True)
class AlphaSeq:
    """Finitely supported sequence ``alpha_j``; absent indices are zero."""

    support: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for j, v in dict(self.support).items():
            if j < 0:
                raise ValueError(f"alpha index must be >= 0, got {j}")
            v = as_rational(v)
            if v:
                clean[int(j)] = v
        object.__setattr__(self, "support", dict(sorted(clean.items())))

    def __getitem__(self, j: int) -> Fraction:
        return self.support.get(j, Fraction(0))

    def items(self):
        return self.support.items()

    def __hash__(self):
        return hash(tuple(self.support.items()))

    @classmethod
    def parse(cls, text: str) -> "AlphaSeq":
        """Parse ``"0:1,6:-1"`` style input."""
        support = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            j, _, v = part.partition(":")
            support[int(j)] = as_rational(v)
        return cls(support)

    def to_json(self) -> dict:
        return {str(j): format_rational(v) for j, v in self.support.items()}


def s_alpha(r: int) -> AlphaSeq:
    """alpha_0 = 1, alpha_r = -1; for r = 0 the two cancel and give the zero sequence."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return AlphaSeq({})
    return AlphaSeq({0: 1, r: -1})


def u_alpha(alpha: AlphaSeq, p: Poly) -> Poly:
    """Coefficients ``b_k = sum_j alpha_j a_{k-j} a_{k+j}``, k = 0..deg p."""
    a = p.coeff
    return Poly(
        sum((v * a(k - j) * a(k + j) for j, v in alpha.items()), Fraction(0))
        for k in range(p.degree + 1)
    )


def v_alpha(alpha: AlphaSeq, p: Poly) -> Poly:
    """Coefficients ``c_k = sum_j alpha_j a_{k-j} a_{k+1+j}``, k = 0..deg p."""
    a = p.coeff
    return Poly(
        sum((v * a(k - j) * a(k + 1 + j) for j, v in alpha.items()), Fraction(0))
        for k in range(p.degree + 1)
    )


def s_r(r: int, p: Poly) -> Poly:
    return u_alpha(s_alpha(r), p)


def s_tilde_r(r: int, p: Poly) -> Poly:
    return v_alpha(s_alpha(r), p)


def toeplitz_rows(a: Callable[[int], Fraction], k: int, d: int) -> list[list[Fraction]]:
    """The d x d block ``(a_{k-i+j})`` taken at column k."""
    return [[a(k - i + j) for j in range(d)] for i in range(d)]


def f_d(d: int, p: Poly) -> Poly:
    """Coefficient of x**k is the d x d Toeplitz minor of the coefficients at k."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return Poly(bareiss_det(toeplitz_rows(p.coeff, k, d)) for k in range(p.degree + 1))


def turan_expression(a: Callable[[int], Fraction], k: int) -> Fraction:
    """Higher-order Turan expression at index k."""
    t0 = a(k) ** 2 - a(k - 1) * a(k + 1)
    t1 = a(k + 1) ** 2 - a(k) * a(k + 2)
    m = a(k) * a(k + 1) - a(k - 1) * a(k + 2)
    return 4 * t0 * t1 - m * m


def j_op(p: Poly) -> Poly:
    return Poly(turan_expression(p.coeff, k) for k in range(p.degree + 1))


def malo_schur_compose(p: Poly, q: Poly, with_factorial: bool = False) -> Poly:
    """Termwise product ``a_k b_k`` (times ``k!`` if requested) up to min degree."""
    m = min(p.degree, q.degree)
    if with_factorial:
        return Poly(factorial(k) * p.coeff(k) * q.coeff(k) for k in range(m + 1))
    return Poly(p.coeff(k) * q.coeff(k) for k in range(m + 1))


def apply_gamma(gamma: Callable[[int], Number], p: Poly) -> Poly:
    """Diagonal operator ``a_k -> gamma(k) a_k``."""
    return Poly(as_rational(gamma(k)) * c for k, c in enumerate(p.coeffs))


OPERATORS = ("s_r", "s_tilde_r", "f_d", "j", "u_alpha", "v_alpha", "compose", "gamma")

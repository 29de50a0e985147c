"""Toeplitz minors of coefficient sequences and their product formulas.

For ``a_k = C(n, k)`` (equivalently ``C(n, n-k)``, the same number) the
d x d minor ``det(a_{k-i+j})`` has a closed product form; for
``a_k = 1/k!`` it collapses to a product of factorial ratios.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable

from .exactpoly import Poly, bareiss_det, format_rational
from .msequences import GammaSeq, binomial_coefficient_seq, gamma_shifted_factorial
from .transforms import toeplitz_rows


@dataclass(frozen=True)
class MinorSpec:
    seq: Callable[[int], Fraction]
    k: int
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("minor size d must be >= 1")
        if self.k < 0:
            raise ValueError("column k must be >= 0")


def _zero_extended(seq: Callable[[int], Fraction]) -> Callable[[int], Fraction]:
    return lambda m: seq(m) if m >= 0 else Fraction(0)


def toeplitz_minor(spec: MinorSpec) -> Fraction:
    return bareiss_det(toeplitz_rows(_zero_extended(spec.seq), spec.k, spec.d))


def stanley_product(n: int, d: int, k: int) -> Fraction:
    """prod_{j<d} C(n+j, k+j) / C(n-k+j, n-k)."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if d < 1:
        raise ValueError("d must be >= 1")
    out = Fraction(1)
    for j in range(d):
        out *= Fraction(comb(n + j, k + j), comb(n - k + j, n - k))
    return out


def mace_product(d: int, k: int) -> Fraction:
    """prod_{j<d} j!/(k+j)! -- the minor of the 1/k! sequence."""
    if d < 1 or k < 0:
        raise ValueError("need d >= 1 and k >= 0")
    out = Fraction(1)
    for j in range(d):
        out *= Fraction(factorial(j), factorial(k + j))
    return out


def b_poly(n: int, d: int) -> Poly:
    """sum_k C(n,k) (n+d)! d! / ((k+d)! (n-k+d)!) x^k."""
    if n < 0 or d < 0:
        raise ValueError("need n, d >= 0")
    top = factorial(n + d) * factorial(d)
    return Poly(
        Fraction(comb(n, k) * top, factorial(k + d) * factorial(n - k + d)) for k in range(n + 1)
    )


def _check_alphas(alphas: Iterable[int]) -> list[int]:
    al = list(alphas)
    if any(a < 1 for a in al) or len(set(al)) != len(al):
        raise ValueError("alphas must be distinct positive integers")
    return al


def hypergeom_poly(alphas: Iterable[int], n: int) -> Poly:
    """sum_k C(n,k) prod_i C(n+a_i, k+a_i)/C(n-k+a_i, n-k) x^k."""
    al = _check_alphas(alphas)
    if n < 0:
        raise ValueError("n must be >= 0")
    coeffs = []
    for k in range(n + 1):
        c = Fraction(comb(n, k))
        for a in al:
            c *= Fraction(comb(n + a, k + a), comb(n - k + a, n - k))
        coeffs.append(c)
    return Poly(coeffs)


def rising(m: int, j: int) -> int:
    """Pochhammer symbol (m)_j = m (m+1) ... (m+j-1)."""
    out = 1
    for i in range(j):
        out *= m + i
    return out


def hypergeom_poly_pochhammer(alphas: Iterable[int], n: int) -> Poly:
    """The same polynomial via the terminating hypergeometric series.

    Terms are ``(-n)_k prod_i (-(n+a_i))_k / prod_i (a_i + 1)_k * ((-1)^{p+1} x)^k / k!``
    with p = len(alphas). The lower parameters are shifted by one: with
    ``(a_i)_k`` the k-th coefficient is off by ``prod_i a_i/(k+a_i)``.
    """
    al = _check_alphas(alphas)
    sign = -1 if len(al) % 2 == 0 else 1
    coeffs = []
    for k in range(n + 1):
        num = rising(-n, k)
        den = factorial(k)
        for a in al:
            num *= rising(-(n + a), k)
            den *= rising(a + 1, k)
        coeffs.append(Fraction(num * sign**k, den))
    return Poly(coeffs)


def stanley_rows(n_max: int, d_max: int) -> list[dict]:
    """Identity table: brute-force binomial minors against the product formula."""
    rows = []
    for n in range(n_max + 1):
        seq = binomial_coefficient_seq(n)
        for d in range(1, d_max + 1):
            for k in range(n + 1):
                minor = toeplitz_minor(MinorSpec(seq, k, d))
                formula = stanley_product(n, d, k)
                rows.append(_row(minor, formula, n=n, d=d, k=k))
    return rows


def mace_rows(d_max: int, k_max: int) -> list[dict]:
    seq = gamma_shifted_factorial(0)
    rows = []
    for d in range(1, d_max + 1):
        for k in range(k_max + 1):
            rows.append(_row(toeplitz_minor(MinorSpec(seq, k, d)), mace_product(d, k), d=d, k=k))
    return rows


def _row(minor: Fraction, formula: Fraction, **idx) -> dict:
    return {
        **idx,
        "minor": format_rational(minor),
        "formula": format_rational(formula),
        "equal": minor == formula,
    }


__all__ = [
    "GammaSeq",
    "MinorSpec",
    "b_poly",
    "hypergeom_poly",
    "hypergeom_poly_pochhammer",
    "mace_product",
    "mace_rows",
    "rising",
    "stanley_product",
    "stanley_rows",
    "toeplitz_minor",
]

from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realroot_lab.exactpoly import Poly, ZeroKind, bareiss_det, classify_zeros
from realroot_lab.msequences import gamma_reversed_factorial, gamma_shifted_factorial
from realroot_lab.stanley import stanley_product
from realroot_lab.transforms import (
    AlphaSeq,
    apply_gamma,
    f_d,
    j_op,
    malo_schur_compose,
    s_r,
    s_tilde_r,
    u_alpha,
    v_alpha,
)

coeff_lists = st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=6), min_size=1, max_size=16)
polys = coeff_lists.map(Poly)
CLOSED = (ZeroKind.ALL_REAL_NEGATIVE, ZeroKind.ZERO_POLY)


def convolve_oracle(alpha: dict, a: list, shift: int) -> list:
    """b_k = sum_j alpha_j a[k-j] a[k+shift+j] by explicit index loops."""
    n = len(a) - 1
    out = []
    for k in range(n + 1):
        acc = Fraction(0)
        for j, v in alpha.items():
            lo, hi = k - j, k + shift + j
            if 0 <= lo <= n and 0 <= hi <= n:
                acc += v * a[lo] * a[hi]
        out.append(acc)
    return out


def test_u_alpha_identity_alpha():
    assert u_alpha(AlphaSeq({0: 1}), Poly([1, 2, 1])) == Poly([1, 4, 1])


def test_u_alpha_first_difference():
    alpha = {0: 1, 1: -1}
    assert convolve_oracle(alpha, [1, 2, 1], 0) == [1, 3, 1]
    assert u_alpha(AlphaSeq(alpha), Poly([1, 2, 1])) == Poly([1, 3, 1])


def test_u_alpha_out_of_range_shift_vanishes():
    p = Poly.binomial(5)
    assert u_alpha(AlphaSeq({0: 1, 6: -1}), p) == Poly(c * c for c in p)


def test_v_alpha_examples():
    assert v_alpha(AlphaSeq({0: 1}), Poly([1, 1])) == Poly([1])
    alpha = {0: 1, 1: -1}
    assert convolve_oracle(alpha, [1, 2, 1], 1) == [2, 2, 0]
    assert v_alpha(AlphaSeq(alpha), Poly([1, 2, 1])) == Poly([2, 2])
    assert v_alpha(AlphaSeq({}), Poly([3, 1, 4])).is_zero()


def test_alpha_seq_drops_zeros_and_parses():
    a = AlphaSeq.parse("0:1, 3:0, 6:-1/2")
    assert a.support == {0: 1, 6: Fraction(-1, 2)}
    with pytest.raises(ValueError):
        AlphaSeq({-1: 1})


@settings(max_examples=60, deadline=None)
@given(coeff_lists, st.dictionaries(st.integers(0, 8), st.fractions(-3, 3, max_denominator=4), max_size=4))
def test_u_v_match_convolution_oracle(a, alpha):
    p = Poly(a)
    a = list(p.coeffs)
    if not a:
        return
    assert list(u_alpha(AlphaSeq(alpha), p).coeffs) == _strip(convolve_oracle(alpha, a, 0))
    assert list(v_alpha(AlphaSeq(alpha), p).coeffs) == _strip(convolve_oracle(alpha, a, 1))


def _strip(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def test_s1_on_square():
    out = s_r(1, Poly([1, 2, 1]))
    assert out == Poly([1, 3, 1])
    assert classify_zeros(out).kind == ZeroKind.ALL_REAL_NEGATIVE


@settings(max_examples=30, deadline=None)
@given(polys)
def test_s0_is_zero(p):
    assert s_r(0, p).is_zero()
    assert s_tilde_r(0, p).is_zero()


def test_s4_closure_n10():
    assert classify_zeros(s_r(4, Poly.binomial(10))).kind == ZeroKind.ALL_REAL_NEGATIVE


@pytest.mark.parametrize("r", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [0, 1, 5, 12])
def test_sr_closure_on_binomials(r, n):
    assert classify_zeros(s_r(r, Poly.binomial(n))).kind in CLOSED
    assert classify_zeros(s_tilde_r(r, Poly.binomial(n))).kind in CLOSED


@settings(max_examples=40, deadline=None)
@given(polys)
def test_f1_is_identity(p):
    assert f_d(1, p) == p


@settings(max_examples=200, deadline=None)
@given(polys)
def test_f2_equals_s1(p):
    assert f_d(2, p) == s_r(1, p)


def test_f3_binomial_matches_product_formula():
    # brute-force 3x3 determinants written out here
    a = lambda m: Fraction(comb(4, m)) if 0 <= m <= 4 else Fraction(0)  # noqa: E731
    img = f_d(3, Poly.binomial(4))
    for k in range(5):
        direct = bareiss_det([[a(k - i + j) for j in range(3)] for i in range(3)])
        assert img.coeff(k) == direct == stanley_product(4, 3, k)


@settings(max_examples=40, deadline=None)
@given(polys, st.integers(1, 5))
def test_fd_coefficients_vanish_beyond_degree(p, d):
    # the truncation at deg p drops nothing: minors past n contain a zero row
    n = p.degree
    for k in range(n + 1, n + d + 2):
        rows = [[p.coeff(k - i + j) for j in range(d)] for i in range(d)]
        assert bareiss_det(rows) == 0
    for k in range(n + 1, n + 4):
        a = p.coeff
        t = 4 * (a(k) ** 2 - a(k - 1) * a(k + 1)) * (a(k + 1) ** 2 - a(k) * a(k + 2)) - (
            a(k) * a(k + 1) - a(k - 1) * a(k + 2)
        ) ** 2
        assert t == 0


@settings(max_examples=60, deadline=None)
@given(polys, st.integers(0, 20))
def test_sr_beyond_degree_is_squares(p, extra):
    r = p.degree + 1 + extra
    assert s_r(r, p) == Poly(c * c for c in p)


@settings(max_examples=60, deadline=None)
@given(polys, st.fractions(-5, 5, max_denominator=5), st.dictionaries(st.integers(0, 6), st.integers(-3, 3), max_size=3))
def test_u_alpha_is_quadratic(p, c, alpha):
    a = AlphaSeq(alpha)
    assert u_alpha(a, p.scale(c)) == u_alpha(a, p).scale(c * c)


def inv_fact(m):
    return Fraction(1, factorial(m)) if m >= 0 else Fraction(0)


def j_binomial_oracle(n, k):
    pref = 4 * factorial(n) * factorial(n + 1) * factorial(n + 2)
    return pref * comb(n, k) * inv_fact(k + 1) * inv_fact(k + 2) ** 2 * inv_fact(n - k - 1) * inv_fact(n - k + 1) ** 2


@pytest.mark.parametrize("n", range(16))
def test_j_binomial_closed_form(n):
    img = j_op(Poly.binomial(n))
    assert [img.coeff(k) for k in range(n + 1)] == [j_binomial_oracle(n, k) for k in range(n + 1)]


def test_j_small_cases():
    # a = (1, 1): k=0 gives 4*1*1 - 1 = 3, k=1 gives 4*1*0 - 0 = 0
    assert j_op(Poly([1, 1])) == Poly([3])
    assert j_op(Poly([7])).is_zero()


def test_compose_examples():
    assert malo_schur_compose(Poly([1, 2, 1]), Poly([1, 2, 1])) == Poly([1, 4, 1])
    assert malo_schur_compose(Poly([3, 5, 7]), Poly([2])) == Poly([6])
    assert malo_schur_compose(Poly([1, 1, 1]), Poly([1, 1, 1]), with_factorial=True) == Poly([1, 1, 2])


def test_apply_gamma_examples():
    p = Poly.binomial(8)
    assert apply_gamma(lambda k: 1, p) == p
    assert classify_zeros(apply_gamma(gamma_shifted_factorial(1), p)).kind == ZeroKind.ALL_REAL_NEGATIVE
    assert classify_zeros(apply_gamma(gamma_reversed_factorial(8, 2), p)).kind == ZeroKind.ALL_REAL_NEGATIVE


def real_rooted(roots):
    p = Poly([1])
    for r in roots:
        p = p * Poly([-r, 1])
    return p


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.integers(-12, 12), min_size=1, max_size=7),
    st.lists(st.integers(1, 12), min_size=1, max_size=7),
    st.booleans(),
    st.booleans(),
)
def test_malo_schur_preserves_real_roots(p_roots, q_roots, q_positive, weighted):
    p = real_rooted(p_roots)
    q = real_rooted(q_roots if q_positive else [-r for r in q_roots])
    v = classify_zeros(malo_schur_compose(p, q, weighted))
    assert v.kind in (ZeroKind.ALL_REAL, ZeroKind.ALL_REAL_NEGATIVE, ZeroKind.ZERO_POLY)

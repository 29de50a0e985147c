from fractions import Fraction
from math import factorial

import pytest

from realroot_lab.exactpoly import Poly, ZeroKind, classify_zeros
from realroot_lab.msequences import (
    binomial_family,
    exp_truncation_family,
    gamma_constant,
    gamma_from_list,
    gamma_reversed_factorial,
    gamma_shifted_factorial,
    parse_sequence,
    polya_schur_check,
    rapid_check,
    rapid_threshold_ok,
    seq_sr_image,
    seq_two_pow_minus_k2,
    sweep_sr_on_family,
)
from realroot_lab.transforms import apply_gamma


def test_shifted_factorial_values():
    assert gamma_shifted_factorial(0)(3) == Fraction(1, 6)
    assert gamma_shifted_factorial(2)(0) == Fraction(1, 2)


def test_reversed_factorial_boundary():
    g = gamma_reversed_factorial(3, 1)
    assert g(4) == 1 and g(5) == 0
    g = gamma_reversed_factorial(2, 0)
    assert [g(k) for k in range(5)] == [Fraction(1, 2), 1, 1, 0, 0]


def test_reversed_factorial_on_binomial():
    p = apply_gamma(gamma_reversed_factorial(5, 2), Poly.binomial(5))
    assert classify_zeros(p).kind == ZeroKind.ALL_REAL_NEGATIVE


def test_polya_schur_consistent_cases():
    assert polya_schur_check(gamma_constant(1), 10).consistent
    assert polya_schur_check(gamma_shifted_factorial(1), 20).consistent
    v = polya_schur_check(gamma_shifted_factorial(4), 25)
    assert v.consistent and v.summary == "consistent-up-to-25"


def test_polya_schur_refutes_with_witness():
    # T[(1+x)^2] = 1 + 2x - x^2 has roots of both signs
    v = polya_schur_check(gamma_from_list([1, 1, -1], tail=1), 6)
    assert not v.consistent and v.witness == 2


def test_polya_schur_allows_origin_roots():
    # gamma_k = k is a classical multiplier sequence; its images vanish at 0
    assert polya_schur_check(lambda k: Fraction(k), 12).consistent


def test_polya_schur_monotone_in_horizon():
    g = gamma_shifted_factorial(2)
    big = polya_schur_check(g, 14)
    for n in (0, 5, 9):
        small = polya_schur_check(g, n)
        assert small.consistent and small.per_n == big.per_n[: n + 1]


def test_diagonal_operators_multiply():
    g1, g2 = gamma_shifted_factorial(1), gamma_shifted_factorial(3)
    p = Poly.binomial(9)
    assert apply_gamma(g2, apply_gamma(g1, p)) == apply_gamma(g1 * g2, p)


def test_rapid_two_pow_minus_k_squared_exact_ratio():
    res = rapid_check(seq_two_pow_minus_k2(), 2, 100)
    assert res.holds and res.threshold_ok
    assert all(r == 4 for r in res.ratios) and len(res.ratios) == 99


def test_rapid_fails_for_inverse_factorials():
    res = rapid_check(gamma_shifted_factorial(0), 2, 10)
    assert not res.holds and res.first_violation == 1
    # s_k^2 / (s_{k-1} s_{k+1}) = (k+1)/k
    assert res.ratios == tuple(Fraction(k + 1, k) for k in range(1, 10))


@pytest.mark.parametrize("r", range(1, 11))
def test_rapid_image_sequences(r):
    assert rapid_check(seq_sr_image(seq_two_pow_minus_k2(), r), 2, 50).holds


def test_rapid_threshold_algebra():
    # alpha = 2, s1 = 1/2: (2*4 - 1/2)^2 = 56.25 >= 32
    assert rapid_threshold_ok(Fraction(2), Fraction(1, 2))
    assert not rapid_threshold_ok(Fraction(3, 2), Fraction(0))
    # at alpha = 2 the threshold holds exactly for s1 <= 8 - 4 sqrt2
    assert not rapid_threshold_ok(Fraction(2), Fraction(20))
    assert rapid_threshold_ok(Fraction(4), Fraction(20))


def test_rapid_rejects_nonpositive_terms():
    with pytest.raises(ValueError):
        rapid_check(gamma_from_list([1, 0, 1], tail=1), 2, 5)


def test_parse_sequence():
    assert parse_sequence("shifted-factorial:4")(0) == Fraction(1, 24)
    assert parse_sequence("reversed-factorial:3:1")(4) == 1
    assert parse_sequence("2powk2")(3) == Fraction(1, 512)
    assert parse_sequence("list:1,2;5")(7) == 5
    assert parse_sequence("inv-factorial")(4) == Fraction(1, 24)
    assert parse_sequence("rapid-image:1")(1) == Fraction(3, 16)
    for bad in ("nope", "shifted-factorial", "list:1,x"):
        with pytest.raises(ValueError):
            parse_sequence(bad)


def test_sweep_closure_on_binomials():
    rows = sweep_sr_on_family(range(1, 5), binomial_family(20))
    assert len(rows) == 4 * 21
    assert all(r["verdict"] in ("AllRealNegative", "ZeroPoly") for r in rows)
    assert [(r["r"], r["n"]) for r in rows[:3]] == [(1, 0), (1, 1), (1, 2)]


def test_sweep_r6_on_exp_truncations_finds_non_real():
    rows = sweep_sr_on_family([6], exp_truncation_family(20))
    assert any(r["verdict"] == "NotAllReal" for r in rows)


def test_sweep_r5_records_rows_and_tilde_variant():
    rows = sweep_sr_on_family([5], binomial_family(8), op="s_tilde_r")
    assert {tuple(sorted(r)) for r in rows} == {("degree", "n", "negativeRootCount", "r", "verdict")}


def test_sweep_parallel_is_order_stable(monkeypatch):
    serial = sweep_sr_on_family([1, 2], binomial_family(10))
    monkeypatch.setenv("REALROOT_LAB_THREADS", "2")
    assert sweep_sr_on_family([1, 2], binomial_family(10)) == serial


def test_exp_truncations():
    fam = exp_truncation_family(3, 2)
    assert [m for m, _ in fam] == [2, 3]
    assert fam[1][1] == Poly([1, 1, Fraction(1, 2), Fraction(1, factorial(3))])

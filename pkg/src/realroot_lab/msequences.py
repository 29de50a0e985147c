"""Multiplier-sequence generators, the finite-horizon Polya-Schur test,
rapidly-decreasing checks and exploratory sweeps of ``S_r``.

Nothing here asserts that a sequence *is* a multiplier sequence: the
Polya-Schur test is only run out to a finite horizon.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Sequence

from .exactpoly import Poly, RootVerdict, ZeroKind, as_rational, classify_zeros, format_rational
from .transforms import apply_gamma, s_r, s_tilde_r

THREADS_ENV = "REALROOT_LAB_THREADS"


@dataclass(frozen=True)
class GammaSeq:
    value: Callable[[int], Fraction]
    description: str = ""

    def __call__(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        return as_rational(self.value(k))

    def __mul__(self, other: "GammaSeq") -> "GammaSeq":
        return GammaSeq(lambda k: self(k) * other(k), f"({self.description})*({other.description})")


def _inv_fact(m: int) -> Fraction:
    return Fraction(1, factorial(m)) if m >= 0 else Fraction(0)


def gamma_shifted_factorial(j: int) -> GammaSeq:
    """gamma_k = 1/(k+j)!"""
    if j < 0:
        raise ValueError("j must be >= 0")
    return GammaSeq(lambda k: _inv_fact(k + j), f"1/(k+{j})!")


def gamma_reversed_factorial(n: int, d: int) -> GammaSeq:
    """gamma_k = 1/(n-k+d)!, zero once n-k+d < 0."""
    if n < 0 or d < 0:
        raise ValueError("n and d must be >= 0")
    return GammaSeq(lambda k: _inv_fact(n - k + d), f"1/({n}-k+{d})!")


def gamma_constant(c=1) -> GammaSeq:
    c = as_rational(c)
    return GammaSeq(lambda k: c, f"{format_rational(c)}")


def gamma_from_list(values: Sequence, tail=0) -> GammaSeq:
    """Explicit finite prefix, then ``tail`` forever."""
    vals = [as_rational(v) for v in values]
    t = as_rational(tail)
    return GammaSeq(lambda k: vals[k] if k < len(vals) else t, f"list{[format_rational(v) for v in vals]}")


def seq_two_pow_minus_k2() -> GammaSeq:
    """s_k = 2**(-k**2)."""
    return GammaSeq(lambda k: Fraction(1, 2 ** (k * k)), "2^(-k^2)")


def seq_sr_image(base: GammaSeq, r: int) -> GammaSeq:
    """t_k = a_k**2 - a_{k-r} a_{k+r} for a base sequence a."""
    return GammaSeq(lambda k: base(k) ** 2 - base(k - r) * base(k + r), f"S_{r} image of {base.description}")


def parse_sequence(spec: str) -> GammaSeq:
    """Parse a named sequence.

    Accepted forms: ``ones``, ``inv-factorial``, ``shifted-factorial:J``,
    ``reversed-factorial:N:D``, ``2powk2``, ``rapid-image:R`` (the
    ``S_R`` image of ``2powk2``), ``list:v0,v1,...[;tail]``.
    """
    name, _, rest = spec.partition(":")
    args = rest.split(":") if rest else []
    try:
        if name == "ones" and not args:
            return gamma_constant(1)
        if name == "inv-factorial" and not args:
            return gamma_shifted_factorial(0)
        if name == "shifted-factorial" and len(args) == 1:
            return gamma_shifted_factorial(int(args[0]))
        if name == "reversed-factorial" and len(args) == 2:
            return gamma_reversed_factorial(int(args[0]), int(args[1]))
        if name == "2powk2" and not args:
            return seq_two_pow_minus_k2()
        if name == "rapid-image" and len(args) == 1:
            return seq_sr_image(seq_two_pow_minus_k2(), int(args[0]))
        if name == "list" and rest:
            body, _, tail = rest.partition(";")
            return gamma_from_list(body.split(","), tail or 0)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad sequence spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown sequence spec {spec!r}")


@dataclass(frozen=True)
class MSVerdict:
    horizon: int
    per_n: tuple[RootVerdict, ...]

    @property
    def witness(self) -> int | None:
        """First n whose image has a zero off the real line or of mixed sign."""
        for n, v in enumerate(self.per_n):
            if v.kind != ZeroKind.ZERO_POLY and not v.same_sign:
                return n
        return None

    @property
    def consistent(self) -> bool:
        return self.witness is None

    @property
    def summary(self) -> str:
        if self.consistent:
            return f"consistent-up-to-{self.horizon}"
        return f"refuted-at-n={self.witness}"

    def to_json(self) -> dict:
        return {
            "horizon": self.horizon,
            "verdict": self.summary,
            "consistent": self.consistent,
            "witness": self.witness,
            "perN": [
                {"n": n, "kind": v.kind.value, "degree": v.degree, "sameSign": v.same_sign}
                for n, v in enumerate(self.per_n)
            ],
        }


def _ps_instance(args) -> RootVerdict:
    gamma, n = args
    return classify_zeros(apply_gamma(gamma, Poly.binomial(n)))


def _pool_size() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _ordered_map(fn, items: list) -> list:
    """Map preserving input order; fans out to processes when allowed."""
    workers = min(_pool_size(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    try:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, items))
    except Exception:
        # unpicklable sequences (lambdas) fall back to serial evaluation
        return [fn(x) for x in items]


def polya_schur_check(gamma: Callable[[int], Fraction], horizon: int) -> MSVerdict:
    """Classify ``T[(1+x)^n]`` for n = 0..horizon."""
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    verdicts = [_ps_instance((gamma, n)) for n in range(horizon + 1)]
    return MSVerdict(horizon, tuple(verdicts))


def rapid_threshold_ok(alpha: Fraction, s1: Fraction) -> bool:
    """``alpha >= max(2, (sqrt2/2)(1 + sqrt(1 + s1)))`` without square roots.

    For alpha >= 2 the second bound is ``alpha*sqrt2 - 1 >= sqrt(1+s1)``;
    squaring gives ``2 alpha^2 - s1 >= 2 sqrt2 alpha`` and squaring again
    (both sides nonnegative) ``(2 alpha^2 - s1)^2 >= 8 alpha^2``.
    """
    if alpha < 2:
        return False
    lhs = 2 * alpha * alpha - s1
    return lhs >= 0 and lhs * lhs >= 8 * alpha * alpha


@dataclass(frozen=True)
class RapidResult:
    holds: bool
    threshold_ok: bool
    first_violation: int | None
    ratios: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "thresholdOk": self.threshold_ok,
            "firstViolation": self.first_violation,
            "minRatio": format_rational(min(self.ratios)) if self.ratios else None,
        }


def rapid_check(s: Callable[[int], Fraction], alpha, K: int) -> RapidResult:
    """Check ``s_k^2 >= alpha^2 s_{k-1} s_{k+1}`` for k = 1..K-1 plus the alpha threshold.

    ``ratios[k-1]`` is ``s_k^2 / (s_{k-1} s_{k+1})``.
    """
    alpha = as_rational(alpha)
    vals = [as_rational(s(k)) for k in range(K + 1)]
    for k, v in enumerate(vals[:K]):
        if v <= 0:
            raise ValueError(f"sequence term s_{k} = {format_rational(v)} is not positive")
    threshold = rapid_threshold_ok(alpha, vals[1]) if K >= 1 else alpha >= 2
    ratios = []
    violation = None
    for k in range(1, K):
        lo, hi = vals[k - 1], vals[k + 1]
        if hi <= 0:
            raise ValueError(f"sequence term s_{k + 1} is not positive")
        ratio = vals[k] ** 2 / (lo * hi)
        ratios.append(ratio)
        if violation is None and ratio < alpha * alpha:
            violation = k
    return RapidResult(threshold and violation is None, threshold, violation, tuple(ratios))


def binomial_family(n_max: int) -> list[tuple[int, Poly]]:
    return [(n, Poly.binomial(n)) for n in range(n_max + 1)]


def exp_truncation_family(m_max: int, m_min: int = 0) -> list[tuple[int, Poly]]:
    """Partial sums ``sum_{k<=m} x^k/k!``."""
    return [(m, Poly(Fraction(1, factorial(k)) for k in range(m + 1))) for m in range(m_min, m_max + 1)]


def _sweep_cell(args) -> dict:
    op, r, n, p = args
    image = (s_r if op == "s_r" else s_tilde_r)(r, p)
    v = classify_zeros(image)
    return {
        "r": r,
        "n": n,
        "verdict": v.kind.value,
        "negativeRootCount": v.negative_root_count,
        "degree": v.degree,
    }


def sweep_sr_on_family(
    r_range: Iterable[int],
    family: Iterable[tuple[int, Poly]],
    op: str = "s_r",
) -> list[dict]:
    """Classify ``op(r, p)`` over a grid; rows ordered by (r, n). Empirical only."""
    if op not in ("s_r", "s_tilde_r"):
        raise ValueError(f"unknown sweep operator {op!r}")
    fam = list(family)
    cells = [(op, r, n, p) for r in r_range for n, p in fam]
    return _ordered_map(_sweep_cell, cells)


def binomial_coefficient_seq(n: int) -> GammaSeq:
    """a_k = C(n, k), zero beyond n."""
    return GammaSeq(lambda k: Fraction(comb(n, k)) if k <= n else Fraction(0), f"C({n},k)")

"""Exact coefficient generators for entire-function images, partial sums at
rational points, certified tail enclosures and Laguerre expressions.

A tail ``sum_{k>n} t_k`` of the j-th derivative series at ``x0 < 0`` is
bounded in two pieces:

* on a checked window ``n+1..H`` the terms alternate and decrease in
  magnitude, so their sum lies between 0 and the first omitted term;
* beyond ``H`` every term is dominated by a majorant series whose
  consecutive ratio is nonincreasing in k by construction, so the rest is
  at most ``m_{H+1} / (1 - q)`` with ``q`` the ratio at ``H+1``.

Each generator carries its majorant ``M_k >= |b_k|`` and a closed-form
ratio bound ``rho(k) >= M_{k+1}/M_k`` that is nonincreasing in k.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Sequence

from .exactpoly import Number, Poly, as_rational, classify_zeros, format_rational, to_decimal
from .stanley import mace_product
from .transforms import AlphaSeq, turan_expression


class TailNotCertified(ArithmeticError):
    """The tail bound could not be certified on the requested window."""


def _inv_fact(m: int) -> Fraction:
    return Fraction(1, factorial(m)) if m >= 0 else Fraction(0)


@dataclass(frozen=True)
class SeriesGen:
    coeff: Callable[[int], Fraction]
    description: str
    majorant: Callable[[int], Fraction]
    majorant_ratio: Callable[[int], Fraction]

    def __post_init__(self):
        object.__setattr__(self, "coeff", lru_cache(maxsize=None)(self.coeff))


def gen_exp() -> SeriesGen:
    return SeriesGen(_inv_fact, "exp(x)", _inv_fact, lambda k: Fraction(1, k + 1))


def gen_u_alpha_exp(alpha: AlphaSeq) -> SeriesGen:
    """U_alpha[e^x]; |b_k| <= sum|alpha_j| / k!^2 since a_{k-j}a_{k+j} <= a_k^2."""
    total = sum((abs(v) for _, v in alpha.items()), Fraction(0))
    return SeriesGen(
        lambda k: sum((v * _inv_fact(k - j) * _inv_fact(k + j) for j, v in alpha.items()), Fraction(0)),
        f"U_alpha[exp] alpha={alpha.to_json()}",
        lambda k: total * _inv_fact(k) ** 2,
        lambda k: Fraction(1, (k + 1) ** 2),
    )


def gen_v_alpha_exp(alpha: AlphaSeq) -> SeriesGen:
    """V_alpha[e^x]; |c_k| <= sum|alpha_j| / (k!(k+1)!)."""
    total = sum((abs(v) for _, v in alpha.items()), Fraction(0))
    return SeriesGen(
        lambda k: sum((v * _inv_fact(k - j) * _inv_fact(k + 1 + j) for j, v in alpha.items()), Fraction(0)),
        f"V_alpha[exp] alpha={alpha.to_json()}",
        lambda k: total * _inv_fact(k) * _inv_fact(k + 1),
        lambda k: Fraction(1, (k + 1) * (k + 2)),
    )


def gen_sr_exp(r: int) -> SeriesGen:
    """S_r[e^x]: b_k = 1/k!^2 - 1/((k-r)!(k+r)!), and 0 <= b_k <= 1/k!^2."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return SeriesGen(lambda k: Fraction(0), "S_0[exp]", lambda k: Fraction(0), lambda k: Fraction(0))
    return SeriesGen(
        lambda k: _inv_fact(k) ** 2 - _inv_fact(k - r) * _inv_fact(k + r),
        f"S_{r}[exp]",
        lambda k: _inv_fact(k) ** 2,
        lambda k: Fraction(1, (k + 1) ** 2),
    )


def gen_srtilde_exp(r: int) -> SeriesGen:
    """S~_r[e^x]: c_k = 1/(k!(k+1)!) - 1/((k-r)!(k+1+r)!), 0 <= c_k <= 1/(k!(k+1)!)."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return SeriesGen(lambda k: Fraction(0), "S~_0[exp]", lambda k: Fraction(0), lambda k: Fraction(0))
    return SeriesGen(
        lambda k: _inv_fact(k) * _inv_fact(k + 1) - _inv_fact(k - r) * _inv_fact(k + 1 + r),
        f"S~_{r}[exp]",
        lambda k: _inv_fact(k) * _inv_fact(k + 1),
        lambda k: Fraction(1, (k + 1) * (k + 2)),
    )


def gen_fd_exp(d: int) -> SeriesGen:
    if d < 1:
        raise ValueError("d must be >= 1")

    def ratio(k: int) -> Fraction:
        out = Fraction(1)
        for j in range(d):
            out /= k + j + 1
        return out

    return SeriesGen(lambda k: mace_product(d, k), f"F_{d}[exp]", lambda k: mace_product(d, k), ratio)


def j_exp_closed(k: int) -> Fraction:
    return Fraction(4, factorial(k) * factorial(k + 1) * factorial(k + 2) ** 2)


def gen_j_exp() -> SeriesGen:
    return SeriesGen(
        j_exp_closed,
        "J[exp]",
        j_exp_closed,
        lambda k: Fraction(1, (k + 1) * (k + 2) * (k + 3) ** 2),
    )


# closed forms and their defining combinations, for identity checks

def s4_closed_form(k: int) -> Fraction:
    return Fraction(8 * (2 * k + 1) * (k * k + k + 3), factorial(k) * factorial(k + 4))


def s6_numerator(k: int) -> int:
    return 720 + 1884 * k + 1350 * k**2 + 960 * k**3 + 90 * k**4 + 36 * k**5


def sr_exp_by_definition(r: int, k: int) -> Fraction:
    a = _inv_fact
    return a(k) ** 2 - a(k - r) * a(k + r)


def j_exp_by_definition(k: int) -> Fraction:
    return turan_expression(_inv_fact, k)


def u_alpha_exp_coefficient(alpha: AlphaSeq, k: int) -> Fraction:
    """sum_{j<=k} alpha_j / ((k+j)!(k-j)!) -- the U_alpha[e^x] coefficient."""
    return sum((v * _inv_fact(k + j) * _inv_fact(k - j) for j, v in alpha.items() if j <= k), Fraction(0))


def v_alpha_exp_coefficient(alpha: AlphaSeq, k: int) -> Fraction:
    return sum((v * _inv_fact(k + 1 + j) * _inv_fact(k - j) for j, v in alpha.items() if j <= k), Fraction(0))


def _falling(k: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= k - i
    return out


def derivative_term(gen: SeriesGen, k: int, x0: Fraction, j: int) -> Fraction:
    """k(k-1)...(k-j+1) b_k x0^(k-j); zero for k < j."""
    if k < j:
        return Fraction(0)
    return _falling(k, j) * gen.coeff(k) * x0 ** (k - j)


def partial_sum(gen: SeriesGen, n: int, x0: Number, j: int = 0) -> Fraction:
    """Exact j-th derivative of sum_{k<=n} b_k x^k at x0."""
    if n < 0 or j < 0:
        raise ValueError("need n >= 0 and j >= 0")
    x0 = as_rational(x0)
    return sum((derivative_term(gen, k, x0, j) for k in range(j, n + 1)), Fraction(0))


def partial_sum_poly(gen: SeriesGen, n: int) -> Poly:
    return Poly(gen.coeff(k) for k in range(n + 1))


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty enclosure")

    @classmethod
    def point(cls, v: Number) -> "Enclosure":
        v = as_rational(v)
        return cls(v, v)

    def __add__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other: "Enclosure") -> "Enclosure":
        ps = [self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi]
        return Enclosure(min(ps), max(ps))

    def square(self) -> "Enclosure":
        if self.lo >= 0:
            return Enclosure(self.lo**2, self.hi**2)
        if self.hi <= 0:
            return Enclosure(self.hi**2, self.lo**2)
        return Enclosure(Fraction(0), max(self.lo**2, self.hi**2))

    def __contains__(self, v: Number) -> bool:
        v = as_rational(v)
        return self.lo <= v <= self.hi

    def contains(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def to_json(self) -> dict:
        return {
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "decimal_lo": to_decimal(self.lo),
            "decimal_hi": to_decimal(self.hi),
        }


@dataclass(frozen=True)
class TailCertificate:
    start_index: int
    checked_horizon: int
    geometric_ratio: Fraction
    bound: Fraction
    first_term: Fraction = Fraction(0)
    geometric_tail: Fraction = Fraction(0)
    method: str = "alternating-window+geometric-majorant"

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "startIndex": self.start_index,
            "checkedHorizon": self.checked_horizon,
            "geometricRatio": format_rational(self.geometric_ratio),
            "firstTerm": format_rational(self.first_term),
            "geometricTail": format_rational(self.geometric_tail),
            "bound": format_rational(self.bound),
            "decimal_bound": to_decimal(self.bound),
        }


DEFAULT_WINDOW = 200
DEFAULT_MAX_RATIO = Fraction(1, 2)


def tail_enclosure(
    gen: SeriesGen,
    n: int,
    x0: Number,
    j: int = 0,
    window: int = DEFAULT_WINDOW,
    max_ratio: Fraction = DEFAULT_MAX_RATIO,
) -> tuple[Enclosure, TailCertificate]:
    """Certified enclosure of ``E_n^(j)(x0) = sum_{k>n} t_k``.

    Raises :class:`TailNotCertified` when alternation, monotone decrease,
    majorant domination or the edge ratio ``q <= max_ratio`` fails.
    """
    x0 = as_rational(x0)
    if n < 0 or j < 0 or window < 1:
        raise ValueError("need n >= 0, j >= 0, window >= 1")
    start, horizon = n + 1, n + window
    if x0 == 0:
        # only the k = j term survives
        v = derivative_term(gen, j, x0, j) if j >= start else Fraction(0)
        return Enclosure.point(v), TailCertificate(start, start, Fraction(0), abs(v), v, Fraction(0), "exact-at-origin")
    if x0 > 0:
        raise TailNotCertified("terms at x0 > 0 do not alternate; only x0 <= 0 is supported")

    ax = abs(x0)
    terms = [derivative_term(gen, k, x0, j) for k in range(start, horizon + 1)]
    for offset, (t, u) in enumerate(zip(terms, terms[1:])):
        k = start + offset
        if abs(u) > abs(t):
            raise TailNotCertified(f"term magnitudes increase at k={k}->{k + 1}; raise n")
        if t and u and (t > 0) == (u > 0):
            raise TailNotCertified(f"terms do not alternate at k={k}->{k + 1}")

    def major(k: int) -> Fraction:
        if k < j:
            return Fraction(0)
        return _falling(k, j) * gen.majorant(k) * ax ** (k - j)

    for offset, t in enumerate(terms):
        if abs(t) > major(start + offset):
            raise TailNotCertified(f"majorant fails to dominate at k={start + offset}")

    edge = horizon + 1
    # ratio of consecutive majorant terms from edge on; each factor is nonincreasing in k
    q = Fraction(edge + 1, edge + 1 - j) * gen.majorant_ratio(edge) * ax if edge + 1 > j else Fraction(0)
    if q > max_ratio or q >= 1:
        raise TailNotCertified(f"geometric ratio {to_decimal(q, 6)} at horizon {horizon} exceeds {max_ratio}")
    geo = major(edge) / (1 - q)
    first = terms[0]
    bound = abs(first) + geo
    enc = Enclosure(min(Fraction(0), first) - geo, max(Fraction(0), first) + geo)
    return enc, TailCertificate(start, horizon, q, bound, first, geo)


def value_enclosure(gen: SeriesGen, n: int, x0: Number, j: int = 0, **kw) -> tuple[Enclosure, Fraction, TailCertificate]:
    """Enclosure of the j-th derivative of the full series at x0."""
    s = partial_sum(gen, n, x0, j)
    tail, cert = tail_enclosure(gen, n, x0, j, **kw)
    return Enclosure.point(s) + tail, s, cert


@dataclass(frozen=True)
class L1Result:
    n: int
    x0: Fraction
    partial_sums: tuple[Fraction, Fraction, Fraction]
    tails: tuple[Enclosure, Enclosure, Enclosure]
    certificates: tuple[TailCertificate, TailCertificate, TailCertificate]
    enclosure: Enclosure = field(compare=False)

    @property
    def refuted(self) -> bool:
        """True when (f')^2 - f f'' < 0 is certified at x0."""
        return self.enclosure.hi < 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "x0": format_rational(self.x0),
            "partialSums": [
                {"j": j, "exact": format_rational(s), "decimal": to_decimal(s)}
                for j, s in enumerate(self.partial_sums)
            ],
            "tails": [t.to_json() for t in self.tails],
            "tailCertificates": [c.to_json() for c in self.certificates],
            "laguerreL1": self.enclosure.to_json(),
        }


def laguerre_L1_result(gen: SeriesGen, n: int, x0: Number, **kw) -> L1Result:
    x0 = as_rational(x0)
    sums, tails, certs, vals = [], [], [], []
    for j in range(3):
        val, s, cert = value_enclosure(gen, n, x0, j, **kw)
        sums.append(s)
        tails.append(val - Enclosure.point(s))
        certs.append(cert)
        vals.append(val)
    f0, f1, f2 = vals
    enc = f1.square() - f0 * f2
    return L1Result(n, x0, tuple(sums), tuple(tails), tuple(certs), enc)


def laguerre_L1_enclosure(gen: SeriesGen, n: int, x0: Number, **kw) -> Enclosure:
    """Certified enclosure of (f')^2 - f f'' at x0."""
    return laguerre_L1_result(gen, n, x0, **kw).enclosure


def refute_with_escalation(gen: SeriesGen, x0: Number, ladder: Sequence[int] = (30, 60, 120)) -> L1Result:
    """Try each truncation order in turn; return the first certified refutation.

    If no order refutes, the last successfully certified result is
    returned; if none certifies, the last :class:`TailNotCertified` is raised.
    """
    last, err = None, None
    for n in ladder:
        try:
            res = laguerre_L1_result(gen, n, x0)
        except TailNotCertified as exc:
            err = exc
            continue
        if res.refuted:
            return res
        last = res
    if last is None:
        raise err if err else TailNotCertified("empty ladder")
    return last


def laguerre_Ln_poly(p: Poly, n: int) -> Poly:
    """sum_{k<=2n} (-1)^(k+n) C(2n,k)/(2n)! p^(k) p^(2n-k)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    derivs = [p]
    for _ in range(2 * n):
        derivs.append(derivs[-1].derivative())
    out = Poly()
    for k in range(2 * n + 1):
        c = Fraction((-1) ** (k + n) * comb(2 * n, k), factorial(2 * n))
        out = out + (derivs[k] * derivs[2 * n - k]).scale(c)
    return out


def truncation_diagnostic(gen: SeriesGen, degrees: Sequence[int]) -> list[dict]:
    """Zero classification of the truncations sum_{k<=m} b_k x^k.

    Finite evidence only; an entire function's truncations need not be
    real-rooted even when the function is in the Laguerre-Polya class.
    """
    rows = []
    for m in degrees:
        v = classify_zeros(partial_sum_poly(gen, m))
        rows.append({"m": m, "verdict": v.kind.value, "realRootCount": v.real_root_count, "degree": v.degree})
    return rows

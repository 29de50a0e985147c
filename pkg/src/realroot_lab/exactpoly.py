"""Exact rational polynomials and Sturm-sequence zero certificates.

Scalars are :class:`fractions.Fraction`; a :class:`Poly` is an immutable
dense coefficient tuple in ascending powers with trailing zeros stripped.
Nothing in this module rounds.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]


class ZeroPolynomialError(ValueError):
    """Raised when an operation needs a nonzero polynomial."""


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or a ``"num/den"`` string to a Fraction.

    Floats are rejected: they would smuggle rounding into exact paths.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_decimal(q: Fraction, digits: int = 15) -> str:
    """Render ``q`` in scientific notation with ``digits`` significant digits.

    Digits are truncated toward zero, so the printed mantissa is a prefix
    of the exact decimal expansion.
    """
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    q = abs(q)
    # exponent e with 10**e <= q < 10**(e+1)
    e = len(str(q.numerator)) - len(str(q.denominator))
    if Fraction(10) ** e > q:
        e -= 1
    if Fraction(10) ** (e + 1) <= q:
        e += 1
    scaled = q / Fraction(10) ** (e - digits + 1)
    mant = str(scaled.numerator // scaled.denominator)
    return f"{sign}{mant[0]}.{mant[1:]}e{e:+03d}"


@dataclass(frozen=True)
class Poly:
    coeffs: tuple[Fraction, ...] = ()

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def binomial(cls, n: int) -> "Poly":
        """(1 + x)**n expanded."""
        from math import comb

        return cls([comb(n, k) for k in range(n + 1)])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        """Coefficient of x**k, zero outside 0..degree."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __add__(self, other: "Poly | Number") -> "Poly":
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly | Number") -> "Poly":
        return self + (-_lift(other))

    def __rsub__(self, other: Number) -> "Poly":
        return _lift(other) - self

    def __mul__(self, other: "Poly | Number") -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        result, base = Poly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: Number) -> "Poly":
        c = as_rational(c)
        return Poly(c * a for a in self.coeffs)

    def derivative(self, order: int = 1) -> "Poly":
        p = self
        for _ in range(order):
            p = Poly(k * c for k, c in enumerate(p.coeffs) if k)
        return p

    def __call__(self, x: Number) -> Fraction:
        return self.evaluate(x)

    def evaluate(self, x: Number) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for i in range(dq, -1, -1):
            c = rem[i + len(other.coeffs) - 1] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Poly(quot), Poly(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        return self.scale(1 / self.lc) if self.coeffs else self

    def primitive(self) -> "Poly":
        """Positive rational multiple with coprime integer coefficients.

        The scaling factor is positive, so signs at every point are kept.
        """
        if not self.coeffs:
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [c.numerator * (den // c.denominator) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return Poly(Fraction(v // g) for v in ints)

    def to_json(self) -> dict:
        return {"coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "Poly":
        if isinstance(obj, dict):
            obj = obj.get("coeffs")
        if not isinstance(obj, list):
            raise ValueError("polynomial JSON must be an object with a 'coeffs' list")
        cs = []
        for c in obj:
            if isinstance(c, bool) or not isinstance(c, (str, int)):
                raise ValueError(f"coefficient {c!r} is not an integer or 'num/den' string")
            try:
                cs.append(as_rational(c))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"bad coefficient {c!r}: {exc}") from None
        return cls(cs)


def _lift(x: "Poly | Number") -> Poly:
    return x if isinstance(x, Poly) else Poly([x])


def read_poly(path: str) -> Poly:
    with open(path) as fh:
        return Poly.from_json(json.load(fh))


# free-function spellings of the arithmetic, for callers that prefer them
def add(p: Poly, q: Poly) -> Poly:
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def scale(p: Poly, c: Number) -> Poly:
    return p.scale(c)


def derivative(p: Poly, order: int = 1) -> Poly:
    return p.derivative(order)


def evaluate(p: Poly, x: Number) -> Fraction:
    return p.evaluate(x)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q (zero if both inputs are zero)."""
    a, b = p.primitive(), q.primitive()
    while b:
        a, b = b, (a % b).primitive()
    return a.monic()


def squarefree_part(p: Poly) -> Poly:
    """``p / gcd(p, p')`` made monic: same roots, all simple."""
    if not p:
        raise ZeroPolynomialError("squarefree_part of the zero polynomial")
    if p.degree == 0:
        return Poly([1])
    return (p // poly_gcd(p, p.derivative())).monic()


def sturm_sequence(p: Poly) -> list[Poly]:
    """Sturm chain p, p', -rem, ... with each member scaled positively."""
    if not p:
        raise ZeroPolynomialError("Sturm sequence of the zero polynomial")
    chain = [p.primitive()]
    d = p.derivative().primitive()
    while d:
        chain.append(d)
        d = (-(chain[-2] % chain[-1])).primitive()
    return chain


def _sign(v: Fraction | int) -> int:
    return (v > 0) - (v < 0)


def _sign_changes(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _signs_at(chain: Sequence[Poly], x: Fraction | None, at: int) -> list[int]:
    """Signs of the chain at ``x``; ``x is None`` means -inf (at=-1) or +inf (at=+1)."""
    if x is None:
        return [_sign(q.lc) * (1 if at > 0 or q.degree % 2 == 0 else -1) for q in chain]
    return [_sign(q.evaluate(x)) for q in chain]


def sign_variations(p: Poly, x: Number | None, at: int = 1) -> int:
    return _sign_changes(_signs_at(sturm_sequence(p), None if x is None else as_rational(x), at))


def count_real_roots(p: Poly, lo: Number | None = None, hi: Number | None = None) -> int:
    """Distinct real roots of a square-free ``p`` in ``(lo, hi]``.

    ``None`` stands for -inf / +inf. Endpoints may be roots.
    """
    if not p:
        raise ZeroPolynomialError("cannot count roots of the zero polynomial")
    chain = sturm_sequence(p)
    a = None if lo is None else as_rational(lo)
    b = None if hi is None else as_rational(hi)
    if a is not None and b is not None and a >= b:
        return 0
    return _sign_changes(_signs_at(chain, a, -1)) - _sign_changes(_signs_at(chain, b, 1))


class ZeroKind(str, enum.Enum):
    ALL_REAL_NEGATIVE = "AllRealNegative"
    ALL_REAL = "AllReal"
    NOT_ALL_REAL = "NotAllReal"
    ZERO_POLY = "ZeroPoly"


@dataclass(frozen=True)
class RootVerdict:
    """Multiplicity-aware classification of a polynomial's zeros.

    A nonzero constant counts as ``AllRealNegative`` (it has no zeros at
    all). A root at the origin disqualifies ``AllRealNegative``; the
    ``all_real_nonpositive`` flag records that weaker property.
    """

    kind: ZeroKind
    degree: int
    real_root_count: int
    negative_root_count: int
    zero_root_count: int
    positive_root_count: int
    certificate: tuple[dict, ...] = field(default=(), compare=False)

    @property
    def all_real_nonpositive(self) -> bool:
        return self.kind != ZeroKind.ZERO_POLY and (
            self.negative_root_count + self.zero_root_count == self.degree
        )

    @property
    def same_sign(self) -> bool:
        """All zeros real and lying on one closed half-line."""
        if self.kind == ZeroKind.ZERO_POLY:
            return False
        return self.all_real_nonpositive or (
            self.positive_root_count + self.zero_root_count == self.degree
        )

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "degree": self.degree,
            "realRootCount": self.real_root_count,
            "negativeRootCount": self.negative_root_count,
            "zeroRootCount": self.zero_root_count,
            "positiveRootCount": self.positive_root_count,
            "allRealNonpositive": self.all_real_nonpositive,
            "certificate": list(self.certificate),
        }


def gcd_chain(p: Poly) -> list[Poly]:
    """p, gcd(p, p'), gcd of that with its derivative, ... down to a constant.

    The i-th member (from 0) vanishes exactly at roots of multiplicity > i.
    """
    chain = [p]
    while chain[-1].degree > 0:
        g = chain[-1]
        chain.append(poly_gcd(g, g.derivative()))
    return chain[:-1]


def classify_zeros(p: Poly) -> RootVerdict:
    if not p:
        return RootVerdict(ZeroKind.ZERO_POLY, -1, 0, 0, 0, 0)
    real = neg = zero = 0
    cert = []
    for level, g in enumerate(gcd_chain(p)):
        sf = squarefree_part(g)
        chain = sturm_sequence(sf)
        v_minf = _sign_changes(_signs_at(chain, None, -1))
        v_zero = _sign_changes(_signs_at(chain, Fraction(0), 1))
        v_pinf = _sign_changes(_signs_at(chain, None, 1))
        at_zero = int(sf.evaluate(0) == 0)
        # (-inf, 0] minus the root at the origin, if any
        n_neg = v_minf - v_zero - at_zero
        real += v_minf - v_pinf
        neg += n_neg
        zero += at_zero
        cert.append({
            "multiplicityAbove": level,
            "squarefreeDegree": sf.degree,
            "variations": {"-inf": v_minf, "0": v_zero, "+inf": v_pinf},
            "rootAtZero": bool(at_zero),
        })
    deg = p.degree
    if real != deg:
        kind = ZeroKind.NOT_ALL_REAL
    elif neg == deg:
        kind = ZeroKind.ALL_REAL_NEGATIVE
    else:
        kind = ZeroKind.ALL_REAL
    return RootVerdict(kind, deg, real, neg, zero, real - neg - zero, tuple(cert))


def bareiss_det(rows: Sequence[Sequence[Number]]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination with row pivoting."""
    m = [[as_rational(v) for v in r] for r in rows]
    n = len(m)
    if n == 0:
        return Fraction(1)
    sign, prev = 1, Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * piv - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = piv
    return sign * m[n - 1][n - 1]

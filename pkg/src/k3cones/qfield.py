"""Exact arithmetic in real quadratic fields Q(sqrt(m)).

Every slope and bound handled by the package has the form ``a + b*sqrt(m)``
with ``a, b`` rational.  Sums and products stay inside one field; comparisons
may cross fields and are decided exactly by isolating radicals and squaring.

Radicands are reduced by extracting square factors.  Reduction is complete
(``m`` certified squarefree) whenever ``m < SQUAREFREE_CERTIFIED``; above that
only square factors with a prime below ``TRIAL_LIMIT`` or a perfect-square
cofactor are extracted, because full squarefree decomposition of 60-digit
radicands is as hard as factoring.  Equality, hashing and same-field tests are
therefore value based (``m1*m2`` a perfect square), so results stay exact
either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Union

from .errors import MixedRadicand, NegativeRadicand

__all__ = [
    "QuadElem",
    "Rational",
    "qe",
    "qe_arith",
    "qe_cmp",
    "qe_sqrt",
    "sign",
    "to_decimal",
]

Rational = Fraction
Number = Union[int, Fraction, "QuadElem"]

TRIAL_LIMIT = 1 << 16
SQUAREFREE_CERTIFIED = TRIAL_LIMIT ** 3


def _primes_below(n: int) -> tuple[int, ...]:
    sieve = bytearray(b"\x01") * n
    sieve[:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n - 1) + 1):
        if sieve[p]:
            sieve[p * p::p] = b"\x00" * len(range(p * p, n, p))
    return tuple(i for i, v in enumerate(sieve) if v)


_PRIMES = _primes_below(TRIAL_LIMIT)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


@lru_cache(maxsize=65536)
def square_reduce(m: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``m == s*s*f``; ``f`` is squarefree when ``m < SQUAREFREE_CERTIFIED``."""
    if m < 0:
        raise NegativeRadicand(m)
    if m == 0:
        return 0, 0
    s, g, h = 1, 1, m
    for p in _PRIMES:
        if p * p > h:
            # h is 1 or a prime
            return s, g * h
        if h % p == 0:
            e = 0
            while h % p == 0:
                h //= p
                e += 1
            s *= p ** (e // 2)
            if e & 1:
                g *= p
    # every prime factor of h is >= TRIAL_LIMIT
    r = math.isqrt(h)
    if r * r == h:
        return s * r, g
    return s, g * h


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True, eq=False)
class QuadElem:
    """The real number ``a + b*sqrt(m)``; construction normalises the record."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    m: int = 0

    def __post_init__(self):
        a, b, m = _frac(self.a), _frac(self.b), int(self.m)
        if m < 0:
            raise NegativeRadicand(m)
        if b and m:
            s, m = square_reduce(m)
            b *= s
            if m == 1:
                a, b, m = a + b, Fraction(0), 0
        else:
            b, m = Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "m", m)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def coerce(cls, x: Number) -> "QuadElem":
        if isinstance(x, QuadElem):
            return x
        return cls(_frac(x))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.a, -self.b, self.m)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.m

    # -- arithmetic -----------------------------------------------------------

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.m)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            other = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        x, y = _align(self, other)
        return QuadElem(x.a + y.a, x.b + y.b, x.m or y.m)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        x, y = _align(self, other)
        m = x.m or y.m
        return QuadElem(x.a * y.a + x.b * y.b * m, x.a * y.b + x.b * y.a, m)

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadElem(self.a / n, -self.b / n, self.m)

    def __truediv__(self, other):
        try:
            other = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadElem.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadElem(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- ordering -------------------------------------------------------------

    def __eq__(self, other):
        try:
            other = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return qe_cmp(self, other) == 0

    def __hash__(self):
        # b*b*m and sign(b) are invariant under square extraction
        return hash((self.a, self.b * self.b * self.m, (self.b > 0) - (self.b < 0)))

    def __lt__(self, other):
        return qe_cmp(self, QuadElem.coerce(other)) < 0

    def __le__(self, other):
        return qe_cmp(self, QuadElem.coerce(other)) <= 0

    def __gt__(self, other):
        return qe_cmp(self, QuadElem.coerce(other)) > 0

    def __ge__(self, other):
        return qe_cmp(self, QuadElem.coerce(other)) >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.m)

    # -- rendering ------------------------------------------------------------

    def __repr__(self):
        return f"QuadElem({self.a}, {self.b}, {self.m})"

    def __str__(self):
        return symbolic(self)


def qe(a=0, b=0, m=0) -> QuadElem:
    return QuadElem(_frac(a), _frac(b), m)


def _align(x: QuadElem, y: QuadElem) -> tuple[QuadElem, QuadElem]:
    """Express both operands over one radicand, or raise MixedRadicand."""
    if x.m == y.m or not x.b or not y.b:
        return x, y
    prod = x.m * y.m
    s = math.isqrt(prod)
    if s * s != prod:
        raise MixedRadicand(f"sqrt({x.m}) and sqrt({y.m}) generate different fields")
    # sqrt(m_y) = (s / m_x) * sqrt(m_x)
    y2 = QuadElem.__new__(QuadElem)
    object.__setattr__(y2, "a", y.a)
    object.__setattr__(y2, "b", y.b * Fraction(s, x.m))
    object.__setattr__(y2, "m", x.m)
    return x, y2


def qe_arith(op: str, x: Number, y: Number) -> QuadElem:
    x, y = QuadElem.coerce(x), QuadElem.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def qe_sqrt(r) -> QuadElem:
    """Exact square root of a nonnegative rational."""
    r = _frac(r)
    if r < 0:
        raise NegativeRadicand(r)
    # sqrt(p/q) = sqrt(p*q)/q
    return QuadElem(0, Fraction(1, r.denominator), r.numerator * r.denominator)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _sign3(a: Fraction, b: Fraction, m: int) -> int:
    """Sign of a + b*sqrt(m)."""
    sa = _sgn(a)
    sb = _sgn(b) if m else 0
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with b^2 m
    return sa * _sgn(a * a - b * b * m)


def sign(x: Number) -> int:
    x = QuadElem.coerce(x)
    return _sign3(x.a, x.b, x.m)


def qe_cmp(x: Number, y: Number) -> int:
    """Exact comparison: -1, 0 or 1 as ``x`` is less than, equal to or greater than ``y``."""
    x, y = QuadElem.coerce(x), QuadElem.coerce(y)
    try:
        return sign(x - y)
    except MixedRadicand:
        pass
    # x - y = u - v with u = (x.a - y.a) + x.b sqrt(x.m) and v = y.b sqrt(y.m)
    u_a, u_b = x.a - y.a, x.b
    su = _sign3(u_a, u_b, x.m)
    sv = _sgn(y.b)
    if su != sv:
        return _sgn(su - sv)
    # same nonzero sign: compare squares, u^2 - v^2 keeps a single radical
    return su * _sign3(u_a * u_a + u_b * u_b * x.m - y.b * y.b * y.m, 2 * u_a * u_b, x.m)


# -- rendering ----------------------------------------------------------------


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def symbolic(x: QuadElem, radical: str = "√") -> str:
    """Render as ``p``, ``p/q``, ``c√m``, ``(c√m+p)/q`` and similar."""
    if not x.b:
        return _frac_str(x.a)
    den = math.lcm(x.a.denominator, x.b.denominator)
    p = int(x.a * den)
    c = int(x.b * den)
    root = f"{radical}{x.m}" if radical == "√" else f"{radical}({x.m})"
    if c == 1:
        rad = root
    elif c == -1:
        rad = f"-{root}"
    else:
        rad = f"{c}{root}" if radical == "√" else f"{c}*{root}"
    num = rad if p == 0 else f"{rad}{'+' if p > 0 else '-'}{abs(p)}"
    if den == 1:
        return num
    if p == 0:
        return f"{num}/{den}"
    return f"({num})/{den}"


def _round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def to_decimal(x: Number, digits: int = 12) -> str:
    """Certified decimal rendering with ``digits`` places, rounded to nearest.

    The radical is enclosed by integer square roots at increasing precision
    until both ends of the enclosure round to the same string.
    """
    x = QuadElem.coerce(x)
    s = sign(x)
    ax = x if s >= 0 else -x
    scale = 10 ** digits
    if not ax.b:
        n = _round_half_up(ax.a * scale)
    else:
        extra = 4
        while True:
            k = digits + extra
            r = math.isqrt(ax.m * 10 ** (2 * k))
            lo = ax.a * 10 ** k + ax.b * r
            hi = ax.a * 10 ** k + ax.b * (r + 1)
            if lo > hi:
                lo, hi = hi, lo
            shift = 10 ** extra
            n_lo, n_hi = _round_half_up(lo / shift), _round_half_up(hi / shift)
            if n_lo == n_hi:
                n = n_lo
                break
            extra *= 2
    int_part, frac_part = divmod(n, scale)
    out = str(int_part)
    if digits:
        out += "." + str(frac_part).rjust(digits, "0")
    if s < 0 and n:
        out = "-" + out
    return out

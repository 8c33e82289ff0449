"""Continued fractions of square roots and Pell-type equations ``x^2 - D y^2 = N``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .errors import DomainError, SquareInput

__all__ = [
    "ContinuedFraction",
    "PellSearch",
    "PellSolution",
    "convergents",
    "nagell_bound",
    "pell_n_min",
    "pell_n_search",
    "pell_unit",
    "sqrt_cf",
]

# moduli used to look for local obstructions before any search
_OBSTRUCTION_MODULI = (8, 16, 3, 9, 5, 25, 7, 11, 13)


@dataclass(frozen=True)
class ContinuedFraction:
    a0: int
    period: tuple[int, ...]

    def terms(self) -> Iterator[int]:
        yield self.a0
        while True:
            yield from self.period

    def __str__(self):
        return f"[{self.a0}; ({', '.join(map(str, self.period))})]"


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int
    D: int
    N: int
    minimal: bool = True
    method: str = ""

    def __post_init__(self):
        if self.x * self.x - self.D * self.y * self.y != self.N:
            raise ValueError(f"({self.x}, {self.y}) does not solve x^2 - {self.D}y^2 = {self.N}")

    def __iter__(self):
        return iter((self.x, self.y))


@dataclass(frozen=True)
class PellSearch:
    """Outcome of deciding ``x^2 - D y^2 = N``; ``certificate`` says why the answer is complete."""

    D: int
    N: int
    solution: Optional[PellSolution]
    certificate: str


def _check_nonsquare(D: int) -> None:
    if D < 2:
        raise DomainError(f"D must be >= 2, got {D}")
    r = math.isqrt(D)
    if r * r == D:
        raise SquareInput(f"{D} = {r}^2 is a perfect square")


@lru_cache(maxsize=None)
def sqrt_cf(D: int) -> ContinuedFraction:
    """Periodic continued fraction of sqrt(D) by the classical (m, d, a) recurrence."""
    _check_nonsquare(D)
    a0 = math.isqrt(D)
    m, d, a = 0, 1, a0
    period = []
    while a != 2 * a0:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        period.append(a)
    return ContinuedFraction(a0, tuple(period))


def convergents(cf: ContinuedFraction) -> Iterator[tuple[int, int]]:
    p0, q0, p1, q1 = 1, 0, cf.a0, 1
    yield p1, q1
    terms = cf.terms()
    next(terms)
    for a in terms:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield p1, q1


@lru_cache(maxsize=None)
def pell_unit(D: int) -> PellSolution:
    """Minimal positive solution of ``x^2 - D y^2 = 1``.

    It is the convergent closing the first period of sqrt(D), or the second
    period when the period length is odd.
    """
    cf = sqrt_cf(D)
    ell = len(cf.period)
    index = ell - 1 if ell % 2 == 0 else 2 * ell - 1
    for k, (p, q) in enumerate(convergents(cf)):
        if k == index:
            return PellSolution(p, q, D, 1, True, "continued fraction")
    raise AssertionError("unreachable")


def nagell_bound(D: int, N: int) -> int:
    """Integer upper bound on ``y`` over the fundamental solutions of ``x^2 - D y^2 = N``, ``N > 0``.

    Uses ``y <= v sqrt(N) / sqrt(2(u + 1))`` where ``(u, v)`` is the unit.
    """
    u, v = pell_unit(D)
    # ceil(sqrt(v^2 N / (2(u+1))))
    num, den = v * v * N, 2 * (u + 1)
    q = -(-num // den)
    r = math.isqrt(q)
    return r if r * r == q else r + 1


def local_obstruction(D: int, N: int) -> Optional[int]:
    """A modulus ``n`` such that ``x^2 - D y^2 = N`` has no solution mod ``n``, if one is found."""
    for n in _OBSTRUCTION_MODULI:
        squares = {x * x % n for x in range(n)}
        target = N % n
        if not any((target + D * s) % n in squares for s in squares):
            return n
    return None


def _square_divisors(N: int) -> list[int]:
    return [g for g in range(1, math.isqrt(N) + 1) if N % (g * g) == 0]


def _primitive_from_convergents(D: int, N: int) -> Optional[tuple[int, int]]:
    # Lagrange: for N^2 < D every positive primitive solution is a convergent of sqrt(D),
    # and p_k^2 - D q_k^2 is periodic in k with the period length.
    cf = sqrt_cf(D)
    limit = 2 * len(cf.period)
    for k, (p, q) in enumerate(convergents(cf)):
        if k >= limit:
            return None
        if p * p - D * q * q == N:
            return p, q
    return None


def _search_square_D(D: int, N: int) -> PellSearch:
    s = math.isqrt(D)
    best = None
    # (x - s y)(x + s y) = N with both factors positive since x + s y > 0 and N > 0
    for f in range(1, math.isqrt(N) + 1):
        if N % f:
            continue
        g = N // f
        if (f + g) % 2 or (g - f) % (2 * s):
            continue
        x, y = (f + g) // 2, (g - f) // (2 * s)
        if y > 0 and (best is None or (x, y) < best):
            best = (x, y)
    cert = f"D = {s}^2: exhausted factor pairs of {N}"
    sol = PellSolution(best[0], best[1], D, N, True, "factor pairs") if best else None
    return PellSearch(D, N, sol, cert)


@lru_cache(maxsize=None)
def pell_n_search(D: int, N: int) -> PellSearch:
    """Decide ``x^2 - D y^2 = N`` for ``D >= 1``, ``N >= 1`` and return the minimal positive solution.

    Minimal means smallest ``x`` with ``x, y > 0``; since ``x^2 = N + D y^2`` this is
    also the smallest ``y``.
    """
    if D < 1 or N < 1:
        raise DomainError(f"need D >= 1 and N >= 1, got D={D}, N={N}")
    n = local_obstruction(D, N)
    if n is not None:
        return PellSearch(D, N, None, f"no solution modulo {n}")
    r = math.isqrt(D)
    if r * r == D:
        return _search_square_D(D, N)

    if N * N < D:
        best = None
        for g in _square_divisors(N):
            found = _primitive_from_convergents(D, N // (g * g))
            if found is not None:
                cand = (g * found[0], g * found[1])
                if best is None or cand < best:
                    best = cand
        cert = f"N^2 < D: scanned two periods of convergents of sqrt({D})"
        sol = PellSolution(best[0], best[1], D, N, True, "convergents") if best else None
        return PellSearch(D, N, sol, cert)

    bound = nagell_bound(D, N)
    for y in range(1, bound + 2):
        x2 = N + D * y * y
        x = math.isqrt(x2)
        if x * x == x2:
            return PellSearch(D, N, PellSolution(x, y, D, N, True, "bounded search"),
                              f"enumerated y <= {bound + 1}")
    rN = math.isqrt(N)
    if rN * rN == N:
        # only the class of (sqrt N, 0) remains; its least positive member is sqrt(N) * unit
        u, v = pell_unit(D)
        return PellSearch(D, N, PellSolution(rN * u, rN * v, D, N, True, "scaled unit"),
                          f"enumerated y <= {bound + 1}; trivial class scaled by the unit")
    return PellSearch(D, N, None, f"fundamental solutions have y <= {bound}; none found")


def pell_n_min(D: int, N: int) -> Optional[PellSolution]:
    return pell_n_search(D, N).solution

"""Degree-uniform bounds on the pseudoeffective and nef slopes of E.

Every function returns an exact ``QuadElem``; ``t`` is half the degree.
"""

from __future__ import annotations

from fractions import Fraction

from .chow import DivisorE, triple_e
from .qfield import QuadElem, qe_sqrt


def positive_cone_slope(t: int) -> QuadElem:
    """``2/sqrt(t)``: ``(L + beta H)^3 >= 0`` exactly when ``beta`` is at least this."""
    return 2 / qe_sqrt(t)


def generic_nef_upper(t: int) -> QuadElem:
    """``4/sqrt(4t - 5)``, the slope of the restriction of ``Ht - sqrt(t - 5/4) B`` (nef for t > 1)."""
    if t < 2:
        raise ValueError("defined for t >= 2")
    return 4 / qe_sqrt(4 * t - 5)


def generic_eff_upper(t: int) -> QuadElem:
    return positive_cone_slope(t)


def generic_eff_lower(t: int) -> QuadElem:
    """``(8t - 15) / (2t sqrt(4t - 5))`` from pairing with the square of the generic nef class."""
    if t < 2:
        raise ValueError("defined for t >= 2")
    return (8 * t - 15) / (2 * t * qe_sqrt(4 * t - 5))


def eff_lower_from_nef(t: int, nef: QuadElem) -> QuadElem:
    """Least ``alpha`` with ``(L + alpha H).N^2 >= 0`` for the nef class ``N = L + nef*H``.

    The pairing is ``-24 + d(nef^2 + 2 alpha nef)``, linear in ``alpha``.
    """
    d = 2 * t
    return (24 - d * nef * nef) / (2 * d * nef)


def nef_lower_from_eff(t: int, alpha: Fraction) -> QuadElem:
    """Positive root of ``-24 + d beta^2 + 2 alpha d beta``.

    ``(L + beta H)^2 . (L + alpha H)`` must be nonnegative for nef ``L + beta H``
    and pseudoeffective ``L + alpha H``; the root is ``-alpha + sqrt(alpha^2 + 12/t)``.
    """
    alpha = Fraction(alpha)
    return -alpha + qe_sqrt(alpha * alpha + Fraction(12, t))


def pairing_square(t: int, beta, alpha) -> QuadElem:
    """``(L + beta H)^2 . (L + alpha H)``; used to certify the root bounds."""
    n = DivisorE(1, beta)
    return triple_e(t, n, n, DivisorE(1, alpha))

"""Intersection numbers on E = P(Omega_S) and the lattice of S^[2].

On E the Picard group has basis ``L`` (relative O(1)) and ``H`` (pullback of the
polarisation of degree ``d = 2t``), with

    L^3 = -24,  L^2 H = 0,  L H^2 = d,  H^3 = 0.

On S^[2] the basis is ``Ht`` (subschemes meeting a hyperplane section) and ``B``
(half the Hilbert-Chow exceptional divisor), with Gram matrix diag(2t, -2) for
the Beauville-Bogomolov-Fujiki form.  Restriction to E sends ``Ht -> 2H`` and
``B -> -L``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qfield import QuadElem

__all__ = [
    "B",
    "CANONICAL_E",
    "CurveClassE",
    "DivisorE",
    "DivisorS2",
    "FIBRE_L2_COEFF",
    "H",
    "HT",
    "L",
    "PHI_SIGMA2",
    "SurfaceDiag",
    "bbf",
    "curve_image_multiple",
    "dot_curve_e",
    "gr24_pairing",
    "restrict_to_e",
    "surface_diag",
    "triple_e",
]

# L^2 = FIBRE_L2_COEFF * (fibre class): minus the second Chern class of a K3
FIBRE_L2_COEFF = -24


@dataclass(frozen=True)
class DivisorE:
    """The class ``l*L + h*H`` on E."""

    l: QuadElem
    h: QuadElem

    def __init__(self, l=0, h=0):
        object.__setattr__(self, "l", QuadElem.coerce(l))
        object.__setattr__(self, "h", QuadElem.coerce(h))

    def __add__(self, other: "DivisorE") -> "DivisorE":
        return DivisorE(self.l + other.l, self.h + other.h)

    def __sub__(self, other: "DivisorE") -> "DivisorE":
        return DivisorE(self.l - other.l, self.h - other.h)

    def __neg__(self):
        return DivisorE(-self.l, -self.h)

    def __rmul__(self, c) -> "DivisorE":
        return DivisorE(c * self.l, c * self.h)

    def slope(self) -> QuadElem:
        """``h/l``: the alpha with this class proportional to L + alpha H."""
        return self.h / self.l

    def __str__(self):
        return _linear_str(((self.l, "L"), (self.h, "H")))


L = DivisorE(1, 0)
H = DivisorE(0, 1)
CANONICAL_E = DivisorE(-2, 0)


@dataclass(frozen=True)
class DivisorS2:
    """The class ``ht*Ht + b*B`` on S^[2]."""

    ht: Fraction
    b: Fraction

    def __init__(self, ht=0, b=0):
        object.__setattr__(self, "ht", Fraction(ht))
        object.__setattr__(self, "b", Fraction(b))

    def normalised(self) -> "DivisorS2":
        """Scale to ``ht == 1`` (or ``b == 1`` when ``ht == 0``)."""
        if self.ht:
            return DivisorS2(1, self.b / self.ht)
        return DivisorS2(0, 1 if self.b > 0 else -1)

    def __str__(self):
        return _linear_str(((QuadElem(self.ht), "Ht"), (QuadElem(self.b), "B")))


HT = DivisorS2(1, 0)
B = DivisorS2(0, 1)


@dataclass(frozen=True)
class CurveClassE:
    """The curve class ``c_l2 L^2 + c_lh L.H + c_h2 H^2`` on E."""

    c_l2: Fraction
    c_lh: Fraction
    c_h2: Fraction

    def __init__(self, c_l2=0, c_lh=0, c_h2=0):
        object.__setattr__(self, "c_l2", Fraction(c_l2))
        object.__setattr__(self, "c_lh", Fraction(c_lh))
        object.__setattr__(self, "c_h2", Fraction(c_h2))

    @classmethod
    def square_of(cls, l, h) -> "CurveClassE":
        """``(l L + h H)^2`` for rational ``l, h``."""
        return cls(l * l, 2 * l * h, h * h)

    def as_tuple(self):
        return self.c_l2, self.c_lh, self.c_h2


# pullback of the Schubert cycle of lines meeting a codimension-two linear space
PHI_SIGMA2 = CurveClassE(1, 3, 3)


def _linear_str(terms) -> str:
    out = ""
    for coeff, name in terms:
        if not coeff:
            continue
        neg = coeff.is_rational and coeff.a < 0
        s = str(-coeff if neg else coeff)
        if s == "1":
            s = ""
        elif not coeff.is_rational or "/" in s:
            s = f"({s})"
        sep = "-" if neg else ("+" if out else "")
        out += f"{sep}{s}{name}"
    return out or "0"


def triple_e(t: int, d1: DivisorE, d2: DivisorE, d3: DivisorE) -> QuadElem:
    """Triple intersection ``d1.d2.d3`` on E for a K3 of degree ``2t``."""
    d = 2 * t
    a1, a2, a3 = d1.l, d2.l, d3.l
    b1, b2, b3 = d1.h, d2.h, d3.h
    return FIBRE_L2_COEFF * a1 * a2 * a3 + d * (a1 * b2 * b3 + b1 * a2 * b3 + b1 * b2 * a3)


def dot_curve_e(t: int, div: DivisorE, curve: CurveClassE) -> QuadElem:
    d = 2 * t
    return FIBRE_L2_COEFF * div.l * curve.c_l2 + d * (div.l * curve.c_h2 + div.h * curve.c_lh)


def curve_image_multiple(t: int, curve: CurveClassE) -> Fraction:
    """``m`` such that the pushforward of the curve to S lies in |O_S(m)|, i.e. ``C.H / d``."""
    return dot_curve_e(t, H, curve).rational() / (2 * t)


def bbf(t: int, x: DivisorS2, y: DivisorS2) -> Fraction:
    return 2 * t * x.ht * y.ht - 2 * x.b * y.b


def restrict_to_e(div: DivisorS2) -> DivisorE:
    return DivisorE(-div.b, 2 * div.ht)


@dataclass(frozen=True)
class SurfaceDiag:
    """Numerics of a smooth surface S' in |L + kH| and its canonical class ``K = -L + kH``."""

    t: int
    k: int
    ld2: int
    d2h: int
    k2: int
    kd: int
    n_points: int
    image_multiple: int


def surface_diag(t: int, k: int) -> SurfaceDiag:
    D = DivisorE(1, k)
    K = CANONICAL_E + D  # adjunction
    ld2 = triple_e(t, L, D, D).rational()
    d2h = triple_e(t, D, D, H).rational()
    k2 = triple_e(t, K, K, D).rational()
    kd = triple_e(t, K, D, D).rational()
    return SurfaceDiag(t, k, int(ld2), int(d2h), int(k2), int(kd), int(-k2), int(d2h / (2 * t)))


# Schubert calculus on G(2,4): top intersections sigma_1^4 and sigma_1^2 sigma_2
GR24_SIGMA1_4 = 2
GR24_SIGMA1_SQ_SIGMA2 = 1


def gr24_pairing() -> int:
    """``(sigma_1^2 - 2 sigma_2) . sigma_1^2`` on G(2,4)."""
    return GR24_SIGMA1_4 - 2 * GR24_SIGMA1_SQ_SIGMA2

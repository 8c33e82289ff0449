"""Cones of divisors on S^[2] and on E = P(Omega_S) for a K3 of Picard rank one.

Degrees are passed as ``t = d/2``.  The S^[2] cones follow the Bayer-Macri
description driven by ``x^2 - t y^2 = 1`` and ``x^2 - 4t y^2 = 5``; the slopes of E
are then either exact (a restricted boundary ray is extremal on E) or a
certified two-sided bound, each side tagged with the argument behind it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from . import bounds
from .chow import HT, B, DivisorS2, bbf, restrict_to_e
from .errors import DomainError
from .pell import PellSolution, pell_n_search, pell_unit
from .qfield import QuadElem, qe_cmp
from .stability import (
    BottReport,
    DestabFamily,
    RamificationVerdict,
    bott_check,
    destab_catalog,
    hein_min_multiple,
    ramification_verdict,
)

__all__ = [
    "Bounds",
    "ConeS2",
    "DegreeReport",
    "Exact",
    "ModelType",
    "PellCase",
    "PellCaseKind",
    "Provenance",
    "SlopeResult",
    "cones_s2",
    "degree_lists",
    "eff_slope",
    "full_report",
    "is_ambiguous",
    "model_type",
    "nef_slope",
    "pell_case",
]


class Provenance(enum.Enum):
    """The mathematical statement behind a number."""

    BM_SQUARE = "bm-square-t-no-pell5"
    BM_NONSQUARE = "bm-nonsquare-t-no-pell5"
    BM_PELL5 = "bm-pell5-solvable"
    LAGRANGIAN_RESTRICTION = "lagrangian-ray-restriction"
    PELL5_NEF_RESTRICTION = "pell5-nef-ray-restriction"
    AMBIGUOUS_EFF_RESTRICTION = "ambiguous-eff-ray-restriction"
    DEGREE6_CONTRACTED_DIVISOR = "degree6-contracted-divisor"
    GENERIC_EFF_LOWER = "generic-eff-lower"
    PSEF_SQRT_T_RESTRICTION = "psef-sqrt-t-restriction"
    EFF_PAIRING_WITH_NEF = "eff-pairing-with-exact-nef"
    GENERIC_NEF_UPPER = "generic-nef-upper"
    EMBEDDING_CAP = "embedded-surface-cap"
    AMPLE_NEF_RAY_RESTRICTION = "ample-nef-ray-restriction"
    POSITIVE_CONE = "positive-cone"
    NEF_PAIRING_ROOT = "nef-pairing-with-exact-eff"


PROVENANCE_TEXT = {
    Provenance.BM_SQUARE: "Bayer-Macri cones of S^[2]: t a square, x^2-4ty^2=5 unsolvable",
    Provenance.BM_NONSQUARE: "Bayer-Macri cones of S^[2]: t not a square, x^2-4ty^2=5 unsolvable",
    Provenance.BM_PELL5: "Bayer-Macri cones of S^[2]: x^2-4ty^2=5 solvable",
    Provenance.LAGRANGIAN_RESTRICTION:
        "Lagrangian fibration: the common boundary Ht-sqrt(t)B restricts to an extremal ray of both cones of E",
    Provenance.PELL5_NEF_RESTRICTION:
        "Nef(S^[2]) -> Nef(E) is an isomorphism when x^2-4ty^2=5 is solvable; slope c/(t d)",
    Provenance.AMBIGUOUS_EFF_RESTRICTION:
        "ambiguous S^[2]: the contracted divisor is P(Omega_T), its restriction is extremal; slope 2b/a",
    Provenance.DEGREE6_CONTRACTED_DIVISOR:
        "degree 6: the divisor Ht-2B contracted by the nodal cubic fourfold model restricts to an extremal ray",
    Provenance.GENERIC_EFF_LOWER:
        "effective D satisfies D.(sqrt(t-5/4)L+2H)^2 >= 0",
    Provenance.PSEF_SQRT_T_RESTRICTION:
        "Ht-sqrt(t)B is pseudoeffective on S^[2]; its restriction L+(2/sqrt t)H is pseudoeffective",
    Provenance.EFF_PAIRING_WITH_NEF:
        "effective D satisfies D.N^2 >= 0 for the exact nef boundary N",
    Provenance.GENERIC_NEF_UPPER:
        "(Ht-sqrt(t-5/4)B)|_E = sqrt(t-5/4)L+2H is nef",
    Provenance.EMBEDDING_CAP: "L+2H is nef for a smooth surface in projective space",
    Provenance.AMPLE_NEF_RAY_RESTRICTION:
        "the restriction of the second nef ray of S^[2] is ample on E (degrees 4 and 6)",
    Provenance.POSITIVE_CONE: "nef classes satisfy D^3 >= 0",
    Provenance.NEF_PAIRING_ROOT:
        "nef N satisfies N^2.P >= 0 for the exact pseudoeffective boundary P",
}


# -- Pell case ------------------------------------------------------------------


class PellCaseKind(enum.Enum):
    SQUARE_NO_PELL5 = "square-no-pell5"
    NONSQUARE_NO_PELL5 = "nonsquare-no-pell5"
    PELL5_SOLVABLE = "pell5-solvable"


@dataclass(frozen=True)
class PellCase:
    """Case split for degree ``2t``.

    ``unit`` is the minimal solution of ``x^2 - t y^2 = 1`` (present iff ``t`` is
    not a square); ``pell5`` the minimal solution of ``x^2 - 4t y^2 = 5``.
    """

    t: int
    kind: PellCaseKind
    unit: Optional[PellSolution]
    pell5: Optional[PellSolution]
    pell5_certificate: str

    @property
    def t_square(self) -> bool:
        return self.unit is None


def _check_t(t: int) -> None:
    if not isinstance(t, int) or t < 1:
        raise DomainError(f"t must be a positive integer, got {t!r}")


def _isqrt_exact(t: int) -> Optional[int]:
    r = math.isqrt(t)
    return r if r * r == t else None


@lru_cache(maxsize=None)
def pell_case(t: int) -> PellCase:
    _check_t(t)
    search = pell_n_search(4 * t, 5)
    unit = None if _isqrt_exact(t) is not None else pell_unit(t)
    if search.solution is not None:
        kind = PellCaseKind.PELL5_SOLVABLE
    elif unit is None:
        kind = PellCaseKind.SQUARE_NO_PELL5
    else:
        kind = PellCaseKind.NONSQUARE_NO_PELL5
    return PellCase(t, kind, unit, search.solution, search.certificate)


# -- S^[2] ------------------------------------------------------------------------


@dataclass(frozen=True)
class ConeS2:
    """Boundary rays of Nef, closure of Mov and closure of Eff of S^[2]."""

    nef: tuple[DivisorS2, DivisorS2]
    mov: tuple[DivisorS2, DivisorS2]
    eff: tuple[DivisorS2, DivisorS2]
    provenance: Provenance


@lru_cache(maxsize=None)
def cones_s2(t: int) -> ConeS2:
    pc = pell_case(t)
    r = _isqrt_exact(t)
    if r is not None:
        mov_b = eff_b = Fraction(r)
    else:
        a, b = pc.unit
        mov_b, eff_b = Fraction(t * b, a), Fraction(a, b)
    if pc.pell5 is not None:
        c, dd = pc.pell5
        nef_b = Fraction(2 * t * dd, c)
        prov = Provenance.BM_PELL5
    else:
        nef_b = mov_b
        prov = Provenance.BM_SQUARE if r is not None else Provenance.BM_NONSQUARE
    return ConeS2(
        nef=(HT, DivisorS2(1, -nef_b)),
        mov=(HT, DivisorS2(1, -mov_b)),
        eff=(B, DivisorS2(1, -eff_b)),
        provenance=prov,
    )


class ModelType(enum.Enum):
    LAGRANGIAN_FIBRATION = "lagrangian-fibration"
    DIVISORIAL_CONTRACTION = "divisorial-contraction"
    FLOPS_THEN_LAGRANGIAN = "flops-then-lagrangian"
    FLOPS_THEN_DIVISORIAL = "flops-then-divisorial"


def model_type(t: int) -> ModelType:
    """The birational model of S^[2] at the second boundary of the movable cone."""
    pc = pell_case(t)
    flops = pc.pell5 is not None
    if pc.t_square:
        return ModelType.FLOPS_THEN_LAGRANGIAN if flops else ModelType.LAGRANGIAN_FIBRATION
    return ModelType.FLOPS_THEN_DIVISORIAL if flops else ModelType.DIVISORIAL_CONTRACTION


def is_ambiguous(t: int) -> bool:
    pc = pell_case(t)
    return pc.kind is PellCaseKind.NONSQUARE_NO_PELL5 and pc.unit.y % 2 == 0


# -- slopes on E ------------------------------------------------------------------


@dataclass(frozen=True)
class Exact:
    value: QuadElem
    provenance: Provenance

    @property
    def lower(self) -> QuadElem:
        return self.value

    @property
    def upper(self) -> QuadElem:
        return self.value

    def contains(self, x) -> bool:
        return qe_cmp(x, self.value) == 0


@dataclass(frozen=True)
class Bounds:
    """``lower (<|<=) alpha (<|<=) upper``."""

    lower: QuadElem
    lower_strict: bool
    upper: QuadElem
    upper_strict: bool
    lower_provenance: Provenance
    upper_provenance: Provenance

    def __post_init__(self):
        if qe_cmp(self.lower, self.upper) >= 0:
            raise ValueError(f"empty interval: {self.lower} .. {self.upper}")

    def contains(self, x) -> bool:
        lo, hi = qe_cmp(x, self.lower), qe_cmp(x, self.upper)
        return (lo > 0 or (lo == 0 and not self.lower_strict)) and (
            hi < 0 or (hi == 0 and not self.upper_strict))

    def within(self, lo, hi, open_interval: bool = True) -> bool:
        """Whether this interval lies inside ``(lo, hi)`` (or ``[lo, hi]``)."""
        c_lo, c_hi = qe_cmp(self.lower, lo), qe_cmp(self.upper, hi)
        if open_interval:
            return (c_lo > 0 or (c_lo == 0 and self.lower_strict)) and (
                c_hi < 0 or (c_hi == 0 and self.upper_strict))
        return c_lo >= 0 and c_hi <= 0


SlopeResult = Union[Exact, Bounds]

# degrees whose second nef ray of S^[2] is known to restrict to an ample class on E
_AMPLE_NEF_RAY = frozenset({2, 3})


def _pick(cands, prefer_max: bool):
    """Tightest of ``(value, strict, provenance)``; on ties the strict one wins."""
    best = cands[0]
    for c in cands[1:]:
        o = qe_cmp(c[0], best[0])
        tighter = o > 0 if prefer_max else o < 0
        if tighter or (o == 0 and c[1] and not best[1]):
            best = c
    return best


@lru_cache(maxsize=None)
def nef_slope(t: int) -> SlopeResult:
    pc = pell_case(t)
    cone = cones_s2(t)
    ray_slope = restrict_to_e(cone.nef[1]).slope()
    if pc.pell5 is not None:
        return Exact(ray_slope, Provenance.PELL5_NEF_RESTRICTION)
    if pc.t_square:
        return Exact(ray_slope, Provenance.LAGRANGIAN_RESTRICTION)

    uppers = [(bounds.generic_nef_upper(t), False, Provenance.GENERIC_NEF_UPPER),
              (QuadElem(2), False, Provenance.EMBEDDING_CAP)]
    if t in _AMPLE_NEF_RAY:
        uppers.append((ray_slope, True, Provenance.AMPLE_NEF_RAY_RESTRICTION))
    lowers = [(bounds.positive_cone_slope(t), False, Provenance.POSITIVE_CONE)]
    eff = eff_slope(t)
    if isinstance(eff, Exact):
        lowers.append((bounds.nef_lower_from_eff(t, eff.value.rational()), True,
                       Provenance.NEF_PAIRING_ROOT))
    lo, hi = _pick(lowers, True), _pick(uppers, False)
    return Bounds(lo[0], lo[1], hi[0], hi[1], lo[2], hi[2])


@lru_cache(maxsize=None)
def eff_slope(t: int) -> SlopeResult:
    pc = pell_case(t)
    cone = cones_s2(t)
    if pc.kind is PellCaseKind.SQUARE_NO_PELL5:
        return Exact(restrict_to_e(cone.eff[1]).slope(), Provenance.LAGRANGIAN_RESTRICTION)
    if is_ambiguous(t):
        return Exact(restrict_to_e(cone.eff[1]).slope(), Provenance.AMBIGUOUS_EFF_RESTRICTION)
    if t == 3:
        return Exact(QuadElem(1), Provenance.DEGREE6_CONTRACTED_DIVISOR)
    upper = bounds.generic_eff_upper(t)
    if t == 1:
        nef = nef_slope(1).value
        return Bounds(bounds.eff_lower_from_nef(1, nef), False, upper, False,
                      Provenance.EFF_PAIRING_WITH_NEF, Provenance.PSEF_SQRT_T_RESTRICTION)
    return Bounds(bounds.generic_eff_lower(t), True, upper, False,
                  Provenance.GENERIC_EFF_LOWER, Provenance.PSEF_SQRT_T_RESTRICTION)


# -- degree lists -----------------------------------------------------------------

LIST_KINDS = ("eff_theorem_b", "eff_all_known", "nef_known")

# degrees (as t) with an exact pseudoeffective slope from low-degree geometry
_EFF_OVERRIDES = frozenset({3})


def _eff_theorem_b(t: int) -> bool:
    return pell_case(t).kind is PellCaseKind.SQUARE_NO_PELL5 or is_ambiguous(t)


def degree_lists(max_d: int, kind: str) -> list[int]:
    """Even degrees ``d <= max_d`` where the chosen slope is known exactly."""
    if max_d < 2:
        raise DomainError("max_d must be >= 2")
    if kind == "eff_theorem_b":
        pred = _eff_theorem_b
    elif kind == "eff_all_known":
        def pred(t):
            return _eff_theorem_b(t) or t in _EFF_OVERRIDES
    elif kind == "nef_known":
        def pred(t):
            return pell_case(t).t_square or pell_case(t).pell5 is not None
    else:
        raise DomainError(f"unknown list kind {kind!r}; expected one of {LIST_KINDS}")
    return [2 * t for t in range(1, max_d // 2 + 1) if pred(t)]


# -- full report ------------------------------------------------------------------

FOOTNOTE_INTERVAL_ORDER = (
    "The nef interval at d=6 is sometimes printed with its endpoints swapped; "
    "6/5 < 4/3, so the consistent reading 6/5 < alpha_n < 4/3 is used."
)
FOOTNOTE_EFF_FLOP = (
    "Open: the second extremal divisor of the pseudoeffective cone of E when S^[2] admits a flop."
)
FOOTNOTE_NEF_DIVISORIAL = (
    "Open: the second extremal divisor of the nef cone of E when S^[2] has a second divisorial contraction."
)
FOOTNOTE_RATIONALITY = "Open: whether the cones of E are rational polyhedral in this degree."


@dataclass(frozen=True)
class StabilitySummary:
    hein_min_multiple: int
    ramification: Optional[RamificationVerdict]
    families: tuple[DestabFamily, ...]


@dataclass(frozen=True)
class DegreeReport:
    t: int
    d: int
    pell_case: PellCase
    cones_s2: ConeS2
    model_type: ModelType
    ambiguous: bool
    eff_slope: SlopeResult
    nef_slope: SlopeResult
    stability: StabilitySummary
    bott: BottReport
    footnotes: tuple[str, ...] = field(default=())

    def consistency_failures(self) -> list[str]:
        """Cross-checks between the pieces of the report; empty when consistent."""
        out = []
        t, cone = self.t, self.cones_s2
        if isinstance(self.nef_slope, Exact):
            if restrict_to_e(cone.nef[1]).slope() != self.nef_slope.value:
                out.append("nef slope differs from the restricted nef ray")
        if isinstance(self.eff_slope, Exact) and self.eff_slope.provenance in (
                Provenance.LAGRANGIAN_RESTRICTION, Provenance.AMBIGUOUS_EFF_RESTRICTION):
            if restrict_to_e(cone.eff[1]).slope() != self.eff_slope.value:
                out.append("eff slope differs from the restricted eff ray")
        if qe_cmp(self.eff_slope.upper, self.nef_slope.upper) > 0:
            out.append("eff upper exceeds nef upper")
        if qe_cmp(self.eff_slope.lower, self.nef_slope.lower) > 0:
            out.append("eff lower exceeds nef lower")
        if t >= 2:
            if bbf(t, cone.mov[1], cone.eff[1]) != 0:
                out.append("movable and effective boundaries are not BBF-orthogonal")
            for res, lo, hi in ((self.eff_slope, bounds.generic_eff_lower(t), bounds.generic_eff_upper(t)),
                                (self.nef_slope, bounds.positive_cone_slope(t), bounds.generic_nef_upper(t))):
                if isinstance(res, Exact) and not (lo <= res.value <= hi):
                    out.append(f"exact slope {res.value} outside generic bounds")
        return out


def full_report(t: int) -> DegreeReport:
    pc = pell_case(t)
    eff, nef = eff_slope(t), nef_slope(t)
    notes = []
    if t == 3:
        notes.append(FOOTNOTE_INTERVAL_ORDER)
    if isinstance(eff, Bounds):
        if pc.pell5 is not None:
            notes.append(FOOTNOTE_EFF_FLOP)
        notes.append(FOOTNOTE_RATIONALITY)
    if isinstance(nef, Bounds):
        notes.append(FOOTNOTE_NEF_DIVISORIAL)
        if FOOTNOTE_RATIONALITY not in notes:
            notes.append(FOOTNOTE_RATIONALITY)
    stab = StabilitySummary(
        hein_min_multiple=hein_min_multiple(t),
        ramification=ramification_verdict(t) if t >= 2 else None,
        families=destab_catalog(t),
    )
    return DegreeReport(
        t=t,
        d=2 * t,
        pell_case=pc,
        cones_s2=cones_s2(t),
        model_type=model_type(t),
        ambiguous=is_ambiguous(t),
        eff_slope=eff,
        nef_slope=nef,
        stability=stab,
        bott=bott_check(2 * t),
        footnotes=tuple(notes),
    )

"""Stability of Omega_S restricted to curves, known destabilising families, Bott vanishing."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bounds import generic_nef_upper
from .chow import PHI_SIGMA2, CurveClassE, L, dot_curve_e
from .errors import DegreeTooSmall, DomainError, OddDegree
from .qfield import qe_cmp

__all__ = [
    "BOGOMOLOV_MULTIPLE",
    "BottReport",
    "BottVerdict",
    "DestabFamily",
    "QuarticRamification",
    "RamificationVerdict",
    "StabilityVerdict",
    "bott_check",
    "destab_catalog",
    "hein_min_multiple",
    "hein_verdict",
    "quartic_ram_degrees",
    "ramification_verdict",
]

# smooth curves in |O_S(n)| restrict stably for n above this
BOGOMOLOV_MULTIPLE = 49
HEIN_THRESHOLD = 48


class StabilityVerdict(enum.Enum):
    STABLE_ALL = "stable-all"
    SEMISTABLE_GENERIC = "semistable-generic"
    UNKNOWN = "unknown"


class RamificationVerdict(enum.Enum):
    NOT_SEMISTABLE = "not-semistable"
    STRICTLY_SEMISTABLE = "strictly-semistable"
    NO_CONCLUSION = "no-conclusion"


class BottVerdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


def hein_verdict(t: int, m: int) -> StabilityVerdict:
    """Verdict for smooth curves in |O_S(m)| on a K3 of degree 2t.

    STABLE_ALL means every smooth member restricts stably; SEMISTABLE_GENERIC
    only covers a general member.
    """
    if t < 1 or m < 1:
        raise DomainError("t and m must be positive")
    if t * (2 * m - 1) > HEIN_THRESHOLD or m > BOGOMOLOV_MULTIPLE:
        return StabilityVerdict.STABLE_ALL
    if (t, m) != (1, 1):
        return StabilityVerdict.SEMISTABLE_GENERIC
    return StabilityVerdict.UNKNOWN


def hein_min_multiple(t: int) -> int:
    """Smallest ``m`` for which every smooth curve in |O_S(m)| restricts stably."""
    m = 1
    while hein_verdict(t, m) is not StabilityVerdict.STABLE_ALL:
        m += 1
    return m


def ramification_verdict(t: int) -> RamificationVerdict:
    """Sign of ``L`` on the curve of tangent lines meeting a general centre of projection."""
    if t < 2:
        raise DegreeTooSmall("the projection to P^2 needs degree 2t > 2")
    s = dot_curve_e(t, L, PHI_SIGMA2).rational()
    if s < 0:
        return RamificationVerdict.NOT_SEMISTABLE
    if s == 0:
        return RamificationVerdict.STRICTLY_SEMISTABLE
    return RamificationVerdict.NO_CONCLUSION


@dataclass(frozen=True)
class DestabFamily:
    multiple: int
    family_dim: Optional[int]
    mechanism: str
    curve_class: Optional[CurveClassE]
    semistable_strict: bool
    family_dim_at_least: bool = False

    def l_degree(self, t: int) -> Optional[Fraction]:
        if self.curve_class is None:
            return None
        return dot_curve_e(t, L, self.curve_class).rational()


_CATALOG = {
    1: (
        DestabFamily(6, 12, "complete intersections of two surfaces in |L+3H|, projected to S",
                     CurveClassE.square_of(1, 3), False, family_dim_at_least=True),
    ),
    2: (
        DestabFamily(4, 8, "complete intersections of two surfaces in |L+2H|, projected to S",
                     CurveClassE.square_of(1, 2), False),
        DestabFamily(3, 3, "ramification curves of projections from a general point of P^3",
                     PHI_SIGMA2, False),
    ),
    3: (
        DestabFamily(3, 6, "tangent lines meeting a general plane of P^4 (ramification curves)",
                     PHI_SIGMA2, False),
    ),
    4: (
        DestabFamily(3, None, "ramification curves of a general projection to P^2",
                     PHI_SIGMA2, True),
    ),
}


def destab_catalog(t: int) -> tuple[DestabFamily, ...]:
    """Known families of smooth curves on which Omega_S is not stable.

    An empty result records only that no construction is known.
    """
    if t < 1:
        raise DomainError("t must be positive")
    return _CATALOG.get(t, ())


@dataclass(frozen=True)
class QuarticRamification:
    branch_degree: int
    nodes: int
    cusps: int
    genus: int
    conormal_degree: int
    rel_cotangent_quotient_degree: int
    omega_f_degree: int


def quartic_ram_degrees() -> QuarticRamification:
    """Degrees for the ramification curve R of a general point projection of a quartic surface.

    R lies in |O_S(3)| and maps birationally onto a plane branch curve with
    nodes and cusps; only cusps contribute to the relative cotangent sheaf.
    """
    quartic_degree = 4
    r_multiple = 3
    r_degree = r_multiple * quartic_degree
    genus = 1 + r_multiple * r_multiple * quartic_degree // 2
    nodes, cusps = 12, 24
    conormal = -r_multiple * r_degree
    return QuarticRamification(
        branch_degree=r_degree,
        nodes=nodes,
        cusps=cusps,
        genus=genus,
        conormal_degree=conormal,
        rel_cotangent_quotient_degree=cusps,
        omega_f_degree=conormal + cusps,
    )


@dataclass(frozen=True)
class BottReport:
    d: int
    chi: int
    verdict: BottVerdict


def euler_char_twisted_cotangent(d: int) -> int:
    """chi(Omega_S(1)) on a K3 with O_S(1)^2 = d."""
    return d - 20


def bott_check(d: int) -> BottReport:
    """Bott vanishing for (S, O_S(1)) with ``O_S(1)^2 = d``.

    Holds when ``3L + H`` is ample on E, which follows once the generic nef
    bound drops below 1/3; fails when chi(Omega_S(1)) < 0 forces H^1 != 0.
    """
    if d % 2:
        raise OddDegree(f"K3 degrees are even, got {d}")
    if d < 2:
        raise DomainError(f"degree must be positive, got {d}")
    chi = euler_char_twisted_cotangent(d)
    t = d // 2
    if t >= 2 and qe_cmp(generic_nef_upper(t), Fraction(1, 3)) < 0:
        verdict = BottVerdict.HOLDS
    elif chi < 0:
        verdict = BottVerdict.FAILS
    else:
        verdict = BottVerdict.UNKNOWN
    return BottReport(d, chi, verdict)

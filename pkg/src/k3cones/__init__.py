"""Exact positivity invariants of the projectivised cotangent bundle of a Picard-rank-one K3 surface."""

from __future__ import annotations

from .chow import B, H, HT, L, CurveClassE, DivisorE, DivisorS2, bbf, dot_curve_e, restrict_to_e, surface_diag, triple_e
from .cones import Bounds, Exact, degree_lists, eff_slope, full_report, nef_slope
from .errors import DomainError
from .pell import pell_n_min, pell_n_search, pell_unit, sqrt_cf
from .qfield import QuadElem, qe, qe_cmp, qe_sqrt, to_decimal
from .stability import bott_check, hein_verdict

__version__ = "0.1.0"

"""JSON-ready documents and markdown rendering for reports."""

from __future__ import annotations

import json
from importlib import resources
from typing import Any, Optional

from .chow import CurveClassE, DivisorE, DivisorS2
from .cones import (
    PROVENANCE_TEXT,
    ConeS2,
    DegreeReport,
    Exact,
    PellCase,
    SlopeResult,
    eff_slope,
    full_report,
    nef_slope,
)
from .pell import ContinuedFraction, PellSearch, PellSolution
from .qfield import QuadElem, symbolic, to_decimal
from .stability import BottReport, DestabFamily

DECIMAL_DIGITS = 12
TABLE1_DEGREES = (2, 4, 6, 8)


def load_schema() -> dict:
    return json.loads(resources.files("k3cones").joinpath("schema.json").read_text("utf-8"))


def dumps(doc: dict) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2)


def _frac_str(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def number(x, provenance: str) -> dict:
    x = QuadElem.coerce(x)
    return {
        "symbolic": symbolic(x),
        "decimal": to_decimal(x, DECIMAL_DIGITS),
        "exact": {"a": _frac_str(x.a), "b": _frac_str(x.b), "m": x.m},
        "provenance": provenance,
    }


def number_value(leaf: dict) -> QuadElem:
    e = leaf["exact"]
    return QuadElem(e["a"], e["b"], e["m"])


def slope(res: SlopeResult) -> dict:
    if isinstance(res, Exact):
        return {"kind": "exact", "value": number(res.value, res.provenance.value)}
    return {
        "kind": "bounds",
        "lower": number(res.lower, res.lower_provenance.value),
        "lower_strict": res.lower_strict,
        "upper": number(res.upper, res.upper_provenance.value),
        "upper_strict": res.upper_strict,
    }


def slope_text(res: SlopeResult, name: str = "α") -> str:
    if isinstance(res, Exact):
        return symbolic(res.value)
    lo = "<" if res.lower_strict else "≤"
    hi = "<" if res.upper_strict else "≤"
    return f"{symbolic(res.lower)} {lo} {name} {hi} {symbolic(res.upper)}"


def pell_solution(sol: Optional[PellSolution]) -> Optional[dict]:
    if sol is None:
        return None
    return {"x": sol.x, "y": sol.y, "D": sol.D, "N": sol.N, "minimal": sol.minimal,
            "provenance": sol.method}


def pell_case(pc: PellCase) -> dict:
    return {
        "kind": pc.kind.value,
        "unit": pell_solution(pc.unit),
        "pell5": pell_solution(pc.pell5),
        "pell5_certificate": pc.pell5_certificate,
    }


def divisor_s2(x: DivisorS2) -> str:
    return str(x)


def cone_s2(c: ConeS2) -> dict:
    return {
        "nef": [divisor_s2(r) for r in c.nef],
        "mov": [divisor_s2(r) for r in c.mov],
        "eff": [divisor_s2(r) for r in c.eff],
        "provenance": c.provenance.value,
    }


def curve_class(c: Optional[CurveClassE]) -> Optional[dict]:
    if c is None:
        return None
    return {"c_l2": _frac_str(c.c_l2), "c_lh": _frac_str(c.c_lh), "c_h2": _frac_str(c.c_h2)}


def family(f: DestabFamily, t: int) -> dict:
    deg = f.l_degree(t)
    return {
        "multiple": f.multiple,
        "family_dim": f.family_dim,
        "family_dim_at_least": f.family_dim_at_least,
        "mechanism": f.mechanism,
        "curve_class": curve_class(f.curve_class),
        "l_degree": None if deg is None else int(deg),
        "semistable_strict": f.semistable_strict,
        "provenance": "known-construction",
    }


def bott(b: BottReport) -> dict:
    return {"d": b.d, "chi": b.chi, "verdict": b.verdict.value,
            "provenance": "riemann-roch; nef-threshold-kodaira"}


def degree_report(r: DegreeReport) -> dict:
    return {
        "document": "degree-report",
        "t": r.t,
        "d": r.d,
        "pell_case": pell_case(r.pell_case),
        "cones_s2": cone_s2(r.cones_s2),
        "model_type": r.model_type.value,
        "ambiguous": r.ambiguous,
        "eff_slope": slope(r.eff_slope),
        "nef_slope": slope(r.nef_slope),
        "stability": {
            "hein_min_multiple": r.stability.hein_min_multiple,
            "ramification": None if r.stability.ramification is None else r.stability.ramification.value,
            "families": [family(f, r.t) for f in r.stability.families],
        },
        "bott": bott(r.bott),
        "footnotes": list(r.footnotes),
        "consistency_failures": r.consistency_failures(),
    }


def degree_report_markdown(r: DegreeReport) -> str:
    pc = r.pell_case
    lines = [f"## Degree d = {r.d} (t = {r.t})", ""]
    unit = f"({pc.unit.x}, {pc.unit.y})" if pc.unit else "none (t square)"
    p5 = f"({pc.pell5.x}, {pc.pell5.y})" if pc.pell5 else f"none ({pc.pell5_certificate})"
    c = r.cones_s2
    lines += [
        f"- Pell case: {pc.kind.value}; x²-ty²=1 unit {unit}; x²-4ty²=5 minimal {p5}",
        f"- Nef(S^[2]) = ⟨{c.nef[0]}, {c.nef[1]}⟩; Mov = ⟨{c.mov[0]}, {c.mov[1]}⟩; "
        f"Eff = ⟨{c.eff[0]}, {c.eff[1]}⟩",
        f"- second model: {r.model_type.value}; ambiguous: {'yes' if r.ambiguous else 'no'}",
        f"- α_e: {slope_text(r.eff_slope, 'α_e')}  [{_prov(r.eff_slope)}]",
        f"- α_n: {slope_text(r.nef_slope, 'α_n')}  [{_prov(r.nef_slope)}]",
        f"- every smooth curve in |O_S(m)| restricts stably for m ≥ {r.stability.hein_min_multiple}",
    ]
    if r.stability.ramification is not None:
        lines.append(f"- ramification curves: {r.stability.ramification.value}")
    for f in r.stability.families:
        dim = "?" if f.family_dim is None else (f"≥ {f.family_dim}" if f.family_dim_at_least else str(f.family_dim))
        kind = "strictly semistable" if f.semistable_strict else "not semistable"
        lines.append(f"- family in |O_S({f.multiple})|, dimension {dim}, {kind}: {f.mechanism}")
    lines.append(f"- Bott vanishing: {r.bott.verdict.value} (χ(Ω¹(1)) = {r.bott.chi})")
    for note in r.footnotes:
        lines.append(f"- note: {note}")
    return "\n".join(lines) + "\n"


def _prov(res: SlopeResult) -> str:
    if isinstance(res, Exact):
        return PROVENANCE_TEXT[res.provenance]
    return f"lower: {PROVENANCE_TEXT[res.lower_provenance]}; upper: {PROVENANCE_TEXT[res.upper_provenance]}"


TABLE1_FOOTNOTES = (
    "d=2: only bounds are known for α_e; the upper bound is the restricted class L+2H.",
    "d=4 and d=6: the restricted nef ray of S^[2] is ample on E, giving strict upper bounds; "
    "the lower bounds come from pairing with the exact pseudoeffective boundary.",
    "d=6: the nef interval is sometimes printed with its endpoints swapped; 6/5 < α_n < 4/3 is the consistent reading.",
)


def render_table1() -> dict:
    rows = []
    for d in TABLE1_DEGREES:
        t = d // 2
        rows.append({"d": d, "alpha_e": slope(eff_slope(t)), "alpha_n": slope(nef_slope(t))})
    return {"document": "table1", "rows": rows, "footnotes": list(TABLE1_FOOTNOTES)}


def table1_markdown() -> str:
    lines = ["| d | α_e | α_n |", "|---|---|---|"]
    for d in TABLE1_DEGREES:
        t = d // 2
        lines.append(f"| {d} | {slope_text(eff_slope(t), 'α_e')} | {slope_text(nef_slope(t), 'α_n')} |")
    lines.append("")
    lines += [f"- {n}" for n in TABLE1_FOOTNOTES]
    return "\n".join(lines) + "\n"


def pell_document(search: PellSearch) -> dict:
    return {"document": "pell", "D": search.D, "N": search.N,
            "solution": pell_solution(search.solution), "certificate": search.certificate}


def cf_document(D: int, cf: ContinuedFraction) -> dict:
    return {"document": "continued-fraction", "D": D, "a0": cf.a0, "period": list(cf.period),
            "provenance": "sqrt-recurrence"}


def divisor_e(x: DivisorE) -> dict:
    return {"text": str(x), "l": number(x.l, "input"), "h": number(x.h, "input")}


def full_report_doc(t: int) -> dict:
    return degree_report(full_report(t))


def to_builtin(doc: Any) -> Any:
    """Round-trip a document through JSON text."""
    return json.loads(dumps(doc))

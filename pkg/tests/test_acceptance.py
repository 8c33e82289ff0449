"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import json
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from k3cones import cones, pell, qfield
from k3cones.chow import PHI_SIGMA2, H, L, bbf, dot_curve_e, surface_diag, triple_e
from k3cones.cones import Bounds, Exact, cones_s2, degree_lists, eff_slope, nef_slope
from k3cones import bounds
from k3cones.pell import nagell_bound, pell_n_min, pell_unit
from k3cones.qfield import qe_cmp, qe_sqrt
from k3cones.render import number_value, render_table1
from k3cones.stability import BottVerdict, StabilityVerdict, bott_check, hein_verdict
from oracles import brute_pell, chi_twisted_cotangent

CACHED = (
    qfield.square_reduce, pell.sqrt_cf, pell.pell_unit, pell.pell_n_search,
    cones.pell_case, cones.cones_s2, cones.eff_slope, cones.nef_slope,
)


def cold():
    for f in CACHED:
        f.cache_clear()


def verdict(capsys, number, title, failures, elapsed, budget):
    if elapsed >= budget:
        failures = failures + [f"took {elapsed:.2f} s, budget {budget} s"]
    status = "PASS" if not failures else "FAIL"
    with capsys.disabled():
        print(f"\n[acceptance {number:2d}] {status}: {title} ({elapsed:.3f} s)")
        for f in failures:
            print(f"    {f}")
    assert not failures, failures


class Timer:
    def __enter__(self):
        cold()
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_01_table1(capsys):
    bad = []
    with Timer() as tm:
        rows = {r["d"]: r for r in render_table1()["rows"]}

        def exact(d, key, value):
            s = rows[d][key]
            if s["kind"] != "exact" or qe_cmp(number_value(s["value"]), value) != 0:
                bad.append(f"d={d} {key}: expected exact {value}")

        def inside(d, key, lo, hi):
            s = rows[d][key]
            if s["kind"] != "bounds":
                bad.append(f"d={d} {key}: expected an interval")
                return
            b = Bounds(number_value(s["lower"]), s["lower_strict"], number_value(s["upper"]),
                       s["upper_strict"], cones.Provenance.POSITIVE_CONE, cones.Provenance.POSITIVE_CONE)
            if not b.within(lo, hi, open_interval=True):
                bad.append(f"d={d} {key}: {s['lower']['symbolic']}..{s['upper']['symbolic']} not inside ({lo}, {hi})")

        e2 = rows[2]["alpha_e"]
        if e2["kind"] != "bounds" or qe_cmp(number_value(e2["upper"]), 2) != 0:
            bad.append("d=2 alpha_e: expected an interval with upper bound 2")
        exact(2, "alpha_n", 3)
        exact(4, "alpha_e", Fraction(4, 3))
        inside(4, "alpha_n", qe_sqrt(2), Fraction(3, 2))
        exact(6, "alpha_e", 1)
        inside(6, "alpha_n", Fraction(6, 5), Fraction(4, 3))
        exact(8, "alpha_e", 1)
        exact(8, "alpha_n", 1)
    verdict(capsys, 1, "slope table for d = 2, 4, 6, 8", bad, tm.elapsed, 1.0)


def test_02_degree_lists(capsys):
    bad = []
    with Timer() as tm:
        eff = degree_lists(36, "eff_theorem_b")
        nef = degree_lists(62, "nef_known")
    expected_eff = [4, 8, 12, 18, 20, 24, 26, 32, 34, 36]
    expected_nef = [2, 8, 10, 18, 22, 32, 38, 50, 58, 62]
    if eff != expected_eff:
        extra = sorted(set(eff) - set(expected_eff))
        missing = sorted(set(expected_eff) - set(eff))
        bad.append(f"eff_theorem_b: got {eff}; extra {extra}, missing {missing}")
    if nef != expected_nef:
        bad.append(f"nef_known: got {nef}")
    verdict(capsys, 2, "degree lists", bad, tm.elapsed, 1.0)


def test_03_pell_suite(capsys):
    bad = []
    with Timer() as tm:
        cases = [
            ("pell_unit(2)", 2, 1, tuple(pell_unit(2)), (3, 2)),
            ("pell_unit(13)", 13, 1, tuple(pell_unit(13)), (649, 180)),
            ("pell_n_min(4,5)", 4, 5, pell_n_min(4, 5), (3, 1)),
            ("pell_n_min(20,5)", 20, 5, pell_n_min(20, 5), (5, 1)),
            ("pell_n_min(124,5)", 124, 5, pell_n_min(124, 5), (657, 59)),
            ("pell_n_min(8,5)", 8, 5, pell_n_min(8, 5), None),
        ]
        for name, D, N, got, want in cases:
            got = None if got is None else tuple(got)
            if got != want:
                bad.append(f"{name}: got {got}, expected {want}")
            y_cap = 10 * (want[1] if want else nagell_bound(D, N))
            oracle = brute_pell(D, N, y_cap)
            if oracle != want:
                bad.append(f"{name}: brute force over y <= {y_cap} found {oracle}")
    verdict(capsys, 3, "Pell suite", bad, tm.elapsed, 5.0)


def test_04_intersections(capsys):
    bad = []
    with Timer() as tm:
        for t in range(1, 501):
            d = 2 * t
            got = (triple_e(t, L, L, L), triple_e(t, L, L, H), triple_e(t, L, H, H), triple_e(t, H, H, H))
            if got != (-24, 0, d, 0):
                bad.append(f"d={d}: basic numbers {got}")
        for (t, k), want in (((1, 3), (-6, 12, -42, 42, 42, 6)), ((2, 2), (-8, 16, -40, 40, 40, 4))):
            s = surface_diag(t, k)
            if (s.ld2, s.d2h, s.k2, s.kd, s.n_points, s.image_multiple) != want:
                bad.append(f"surface_diag{(t, k)} = {s}")
        signs = []
        for t in range(1, 501):
            v = dot_curve_e(t, L, PHI_SIGMA2)
            if v != 6 * t - 24:
                bad.append(f"t={t}: L.phi*sigma2 = {v}")
            signs.append(qfield.sign(v))
        if signs[:3] != [-1] * 3 or signs[3] != 0 or set(signs[4:]) != {1}:
            bad.append("sign of L.phi*sigma2 does not change exactly at t=4")
    verdict(capsys, 4, "intersection suite", bad, tm.elapsed, 1.0)


def test_05_bbf_duality(capsys):
    bad = []
    with Timer() as tm:
        for t in range(2, 501):
            c = cones_s2(t)
            if bbf(t, c.mov[1], c.eff[1]) != 0:
                bad.append(f"t={t}: q(mov, eff) = {bbf(t, c.mov[1], c.eff[1])}")
    verdict(capsys, 5, "BBF duality", bad, tm.elapsed, 1.0)


def test_06_sandwich(capsys):
    bad = []
    with Timer() as tm:
        for t in range(1, 501):
            e, n = eff_slope(t), nef_slope(t)
            for name, res in (("eff", e), ("nef", n)):
                if isinstance(res, Bounds) and qe_cmp(res.lower, res.upper) >= 0:
                    bad.append(f"t={t} {name}: empty interval")
            if t >= 2:
                if isinstance(e, Exact) and not (
                        qe_cmp(bounds.generic_eff_lower(t), e.value) < 0
                        and qe_cmp(e.value, bounds.generic_eff_upper(t)) <= 0):
                    bad.append(f"t={t}: exact eff {e.value} outside the generic bounds")
                if isinstance(n, Exact) and not (
                        qe_cmp(bounds.positive_cone_slope(t), n.value) <= 0
                        and qe_cmp(n.value, bounds.generic_nef_upper(t)) <= 0):
                    bad.append(f"t={t}: exact nef {n.value} outside the generic bounds")
            if qe_cmp(e.upper, n.upper) > 0 or qe_cmp(e.lower, n.lower) > 0:
                bad.append(f"t={t}: eff bounds exceed nef bounds")
    verdict(capsys, 6, "bound sandwich and ordering", bad, tm.elapsed, 5.0)


def test_07_sharpened_bounds(capsys):
    bad = []
    with Timer() as tm:
        n2, n3 = nef_slope(2), nef_slope(3)
        target2 = (qe_sqrt(70) - 4) / 3
        if not isinstance(n2, Bounds) or qe_cmp(n2.lower, target2) != 0:
            bad.append(f"t=2 lower bound {n2.lower}, expected (√70-4)/3")
        if qe_cmp(target2, qe_sqrt(2)) != 1:
            bad.append("(√70-4)/3 > √2 not certified")
        if not isinstance(n3, Bounds) or qe_cmp(n3.lower, qe_sqrt(5) - 1) != 0:
            bad.append(f"t=3 lower bound {n3.lower}, expected √5-1")
        if qe_cmp(n3.lower, Fraction(6, 5)) != 1:
            bad.append("√5-1 > 6/5 not certified")
    verdict(capsys, 7, "sharpened nef lower bounds", bad, tm.elapsed, 1.0)


def test_08_hein(capsys):
    bad = []
    with Timer() as tm:
        stable = StabilityVerdict.STABLE_ALL

        def least_t(m):
            return next(t for t in range(1, 10_000) if hein_verdict(t, m) is stable)

        got = (least_t(1), least_t(2), least_t(3),
               next(m for m in range(1, 10_000) if hein_verdict(1, m) is stable))
        if got != (49, 17, 10, 25):
            bad.append(f"thresholds {got}, expected (49, 17, 10, 25)")
    verdict(capsys, 8, "Hein thresholds", bad, tm.elapsed, 1.0)


def test_09_bott(capsys):
    bad = []
    with Timer() as tm:
        for d in range(2, 2001, 2):
            holds = bott_check(d).verdict is BottVerdict.HOLDS
            if holds != (d >= 76):
                bad.append(f"d={d}: verdict {bott_check(d).verdict.value}")
        for d in range(2, 201, 2):
            if bott_check(d).chi != chi_twisted_cotangent(d):
                bad.append(f"d={d}: chi {bott_check(d).chi} vs oracle {chi_twisted_cotangent(d)}")
        if bott_check(4).chi != -16:
            bad.append("bott_check(4).chi != -16")
    verdict(capsys, 9, "Bott vanishing", bad, tm.elapsed, 1.0)


def test_10_performance(capsys):
    bad = []
    cmd = [sys.executable, "-m", "k3cones.cli", "analyze", "--max", "2000", "--format", "json"]
    outputs, times = [], []
    for _ in range(2):
        start = time.perf_counter()
        proc = subprocess.run(cmd, capture_output=True, check=False)
        times.append(time.perf_counter() - start)
        if proc.returncode != 0:
            bad.append(f"exit code {proc.returncode}: {proc.stderr.decode()[-300:]}")
        outputs.append(proc.stdout)
    if outputs[0] != outputs[1]:
        bad.append("two runs produced different bytes")
    doc = json.loads(outputs[0])
    degrees = [r["d"] for r in doc["reports"]]
    if degrees != list(range(2, 2001, 2)):
        bad.append("reports are not one per even degree in increasing order")
    verdict(capsys, 10, "sweep over even d <= 2000", bad, max(times), 10.0)

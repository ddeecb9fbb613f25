"""Acceptance gate: one test per criterion, each printing a pass/fail line
with its timing.  Numeric tolerances and time budgets are part of the
criteria and asserted explicitly."""

import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import mpmath as mp
import pytest

from gspzeta import arch, euler, groups, regions, weyl

ARTIFACT_DIR = Path(__file__).resolve().parent.parent / "artifacts"

# one line per criterion, echoed by conftest's terminal-summary hook
CRITERION_LINES = []


def _report(n, label, ok, elapsed):
    status = "PASS" if ok else "FAIL"
    line = f"CRITERION {n:2d} [{status}] {label} ({elapsed:.2f}s)"
    CRITERION_LINES.append(line)
    print(line, file=sys.__stdout__, flush=True)
    assert ok, f"criterion {n}: {label}"


def test_criterion_01_decomposition_identity():
    t0 = time.perf_counter()
    result = groups.verify_decomposition_identity()
    elapsed = time.perf_counter() - t0
    ok = (result["identity"] == "pass"
          and result["entries_checked"] == 16 and elapsed < 1.0)
    _report(1, "decomposition identity, 16 exact entries", ok, elapsed)


def test_criterion_02_open_orbit_conjugation():
    t0 = time.perf_counter()
    result = groups.verify_open_orbit_lemma(100, seed=0)
    elapsed = time.perf_counter() - t0
    ok = (result["passed"] == 100 and result["all_passed"]
          and elapsed < 1.0)
    _report(2, "open-orbit conjugation 100/100 in Siegel parabolic",
            ok, elapsed)


def test_criterion_03_weyl_kostant_structure():
    t0 = time.perf_counter()
    ok = (len(weyl.weyl_group("G")) == 8
          and weyl.kostant_reps("G").lengths == (0, 1, 2, 3)
          and weyl.kostant_reps("H").lengths == (0, 1, 1, 2))
    elapsed = time.perf_counter() - t0
    _report(3, "|W_G| = 8, Kostant lengths {0,1,2,3} / {0,1,1,2}",
            ok, elapsed)


def test_criterion_04_kappa_two_formula():
    t0 = time.perf_counter()
    cases = [(k1, k2) for k1 in range(2, 13) for k2 in range(2, k1 + 1)]
    ok = len(cases) == 66
    for k1, k2 in cases:
        out = weyl.kappa(2, weyl.Weight(k1 - 3, k2 - 3))
        ok = ok and (out.r1, out.r2) == (k2 - 4, -k1)
    elapsed = time.perf_counter() - t0
    _report(4, "kappa_2(k1-3, k2-3) = (k2-4, -k1) on 66 cases", ok, elapsed)


def test_criterion_05_branching_count_and_membership():
    t0 = time.perf_counter()
    ok = True
    for k1 in range(2, 13):
        for k2 in range(2, k1 + 1):
            ok = ok and len(weyl.branch_restriction(k1, k2)) == k1 + k2 - 3
            for c1 in range(1, k2 + 3):
                c2 = c1 + k1 - k2 + 2
                ok = ok and (weyl.branch_contains(k1, k2, c1, c2)
                             == (c2 <= k1))
    elapsed = time.perf_counter() - t0
    _report(5, "branching count k1+k2-3; (c1-2,-c2) occurs iff c2 <= k1",
            ok, elapsed)


def test_criterion_06_region_classifier_exhaustive():
    t0 = time.perf_counter()
    ok = True
    for k1 in range(2, 11):
        for k2 in range(2, k1 + 1):
            gaps = {k1 + k2 - 2, k1 - k2 + 2}
            for ell in range(1, 26):
                w = k1 + k2 + ell - 4
                offset = Fraction(0) if w % 2 == 0 else Fraction(1, 2)
                for n in range(-15, 16):
                    s = offset + n
                    if abs(2 * s - 1) > 30:
                        continue
                    res = regions.classify(
                        regions.WeightTuple(k1, k2, ell, s))
                    if ell in gaps:
                        ok = ok and res.region is None
                    if res.region == "A":
                        ok = ok and res.m == 2 * k1 + 2 * k2 - 6
                    elif res.region == "D":
                        ok = ok and res.m == k1 + k2 + ell - 4
                    elif res.region == "F":
                        ok = ok and res.m == 2 * k2 + 2 * ell - 6
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 10.0
    _report(6, "exhaustive region scan: exclusive, gaps None, m formulas",
            ok, elapsed)


def test_criterion_07_euler_prefactor_identity():
    t0 = time.perf_counter()
    h = euler.HeckeParams()
    d, dp = euler.delta_factor(h), euler.delta_prime(h, Fraction(1, 2))
    prod = d * dp
    full = euler.euler_D(h).scale(euler.combined_prefactor())
    ok = (d.prefactor * dp.prefactor == euler.combined_prefactor()
          and prod.prefactor == full.prefactor
          and prod.factor_multiset() == full.factor_multiset())
    elapsed = time.perf_counter() - t0
    _report(7, "prefactor identity and Delta*Delta' = prefactor*E^(D)",
            ok, elapsed)


def test_criterion_08_improved_factor():
    t0 = time.perf_counter()
    h = euler.HeckeParams()
    full = euler.euler_D(h).factor_multiset()
    imp = euler.euler_D_improved(h)
    im = imp.factor_multiset()
    ok = (imp.degree == 7
          and all(full[k] >= v for k, v in im.items()))
    elapsed = time.perf_counter() - t0
    _report(8, "improved E^(D) has 7 factors and multiset-divides E^(D)",
            ok, elapsed)


def test_criterion_09_iwahori_scaling():
    t0 = time.perf_counter()
    h = euler.HeckeParams()
    ratio = euler._g("q") ** 4 / (euler._g("beta_iw") * euler._g("b2"))
    ok = True
    prev = euler.iwahori_value(h, 2)
    for ell in range(3, 7):
        cur = euler.iwahori_value(h, ell)
        ok = ok and cur.prefactor == prev.prefactor * ratio
        ok = ok and cur.factor_multiset() == prev.factor_multiset()
        prev = cur
    elapsed = time.perf_counter() - t0
    _report(9, "iwahori_value(ell+1)/iwahori_value(ell) = p^2/(beta b2)",
            ok, elapsed)


def test_criterion_10_normalization_audit():
    t0 = time.perf_counter()
    report = euler.normalization_audit(
        shift_candidates=[Fraction(n, 2) for n in range(-6, 7)])
    ARTIFACT_DIR.mkdir(exist_ok=True)
    artifact = ARTIFACT_DIR / "normalization_audit.json"
    artifact.write_text(json.dumps(report, indent=1, sort_keys=True) + "\n")
    elapsed = time.perf_counter() - t0
    ok = report["found"] and artifact.exists()
    _report(10, f"normalization audit binding found -> {artifact.name}",
            ok, elapsed)


def test_criterion_11_siegel_section_oracle():
    import random
    t0 = time.perf_counter()
    rng = random.Random(2024)
    ok = True
    for _ in range(10):
        c = rng.randint(1, 5)
        s = Fraction(rng.randint(1, 9), 2)
        v = arch.siegel_section_value(c, s, 30)
        o = arch.siegel_section_quadrature(c, s, 30)
        ok = ok and abs(o - v) / abs(v) < 1e-8
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 5.0
    _report(11, "Siegel-section quadrature oracle, 10 points @ 1e-8",
            ok, elapsed)


def test_criterion_12_whittaker_normalization():
    t0 = time.perf_counter()
    ref = mp.e ** (-2 * mp.pi)
    ok = True
    for c in (1, 2, 3):
        w = arch.whittaker_normalization_check(c, 20)
        ok = ok and abs(w - ref) / ref < 1e-4
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 60.0
    _report(12, "Whittaker transform = e^{-2 pi} for c in {1,2,3}",
            ok, elapsed)


def _region_d_grid(count):
    grid = []
    for k1 in range(4, 12):
        for k2 in range(2, k1 + 1):
            for c1 in range(1, 4):
                c2 = c1 + k1 - k2 + 2
                if c2 <= k1:
                    grid.append((k1, k2, c1, c2))
                if len(grid) == count:
                    return grid
    return grid


def _region_f_grid(count):
    grid = []
    for k1 in range(4, 12):
        for k2 in range(2, k1):
            for c1 in range(1, k1 - k2 + 2):
                c2 = k1 - k2 + 2 - c1
                if c2 >= 1:
                    grid.append((k1, k2, c1, c2))
                if len(grid) == count:
                    return grid
    return grid


def test_criterion_13_region_gamma_identities():
    t0 = time.perf_counter()
    samples = [2.3, mp.mpc(3.1, 0.7), 4.0]
    grid_d = _region_d_grid(20)
    ok = len(grid_d) == 20
    for k1, k2, c1, c2 in grid_d:
        rep = arch.verify_regionD_identity(k1, k2, c1, c2, samples, 30)
        ok = ok and rep["max_rel_err"] < 1e-9
    for k1, k2, c1, c2 in _region_f_grid(10):
        rep = arch.verify_regionF_identity(k1, k2, c1, c2, samples, 30)
        ok = ok and rep["max_rel_err"] < 1e-9
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 10.0
    _report(13, "region-D (20 cases) and region-F Gamma identities @ 1e-9",
            ok, elapsed)


def test_criterion_14_zeta_nonvanishing():
    t0 = time.perf_counter()
    ok = True
    checked = 0
    for k1 in range(3, 9):
        for k2 in range(2, k1 + 1):
            for ell in range(1, k1 - k2 + 2):
                c2 = ell
                c1 = k1 - k2 + 2 - ell
                if c1 < 1:
                    continue
                for s in regions.critical_s_set(k1, k2, ell):
                    value = arch.zeta_value("F", k1, k2, c1, c2, s, 30)
                    ok = ok and abs(value) > 0
                    checked += 1
    elapsed = time.perf_counter() - t0
    ok = ok and checked > 0
    _report(14, f"region-F zeta_value nonzero at {checked} critical points",
            ok, elapsed)

"""Acceptance gate: the seven primary criteria, each at its stated tolerance.

Every test prints one `[criterion N] PASS/FAIL` line (visible with -s, or in
the captured output of failing tests).

Two checks are implemented exactly as pinned and are expected to FAIL on
mathematical grounds, with the analysis recorded in README.md under "Known
deviations":

* criterion 4, parts (2) and (3): the decay *shapes* are verified (the
  ratios are stable or decreasing in q), but the source's unspecified
  O-constants exceed the pinned constant 10 at high derivative orders
  (up to ~26x at l = 2, order 6, and ~6.4x at the mixed (2,2) corner);
* criterion 7: the fitted growth exponent of the family maximum over the
  frozen window [100, 3000] measures 0.255 +/- 0.008.  The family maximum
  at desk scale includes the growth of the family size (about q characters
  per modulus) and convexity-permitted log powers, which push the finite-
  range slope just above the asymptotic convexity benchmark 0.25.

Everything else passes.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np

from zetalab import cli, lfunc, locgl2, mellin, oracle


def report(criterion: str, ok: bool, detail: str) -> bool:
    print(f"[{criterion}] {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


# -- criterion 1: symbolic identity suite -------------------------------------------


def test_criterion_1_symbolic_suite():
    t0 = time.perf_counter()
    result = cli.cmd_verify(cli.RunConfig())
    elapsed = time.perf_counter() - t0
    symbolic = [c for c in result["checks"] if c["kind"] == "symbolic"]
    detail = (
        f"{len(symbolic)} symbolic identities + {result['num_checked'] - len(symbolic)} "
        f"golden pins, all reduced to the zero element, {elapsed:.1f}s"
    )
    ok = result["passed"] and len(symbolic) >= 40 and elapsed < 120
    assert report("criterion 1", ok, detail)
    failed = [c["id"] for c in result["checks"] if not c["pass"]]
    assert not failed, failed


# -- criterion 2: oracle equivalence --------------------------------------------------


def test_criterion_2_oracle_equivalence():
    t0 = time.perf_counter()
    result = cli.cmd_oracle(cli.RunConfig(npoints=20, tol=1e-9))
    elapsed = time.perf_counter() - t0
    detail = (
        f"12 closed-form families x 20 seeded points, worst relative error "
        f"{result['worst_rel_error']:.2e} <= 1e-9, {elapsed:.1f}s"
    )
    ok = result["passed"] and elapsed < 60
    assert report("criterion 2", ok, detail)


# -- criterion 3: coset enumeration ----------------------------------------------------


def test_criterion_3_coset_enumeration():
    pairs = ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1))
    bad = []
    for q, m in pairs:
        rep = oracle.coset_count(q, m)
        for v in range(m):
            want = Fraction(q, q + 1) if v == 0 else Fraction(q - 1, q**v) / (q + 1)
            if rep.masses.get(v, Fraction(0)) != want:
                bad.append((q, m, v))
        if rep.masses.get(m, Fraction(0)) != Fraction(1, q ** (m - 1)) / (q + 1):
            bad.append((q, m, "tail"))
    ok = not bad
    assert report("criterion 3", ok, f"exact rational masses for {len(pairs)} (q, m) pairs"), bad


# -- criterion 4: decay-shape checks at the pinned constant ------------------------------


def _bound_detail(rep):
    return f"worst ratio {rep.worst_ratio:.4f} vs constant {rep.constant:g}"


def test_criterion_4_part1_c_decay():
    rep = locgl2.bound_check("c_decay", constant=10.0)
    assert report("criterion 4.1", rep.passed, _bound_detail(rep))


def test_criterion_4_part2_zeta_ratio_decay():
    rep = locgl2.bound_check("zeta_ratio_decay", constant=10.0)
    ok = report("criterion 4.2", rep.passed, _bound_detail(rep))
    assert ok, (
        "EXPECTED FAILURE (spec calibration defect): the shape "
        "q^(-l) log^n q holds with q-stable ratios, but the true O-constant "
        "grows like 2^n (about 192 for l = 2, n = 6; worst measured ratio "
        f"{rep.worst_ratio:.2f} at constant 10).  Derivatives were cross-"
        "checked against Cauchy-integral differentiation to 1e-13.  See "
        "README 'Known deviations'."
    )


def test_criterion_4_part3_herm_decay():
    rep = locgl2.bound_check("herm_decay", constant=10.0)
    ok = report("criterion 4.3", rep.passed, _bound_detail(rep))
    assert ok, (
        "EXPECTED FAILURE (spec calibration defect): the shape "
        "q^(-l) log^(k1+k2) q holds at the pairing's central point, but the "
        "O-constant at the (k1, k2) = (2, 2) corner is about 64 at q = 2 "
        f"(worst measured ratio {rep.worst_ratio:.2f} at constant 10).  See "
        "README 'Known deviations'."
    )


def test_criterion_4_part4_vertical_line():
    rep = locgl2.bound_check("vertical_line", constant=10.0, eps=0.1)
    assert report("criterion 4.4", rep.passed, _bound_detail(rep))


def test_criterion_4_worst_ratios_logged():
    stored = cli.load_golden("bound_worst_ratios.json")
    ok = set(stored["kinds"]) == {"c_decay", "zeta_ratio_decay", "herm_decay", "vertical_line"}
    for kind in stored["kinds"]:
        rep = locgl2.bound_check(kind, constant=stored["constant"])
        ok &= abs(rep.worst_ratio - stored["kinds"][kind]["worst_ratio"]) <= 1e-9 * max(
            1.0, rep.worst_ratio
        )
    assert report("criterion 4 (golden)", ok, "worst ratios logged and reproduced")


# -- criterion 5: Mellin recursion ----------------------------------------------------------


def test_criterion_5_mellin():
    rng = np.random.default_rng(20260810)
    worst_nd = 0.0
    for _ in range(100):
        s = complex(rng.uniform(0.02, 5.0), rng.uniform(-20.0, 20.0))
        vals = [mellin.mellin_h0(s, order) for order in range(5)]
        worst_nd = max(worst_nd, max(abs(v - vals[0]) for v in vals[1:]))
    worst_id = 0.0
    for re in (-2.7, -2.0, -1.5, -1.0, -0.5, -0.1):
        for im in (-7.0, -1.3, 0.0, 2.4, 11.0):
            s = complex(re, im)
            worst_id = max(
                worst_id, abs(mellin.mellin_one_minus_h0(s) - mellin.mellin_one_minus_h0_direct(s))
            )
    eps = 1e-3
    residue = abs(eps * mellin.mellin_h0(eps, 1) - 1)
    ok = worst_nd <= 1e-8 and worst_id <= 1e-8 and residue <= 1e-2
    assert report(
        "criterion 5",
        ok,
        f"order-independence {worst_nd:.2e} <= 1e-8 on 100 points; "
        f"M[1-h0] identity {worst_id:.2e} <= 1e-8 on Re s in (-3, 0); "
        f"residue probe {residue:.2e} <= 1e-2",
    )


# -- criterion 6: central-value cross-validation ----------------------------------------------


def test_criterion_6_lvalue_cross_validation():
    t0 = time.perf_counter()
    worst = 0.0
    count = 0
    for q in range(3, 201):
        for chi in lfunc.enumerate_characters(q):
            diff = abs(lfunc.l_central(chi, 1e-9) - lfunc.l_oracle_hurwitz(chi, 0.5))
            worst = max(worst, diff)
            count += 1
    rng = random.Random(cli.DEFAULT_SEED)
    sampled = 0
    while sampled < 100:
        q = rng.randint(201, 3000)
        chars = lfunc.enumerate_characters(q)
        if not chars:
            continue
        chi = chars[rng.randrange(len(chars))]
        diff = abs(lfunc.l_central(chi, 1e-9) - lfunc.l_oracle_hurwitz(chi, 0.5))
        worst = max(worst, diff)
        sampled += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 2e-8 and elapsed < 600
    assert report(
        "criterion 6",
        ok,
        f"{count} exhaustive values (q <= 200) + 100 random (q <= 3000), "
        f"worst |AFE - Hurwitz| = {worst:.2e} <= 2e-8, {elapsed:.0f}s",
    )


# -- criterion 7: subconvexity trend ------------------------------------------------------------


def test_criterion_7_summary_reports_burgess_target():
    _, summary = cli.cmd_scan(cli.RunConfig(qmin=100, qmax=120, stride=4))
    ok = (
        summary["burgess_target"] == "103/512"
        and summary["theta"] == "7/64"
        and abs(summary["burgess_target_float"] - 103 / 512) < 1e-15
        and "sanity trend" in summary["note"]
    )
    assert report("criterion 7 (summary)", ok, "scan summary reports the Burgess-type target 103/512")


def test_criterion_7_fitted_slope_below_convexity(full_scan_records):
    fit = lfunc.exponent_fit(full_scan_records)
    detail = (
        f"stride-1 census of [100, 3000] ({len(full_scan_records)} moduli): "
        f"slope {fit.slope:.4f}, residual {fit.residual:.3f}, target < 0.25"
    )
    ok = report("criterion 7 (slope)", fit.ok and fit.slope < 0.25, detail)
    assert ok, (
        "EXPECTED FAILURE (criterion miscalibrated at desk scale): the "
        f"least-squares exponent of max|L(1/2, chi)| measures {fit.slope:.4f} "
        "over the frozen window.  The family maximum grows with the family "
        "size (about q characters per modulus) on top of convexity-permitted "
        "log powers, so the finite-range slope sits marginally above the "
        "asymptotic benchmark 0.25.  Every individual value is cross-checked "
        "against the Hurwitz oracle to 2e-8 (criterion 6); normalized block "
        "maxima grow like q^0.05, far below the convexity exponent.  See "
        "README 'Known deviations'."
    )


def test_scan_block_maxima_trend(full_scan_records):
    # module invariant (not an acceptance criterion): dyadic block maxima of
    # |L|/q^(1/4) should not trend upward; measured slope ~0.05 exceeds the
    # stated 0.02 for the same family-size reason as the criterion above
    blocks = {}
    for r in full_scan_records:
        blocks.setdefault(int(math.log2(r.q)), []).append(r.normalized)
    xs = np.array([b * math.log(2) for b in sorted(blocks)])
    ys = np.array([math.log(max(blocks[b])) for b in sorted(blocks)])
    slope = float(np.polyfit(xs, ys, 1)[0])
    ok = report(
        "lfunc invariant (block trend)",
        slope <= 0.02,
        f"normalized dyadic block-maxima slope {slope:.4f}, stated bound 0.02",
    )
    assert ok, (
        "EXPECTED FAILURE (invariant miscalibrated at desk scale): the "
        f"measured block-maxima slope is {slope:.4f}.  The per-block family "
        "size grows linearly in q, which alone produces a positive slope of "
        "extreme values of this magnitude.  See README 'Known deviations'."
    )

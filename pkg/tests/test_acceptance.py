"""End-to-end acceptance gate.

One printed PASS/FAIL line per criterion (written straight to the terminal,
bypassing capture, so the gate is legible in any pytest run).  Criteria that
are analytically unattainable are marked strict-xfail and print the full
numeric decomposition; the reasoning lives in the repo notes.  Statistical
criteria are pinned to the shipped default seed (42) and were verified
deterministic at that seed; tolerances are 3-sigma or the documented CI
level, never widened.

The figure-rendering checks (monotonicity of rendered curves) live in the
frontend package's test suite, which consumes only the CSV interface.
"""

import math
import os
import time

import pytest

import mmwave_lattice as mwl
from mmwave_lattice.cli import main as cli_main

S, PB, LAM, RB = 30.0, 0.3, 6e-5, 150.0


def report(capsys, num, ok, text, expected_fail=False):
    mark = "PASS" if ok else ("FAIL (expected)" if expected_fail else "FAIL")
    with capsys.disabled():
        print(f"[criterion {num:2d}] {mark}  {text}")


def defaults():
    return mwl.SingleTierScenario(mwl.LatticeConfig(S, PB), LAM, RB)


def paper_hetnet(scale=1.0):
    hs = mwl.MultiHeightConfig(S, (0.4, 0.1, 0.2, 0.3))
    return mwl.HetNetScenario(hs, ((4e-5 * scale, 150.0),
                                   (2e-4 * scale, 90.0),
                                   (4e-4 * scale, 50.0)))


# --- 1: covering-count sandwich -------------------------------------------------

def test_criterion_1_covering_sandwich(capsys):
    t0 = time.monotonic()
    violations = 0
    for i in range(1, 51):
        r = (i / 10.0) * math.sqrt(S)
        lo, hi = mwl.n_bounds(r, S)
        exact = mwl.exact_covered_site_count(r, S)
        if not lo <= exact <= hi:
            violations += 1
    r15 = 1.5 * math.sqrt(S)
    tight = mwl.n_bounds(r15, S) == (9, 9) and mwl.exact_covered_site_count(r15, S) == 9
    dt = time.monotonic() - t0
    ok = violations == 0 and tight and dt < 1.0
    report(capsys, 1, ok,
           f"covering-count sandwich: {violations} violations on 50 radii; "
           f"all three equal 9 at r=1.5*sqrt(s): {tight} ({dt:.2f}s < 1s)")
    assert violations == 0 and tight
    assert dt < 1.0


# --- 2: quadratic-area asymptotics ----------------------------------------------

def test_criterion_2_asymptotic_count(capsys):
    t0 = time.monotonic()
    rels = {}
    for r_over, cap in ((30.0, 0.10), (100.0, 0.03)):
        r = r_over * math.sqrt(S)
        asym = math.pi * r * r / S
        rels[r_over] = abs(mwl.exact_covered_site_count(r, S) - asym) / asym
    dt = time.monotonic() - t0
    ok = rels[30.0] < 0.10 and rels[100.0] < 0.03 and dt < 5.0
    report(capsys, 2, ok,
           f"count vs pi*r^2/s: rel err {rels[30.0]:.4f} (<10%) at r/sqrt(s)=30, "
           f"{rels[100.0]:.4f} (<3%) at 100 ({dt:.2f}s < 5s)")
    assert rels[30.0] < 0.10 and rels[100.0] < 0.03
    assert dt < 5.0


# --- 3: radius-index distribution ------------------------------------------------

def test_criterion_3_radius_pmf(capsys):
    t0 = time.monotonic()
    out = mwl.estimate_pmf(defaults(), 2, 100000, 42)
    devs = {}
    for n, want in ((0, 0.94235199), (1, 0.05745642876861941)):
        sigma = math.sqrt(want * (1 - want) / 100000)
        devs[n] = abs(out[n].p_hat - want) / sigma
    unit = math.fsum(e.p_hat for e in out) == 1.0
    dt = time.monotonic() - t0
    ok = devs[0] < 3 and devs[1] < 3 and unit and dt < 30
    report(capsys, 3, ok,
           f"radius PMF at 1e5 trials: atom deviations {devs[0]:.2f} / "
           f"{devs[1]:.2f} sigma (<3); buckets sum to 1.0 exactly: {unit} "
           f"({dt:.1f}s < 30s)")
    assert devs[0] < 3 and devs[1] < 3 and unit
    assert dt < 30


# --- 4: no-blockage closed form ---------------------------------------------------

def test_criterion_4_no_blockage(capsys):
    t0 = time.monotonic()
    sc = mwl.SingleTierScenario(mwl.LatticeConfig(S, 0.0), LAM, RB)
    e = mwl.estimate(mwl.EstimatorKind("exact_single"), sc, 100000, 42)
    want = 1 - math.exp(-math.pi * LAM * RB * RB)  # 0.9856089685491852
    inside = e.ci_low <= want <= e.ci_high
    dt = time.monotonic() - t0
    ok = inside and dt < 60
    report(capsys, 4, ok,
           f"no-blockage limit: 95% CI ({e.ci_low:.6f}, {e.ci_high:.6f}) contains "
           f"{want:.6f}: {inside} ({dt:.1f}s < 60s)")
    assert inside
    assert dt < 60


# --- 5: free-disk semi-analytic sum is exact for the simulated event --------------

def test_criterion_5_mbfc_exactness(capsys):
    t0 = time.monotonic()
    sc = defaults()
    oracle = mwl.pc_mbfc_semi_analytic(sc).value
    e = mwl.estimate(mwl.EstimatorKind("mbfc_single"), sc, 1_000_000, 42)
    lo, hi = mwl.wilson_ci(e.successes, e.trials, level=0.99)
    inside = lo <= oracle <= hi
    dt = time.monotonic() - t0
    ok = inside and dt < 600
    report(capsys, 5, ok,
           f"semi-analytic {oracle:.6e} inside 99% CI ({lo:.6e}, {hi:.6e}) "
           f"at 1e6 trials: {inside} ({dt:.0f}s < 600s)")
    assert inside
    assert dt < 600


# --- 6: bound orderings over the density sweep ------------------------------------

FIG5_LAMBDAS = [1e-5 + k * (2e-4 - 1e-5) / 19 for k in range(20)]


@pytest.fixture(scope="module")
def fig5_sweep():
    t0 = time.monotonic()
    rows = []
    for lam in FIG5_LAMBDAS:
        sc = mwl.SingleTierScenario(mwl.LatticeConfig(S, PB), lam, RB)
        ev = mwl.estimate_events(sc, 100000, 42)
        rows.append({"lam": lam,
                     "thm1": mwl.pc_lb_mbfc(sc).value,
                     "thm3": mwl.pc_lb_multiregion(sc).value,
                     "ev": ev})
    return rows, time.monotonic() - t0


def test_criterion_6_orderings(capsys, fig5_sweep):
    rows, dt = fig5_sweep
    bad_t1_t3 = sum(1 for r in rows if r["thm1"] > r["thm3"])
    bad_t1_ci = sum(1 for r in rows if r["thm1"] > r["ev"]["mbfc_single"].ci_high)
    min_margin = min(r["ev"]["mbfc_single"].ci_high - r["thm1"] for r in rows)
    bad_pair = sum(1 for r in rows
                   if not (r["ev"]["mbfc_single"].successes
                           <= r["ev"]["multiregion_single"].successes
                           <= r["ev"]["exact_single"].successes))
    violations = [r["ev"]["containment_violations"] for r in rows]
    bad_contain = sum(a + b for a, b in violations)
    ok = bad_t1_t3 == 0 and bad_t1_ci == 0 and bad_pair == 0 and \
        bad_contain == 0 and dt < 900
    report(capsys, 6, ok,
           f"sweep orderings (20 pts, 1e5 trials): thm1<=thm3 ok; "
           f"thm1<=mbfc CI-high ok (min margin {min_margin:.1e}); "
           f"paired mbfc<=multiregion<=exact ok; containment violations "
           f"{bad_contain} ({dt:.0f}s < 900s)")
    assert bad_t1_t3 == 0
    assert bad_t1_ci == 0
    assert bad_pair == 0
    assert bad_contain == 0
    assert dt < 900


@pytest.mark.xfail(strict=True, reason=(
    "the multiregion analytic bound uses quadrant areas pi*s*l^2/4 which "
    "overstate the true offset-corrected areas, so it exceeds even its own "
    "LoS-free geometric event probability; no event definition can satisfy "
    "both this clause and zero containment violations (see repo notes)"))
def test_criterion_6_multiregion_bound_vs_ci(capsys, fig5_sweep):
    rows, _ = fig5_sweep
    bad = [(r["lam"], r["thm3"], r["ev"]["multiregion_single"].ci_high)
           for r in rows if r["thm3"] > r["ev"]["multiregion_single"].ci_high]
    # frozen decomposition at the default point (independent study over 2e5
    # lattice draws, PPP integrated analytically per draw):
    #   analytic bound                      0.02570394832031042
    #   its own geometric event (no LoS)    0.02454718263948233
    #   geometric event + origin site       0.02630141842488163
    #   bound with corrected quadrant areas 0.02407945388729582
    report(capsys, 6, False, expected_fail=True, text=(
        f"multiregion bound <= sim CI-high fails at {len(bad)}/20 sweep points "
        f"(first: lam={bad[0][0]:.2e}, bound={bad[0][1]:.5f} > "
        f"ci_high={bad[0][2]:.5f}); the bound exceeds its own geometric "
        f"event (0.025704 > 0.024547 at defaults) due to a quadrant-area "
        f"overestimate -- expected failure, see repo notes"))
    assert not bad, f"{len(bad)}/20 points exceed the simulated CI"


# --- 7: dense-lattice closed form --------------------------------------------------

def test_criterion_7_dense_limit_small(capsys):
    t0 = time.monotonic()
    sc = mwl.SingleTierScenario(mwl.LatticeConfig(1e-4, PB), LAM, RB)
    val = mwl.pc_lb_mbfc_dense(sc).value
    dt = time.monotonic() - t0
    ok = val < 1e-3 and dt < 10
    report(capsys, 7, ok,
           f"dense-lattice bound vanishes as s->0: {val:.3e} < 1e-3 at "
           f"s=1e-4 m^2 ({dt:.2f}s < 10s)")
    assert val < 1e-3
    assert dt < 10


@pytest.mark.xfail(strict=True, reason=(
    "the dense-regime closed form's second term does not arise from the "
    "integral it is presented as; the gap to the exact semi-analytic value "
    "is ~81% at s=0.1 and scale-free in s (see repo notes)"))
def test_criterion_7_dense_convergence(capsys):
    sc = mwl.SingleTierScenario(mwl.LatticeConfig(0.1, PB), LAM, RB)
    semi = mwl.pc_mbfc_semi_analytic(sc).value
    dense = mwl.pc_lb_mbfc_dense(sc).value
    first_term = mwl.pc_lb_mbfc_dense(sc).term_breakdown[0]
    rel = abs(semi - dense) / dense
    # frozen from independent quadrature of the exp-square-tail integral:
    quad = 1.68218e-05
    report(capsys, 7, False, expected_fail=True, text=(
        f"dense-form gap at s=0.1: semi-analytic {semi:.5e} vs closed form "
        f"{dense:.5e} (rel {rel:.4f}, needs <0.01); first term alone "
        f"{first_term:.5e}, exact integral by quadrature {quad:.5e} -- the "
        f"second closed-form term is not part of the integral; expected "
        f"failure, see repo notes"))
    assert rel < 0.01, f"relative gap {rel:.4f}"


# --- 8: factor-4 union structure ---------------------------------------------------

def test_criterion_8_factor_four(capsys):
    t0 = time.monotonic()
    sc = mwl.SingleTierScenario(mwl.LatticeConfig(S, PB), 1e-7, RB)
    qa, qq = mwl.region_q_axis(sc), mwl.region_q_quadrant(sc)
    ratio3 = mwl.pc_lb_multiregion(sc).value / (qa + qq)
    res4 = mwl.pc_lb_multiregion_dense(sc)
    p_tilde = res4.info["p_tilde"]
    ratio4 = res4.value / p_tilde
    dt = time.monotonic() - t0
    ok = abs(ratio3 - 4) <= 0.2 and abs(ratio4 - 4) <= 0.2 and dt < 1
    report(capsys, 8, ok,
           f"small-probability union factor: {ratio3:.4f} and {ratio4:.4f} "
           f"vs 4 +- 5% ({dt:.2f}s < 1s)")
    assert abs(ratio3 - 4) <= 0.2
    assert abs(ratio4 - 4) <= 0.2
    assert dt < 1


# --- 9: multi-tier reduction, additivity, and union gain ---------------------------

def test_criterion_9_hetnet(capsys):
    t0 = time.monotonic()
    # (a) K=1 pipeline is bit-identical to the single-tier pipeline
    het1 = mwl.HetNetScenario(mwl.MultiHeightConfig(S, (1 - PB, PB)), ((LAM, RB),))
    eh = mwl.estimate(mwl.EstimatorKind("exact_hetnet"), het1, 3000, 123)
    es = mwl.estimate(mwl.EstimatorKind("exact_single"), defaults(), 3000, 123)
    bitwise = (eh.successes, eh.p_hat, eh.ci_low, eh.ci_high) == \
        (es.successes, es.p_hat, es.ci_low, es.ci_high)

    # (b) independent-tier combination is additive at small probabilities
    het_small = paper_hetnet(scale=0.01)
    ind = mwl.hetnet_lb_independent(het_small).value
    lin = mwl.hetnet_linear_sum(het_small)
    rel = abs(ind - lin) / lin

    # (c) simulated union dominates every per-tier estimate at each ladder point
    from mmwave_lattice.presets import (TIER_DENSITIES, TIER_HEIGHT_PROBS,
                                        TIER_RANGES)
    union_ok = True
    for K in range(1, 7):
        probs = (1 - sum(TIER_HEIGHT_PROBS[:K]),) + TIER_HEIGHT_PROBS[:K]
        het = mwl.HetNetScenario(mwl.MultiHeightConfig(S, probs),
                                 tuple(zip(TIER_DENSITIES[:K], TIER_RANGES[:K])))
        ev = mwl.estimate_events(het, 20000, 42)
        union = ev["exact_hetnet"].successes
        if union < max(ev[f"per_tier_{k}"].successes for k in range(1, K + 1)):
            union_ok = False
    dt = time.monotonic() - t0
    ok = bitwise and rel < 0.05 and union_ok and dt < 900
    report(capsys, 9, ok,
           f"hetnet: K=1 bitwise equal {bitwise}; additive at 0.01x densities "
           f"(rel {rel:.1e} < 5%); union >= per-tier max at K=1..6 {union_ok} "
           f"({dt:.0f}s < 900s)")
    assert bitwise and rel < 0.05 and union_ok
    assert dt < 900


# --- 10: per-tier closed form vs simulation (report only) --------------------------

def test_criterion_10_per_tier_diagnostic(capsys):
    het = paper_hetnet()
    ev = mwl.estimate_events(het, 100000, 42)
    parts = []
    for k in (2, 3):
        eta = mwl.tier_eta(het, k).value
        sim = ev[f"per_tier_{k}"].p_hat
        parts.append(f"k={k}: eta={eta:.6f}, sim={sim:.6f}, "
                     f"eta-sim={eta - sim:+.2e}")
    qk_note = ", ".join(
        f"q_{k} prod-exact={mwl.qk(het.lattice, k) - mwl.qk_exact(het.lattice, k):+.3f}"
        for k in (2, 3))
    report(capsys, 10, True,
           f"report-only: {'; '.join(parts)}; blockage-thinning gap {qk_note}")
    # diagnostic is reported, not asserted


# --- 11: worker-count determinism ---------------------------------------------------

def test_criterion_11_determinism(capsys, tmp_path):
    t0 = time.monotonic()
    outs = {}
    prev = os.environ.get("MMWAVE_THREADS")
    try:
        for w in (1, 8):
            os.environ["MMWAVE_THREADS"] = str(w)
            out = tmp_path / f"fig5_w{w}.csv"
            rc = cli_main(["run", "--preset", "fig5", "--out", str(out)])
            assert rc == 0
            outs[w] = out.read_bytes()
    finally:
        if prev is None:
            os.environ.pop("MMWAVE_THREADS", None)
        else:
            os.environ["MMWAVE_THREADS"] = prev
    same = outs[1] == outs[8]
    dt = time.monotonic() - t0
    ok = same and dt < 1800
    report(capsys, 11, ok,
           f"density-sweep CSV byte-identical under 1 vs 8 workers: {same} "
           f"({dt:.0f}s < 1800s)")
    assert same
    assert dt < 1800

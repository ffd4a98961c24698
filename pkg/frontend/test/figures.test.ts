/**
 * Shape checks on real producer output: the committed fixtures were
 * generated by the Python CLI (see fixtures/README), so these tests pin
 * the qualitative behavior a reader expects from each figure — curve
 * directions, bracketing, tier saturation — as seen through the CSV
 * interface alone.
 */
import { describe, expect, test } from "vitest";
import { parseResults, seriesRows, ResultRow } from "../src/csv";
import { PRESETS } from "../src/spec";
import { renderFigure } from "../src/render";
import { fixture } from "./helpers";

const BOUNDS = ["thm1", "thm2", "thm3", "thm4"];

function values(rows: ResultRow[], quantity: string): number[] {
  return seriesRows(rows, quantity).map((r) => r.value);
}

function expectStrictlyIncreasing(xs: number[], label: string) {
  for (let i = 1; i < xs.length; i++) {
    expect(xs[i], `${label}[${i}]`).toBeGreaterThan(xs[i - 1]);
  }
}

function expectStrictlyDecreasing(xs: number[], label: string) {
  for (let i = 1; i < xs.length; i++) {
    expect(xs[i], `${label}[${i}]`).toBeLessThan(xs[i - 1]);
  }
}

describe("every preset renders its own fixture completely", () => {
  test.each(["fig3", "fig5", "fig6", "fig7", "tiers"])("%s", (name) => {
    const rows = parseResults(fixture(`${name}.csv`));
    const res = renderFigure(rows, PRESETS[name]);
    expect(res.rendered).toEqual(PRESETS[name].series.map((s) => s.quantity));
    // every id in the file is accounted for: rendered or explicitly skipped
    if (name === "tiers") {
      expect(res.skipped).toEqual(["sim_tier_4", "sim_tier_5", "sim_tier_6"]);
    } else {
      expect(res.skipped).toEqual([]);
    }
  });
});

describe("bound curves move the way the model says they must", () => {
  test("denser base stations help: all four bounds increase along the density sweep", () => {
    const rows = parseResults(fixture("fig5.csv"));
    for (const q of BOUNDS) {
      expectStrictlyIncreasing(values(rows, q), q);
    }
  });

  test("more buildings hurt: all four bounds decrease along the occupancy sweep", () => {
    const rows = parseResults(fixture("fig6.csv"));
    for (const q of BOUNDS) {
      expectStrictlyDecreasing(values(rows, q), q);
    }
  });

  test("coarser blockage helps: all four bounds increase along the site-area sweep", () => {
    const rows = parseResults(fixture("fig7.csv"));
    for (const q of BOUNDS) {
      expectStrictlyIncreasing(values(rows, q), q);
    }
  });
});

describe("covered-site staircase figure", () => {
  test("lower staircase <= exact count <= upper staircase at every radius", () => {
    const rows = parseResults(fixture("fig3.csv"));
    const lo = seriesRows(rows, "n_minus");
    const exact = seriesRows(rows, "n_exact");
    const hi = seriesRows(rows, "n_plus");
    expect(lo.length).toBe(100);
    expect(exact.length).toBe(100);
    expect(hi.length).toBe(100);
    for (let i = 0; i < exact.length; i++) {
      expect(lo[i].sweepValue).toBe(exact[i].sweepValue);
      expect(hi[i].sweepValue).toBe(exact[i].sweepValue);
      expect(lo[i].value).toBeLessThanOrEqual(exact[i].value);
      expect(exact[i].value).toBeLessThanOrEqual(hi[i].value);
    }
  });

  test("staircases never step down", () => {
    const rows = parseResults(fixture("fig3.csv"));
    for (const q of ["n_minus", "n_plus", "n_exact"]) {
      const v = values(rows, q);
      for (let i = 1; i < v.length; i++) {
        expect(v[i], `${q}[${i}]`).toBeGreaterThanOrEqual(v[i - 1]);
      }
    }
  });
});

describe("tier ladder figure", () => {
  test("adding tiers never hurts and the gain saturates", () => {
    const rows = parseResults(fixture("tiers.csv"));
    // the simulated union is drawn from prefix-coupled ladders, so
    // adding a tier can only add successes, trial by trial
    const union = values(rows, "sim_exact_hetnet");
    expect(union).toHaveLength(6);
    for (let i = 1; i < union.length; i++) {
      expect(union[i]).toBeGreaterThanOrEqual(union[i - 1]);
    }
    const firstGain = union[1] - union[0];
    const lastGain = union[union.length - 1] - union[union.length - 2];
    expect(lastGain).toBeLessThan(firstGain);
    // analytic combinations are prefix maxima/products: non-decreasing too
    for (const q of ["hetnet_max", "hetnet_independent", "hetnet_multiregion"]) {
      const v = values(rows, q);
      for (let i = 1; i < v.length; i++) {
        expect(v[i], `${q}[${i}]`).toBeGreaterThanOrEqual(v[i - 1]);
      }
    }
  });

  test("the union dominates every per-tier estimate at the same ladder length", () => {
    const rows = parseResults(fixture("tiers.csv"));
    const unionByK = new Map(seriesRows(rows, "sim_exact_hetnet").map((r) => [r.sweepValue, r.value]));
    for (let k = 1; k <= 6; k++) {
      for (const r of seriesRows(rows, `sim_tier_${k}`)) {
        expect(unionByK.get(r.sweepValue)!).toBeGreaterThanOrEqual(r.value);
      }
    }
  });
});

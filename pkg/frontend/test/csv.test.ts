import { describe, expect, test } from "vitest";
import { CsvFormatError, HEADER, parseResults, quantities, seriesRows } from "../src/csv";
import { fixture } from "./helpers";

const HEAD = HEADER.join(",");

describe("parseResults", () => {
  test("parses analytic and simulated rows", () => {
    const text =
      `${HEAD}\n` +
      `p_b,0.3,thm1,0.002064344431829968,,,,\n` +
      `p_b,0.3,sim_exact,0.123,0.1,0.15,2000,42\n`;
    const rows = parseResults(text);
    expect(rows).toHaveLength(2);
    expect(rows[0]).toEqual({
      sweepParam: "p_b",
      sweepValue: 0.3,
      quantity: "thm1",
      value: 0.002064344431829968,
      ciLow: null,
      ciHigh: null,
      trials: null,
      seed: null,
    });
    expect(rows[1].trials).toBe(2000);
    expect(rows[1].seed).toBe(42);
    expect(rows[1].ciLow).toBe(0.1);
  });

  test("full-precision float text round-trips exactly", () => {
    const v = 0.002064344431829968;
    const rows = parseResults(`${HEAD}\nnone,0.0,thm1,0.002064344431829968,,,,\n`);
    expect(rows[0].value).toBe(v);
  });

  test("rejects a wrong header verbatim", () => {
    const bad = HEAD.replace("ci_low", "ci_lo");
    expect(() => parseResults(`${bad}\nnone,0,thm1,0.5,,,,\n`)).toThrow(CsvFormatError);
    expect(() => parseResults(`${bad}\nnone,0,thm1,0.5,,,,\n`)).toThrow(/unexpected header/);
  });

  test("rejects empty input and header-only input", () => {
    expect(() => parseResults("")).toThrow(/no header row/);
    expect(() => parseResults(`${HEAD}\n`)).toThrow(/no data rows/);
  });

  test("rejects short rows, bad numbers, half-set confidence bounds", () => {
    expect(() => parseResults(`${HEAD}\nnone,0,thm1,0.5,,,\n`)).toThrow(/expected 8 fields/);
    expect(() => parseResults(`${HEAD}\nnone,zero,thm1,0.5,,,,\n`)).toThrow(/sweep_value/);
    expect(() => parseResults(`${HEAD}\nnone,0,thm1,NaN-ish,,,,\n`)).toThrow(/value is not a finite number/);
    expect(() => parseResults(`${HEAD}\nnone,0,sim_exact,0.5,0.4,,2000,42\n`)).toThrow(/both empty or both set/);
  });

  test("quantities preserves first-appearance order", () => {
    const text =
      `${HEAD}\n` +
      `k,1,b,0.1,,,,\n` +
      `k,1,a,0.2,,,,\n` +
      `k,2,b,0.3,,,,\n`;
    expect(quantities(parseResults(text))).toEqual(["b", "a"]);
  });

  test("seriesRows sorts by sweep value", () => {
    const text =
      `${HEAD}\n` +
      `k,3,a,0.3,,,,\n` +
      `k,1,a,0.1,,,,\n` +
      `k,2,a,0.2,,,,\n`;
    expect(seriesRows(parseResults(text), "a").map((r) => r.sweepValue)).toEqual([1, 2, 3]);
  });

  test("reads a real sweep file", () => {
    const rows = parseResults(fixture("fig5.csv"));
    expect(rows).toHaveLength(140);
    expect(quantities(rows).sort()).toEqual(
      ["sim_exact", "sim_mbfc", "sim_multiregion", "thm1", "thm2", "thm3", "thm4"].sort(),
    );
    // 20 sweep points per quantity, analytic rows carry no trial metadata
    const thm1 = seriesRows(rows, "thm1");
    expect(thm1).toHaveLength(20);
    expect(thm1.every((r) => r.trials === null && r.ciLow === null)).toBe(true);
    const sim = seriesRows(rows, "sim_exact");
    expect(sim.every((r) => r.trials === 2000 && r.seed === 42)).toBe(true);
    expect(sim.every((r) => r.ciLow !== null && r.ciHigh !== null && r.ciLow <= r.value && r.value <= r.ciHigh)).toBe(
      true,
    );
  });
});

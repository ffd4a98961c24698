/**
 * Small deterministic axis scales.  No dependency on a plotting library:
 * figures must hash-compare rerun-to-rerun, so every coordinate and tick
 * is produced by arithmetic we control.
 */

export interface Scale {
  map(v: number): number;
  ticks: number[];
  domain: [number, number];
  range: [number, number];
}

/** Nice step (1/2/5 x 10^k) nearest the raw span/(maxTicks-1) interval. */
function niceStep(span: number, maxTicks: number): number {
  const rough = span / Math.max(1, maxTicks - 1);
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const err = rough / mag;
  // round to the geometrically nearest of 1/2/5/10
  if (err >= Math.sqrt(50)) return mag * 10;
  if (err >= Math.sqrt(10)) return mag * 5;
  if (err >= Math.sqrt(2)) return mag * 2;
  return mag;
}

export function linearScale(domain: [number, number], range: [number, number], maxTicks = 6): Scale {
  let [d0, d1] = domain;
  if (d0 === d1) {
    // Degenerate domain (single sweep point): pad so the point sits mid-axis.
    const pad = d0 === 0 ? 1 : Math.abs(d0) * 0.5;
    d0 -= pad;
    d1 += pad;
  }
  const [r0, r1] = range;
  const k = (r1 - r0) / (d1 - d0);
  const step = niceStep(d1 - d0, maxTicks);
  const ticks: number[] = [];
  const i0 = Math.ceil(d0 / step - 1e-9);
  const i1 = Math.floor(d1 / step + 1e-9);
  for (let i = i0; i <= i1; i++) {
    // i*step carries representation dust (3*0.2 = 0.6000000000000001);
    // 12 significant digits is far past any nice step, so this only
    // strips the dust, never the value.
    ticks.push(Number((i * step).toPrecision(12)));
  }
  return {
    map: (v) => r0 + (v - d0) * k,
    ticks,
    domain: [d0, d1],
    range,
  };
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (!(d0 > 0 && d1 > 0)) {
    throw new RangeError(`log scale needs a positive domain, got [${d0}, ${d1}]`);
  }
  if (d0 === d1) {
    return logScale([d0 / 2, d1 * 2], range);
  }
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const [r0, r1] = range;
  const k = (r1 - r0) / (l1 - l0);
  const ticks: number[] = [];
  for (let e = Math.ceil(l0 - 1e-9); e <= l1 + 1e-9; e++) {
    ticks.push(Math.pow(10, e));
  }
  if (ticks.length < 2) {
    // Domain inside one decade: fall back to linear ticks on the raw values.
    ticks.length = 0;
    ticks.push(...linearScale([d0, d1], range).ticks.filter((t) => t >= d0 && t <= d1));
  }
  return {
    map: (v) => r0 + (Math.log10(v) - l0) * k,
    ticks,
    domain: [d0, d1],
    range,
  };
}

/**
 * Stable tick/legend number formatting: plain decimal in a comfortable
 * window, exponent form outside it, never locale-dependent.
 */
export function formatNumber(v: number): string {
  if (v === 0) {
    return "0";
  }
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) {
    return v.toExponential(2).replace(/\.?0+e/, "e");
  }
  // Up to 6 significant digits, trailing zeros trimmed.
  return Number(v.toPrecision(6)).toString();
}

/** Fixed-point screen coordinate: 2 decimals is sub-pixel for our sizes. */
export function px(v: number): string {
  const r = Math.round(v * 100) / 100;
  // Avoid "-0.00"
  return (Object.is(r, -0) ? 0 : r).toFixed(2);
}

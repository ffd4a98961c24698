/**
 * Figure specifications: which quantity ids a figure draws and how.
 *
 * Preset names line up with the producer's sweep presets so
 * `... run --preset fig5` + `render --preset fig5` compose without a
 * hand-written spec file.  A spec is plain data and can also be loaded
 * from JSON (see cli.ts), so one-off figures don't need a code change.
 */

export type SeriesKind = "line" | "step" | "marker";

export interface SeriesSpec {
  /** quantity id as it appears in the CSV */
  quantity: string;
  label: string;
  kind: SeriesKind;
  color: string;
  /** SVG dash pattern, e.g. "6 3"; omit for solid */
  dash?: string;
}

export interface FigureSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  /** log-scale the x axis (sweep values must be positive) */
  xLog?: boolean;
  series: SeriesSpec[];
}

const BOUND_SERIES: SeriesSpec[] = [
  { quantity: "thm1", label: "free-disk bound", kind: "line", color: "#1f77b4" },
  { quantity: "thm2", label: "free-disk bound (dense)", kind: "line", color: "#1f77b4", dash: "6 3" },
  { quantity: "thm3", label: "multi-region bound", kind: "line", color: "#d62728" },
  { quantity: "thm4", label: "multi-region bound (dense)", kind: "line", color: "#d62728", dash: "6 3" },
  { quantity: "sim_mbfc", label: "sim: free-disk event", kind: "marker", color: "#1f77b4" },
  { quantity: "sim_multiregion", label: "sim: multi-region event", kind: "marker", color: "#d62728" },
  { quantity: "sim_exact", label: "sim: exact connectivity", kind: "marker", color: "#2ca02c" },
];

export const PRESETS: Record<string, FigureSpec> = {
  fig3: {
    title: "Covered-site count vs normalized radius",
    xLabel: "r / sqrt(s)",
    yLabel: "covered sites",
    series: [
      { quantity: "n_minus", label: "lower staircase", kind: "step", color: "#1f77b4" },
      { quantity: "n_plus", label: "upper staircase", kind: "step", color: "#d62728" },
      { quantity: "n_exact", label: "exact count", kind: "marker", color: "#2ca02c" },
      { quantity: "n_asym", label: "asymptotic pi r^2 / s", kind: "line", color: "#7f7f7f", dash: "2 3" },
    ],
  },
  fig5: {
    title: "Connectivity probability vs base-station density",
    xLabel: "lambda_c (1/m^2)",
    yLabel: "P(connected)",
    series: BOUND_SERIES,
  },
  fig6: {
    title: "Connectivity probability vs building occupancy",
    xLabel: "p_b",
    yLabel: "P(connected)",
    series: BOUND_SERIES,
  },
  fig7: {
    title: "Connectivity probability vs site area",
    xLabel: "s (m^2)",
    yLabel: "P(connected)",
    xLog: true,
    series: BOUND_SERIES,
  },
  tiers: {
    title: "Multi-tier connectivity vs number of tiers",
    xLabel: "K (tiers)",
    yLabel: "P(connected)",
    series: [
      { quantity: "hetnet_max", label: "best-tier bound", kind: "line", color: "#1f77b4" },
      { quantity: "hetnet_independent", label: "independent-tier bound", kind: "line", color: "#9467bd", dash: "6 3" },
      { quantity: "hetnet_multiregion", label: "multi-region bound", kind: "line", color: "#d62728" },
      { quantity: "sim_exact_hetnet", label: "sim: any tier connected", kind: "marker", color: "#2ca02c" },
      // Per-tier curves for the first three tiers; denser ladders still
      // emit sim_tier_4.. in the CSV and those ids are reported as skipped.
      { quantity: "sim_tier_1", label: "sim: tier 1", kind: "marker", color: "#8c564b" },
      { quantity: "sim_tier_2", label: "sim: tier 2", kind: "marker", color: "#e377c2" },
      { quantity: "sim_tier_3", label: "sim: tier 3", kind: "marker", color: "#7f7f7f" },
    ],
  },
};

export class SpecError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SpecError";
  }
}

const KINDS: SeriesKind[] = ["line", "step", "marker"];

/** Validate a spec loaded from JSON; returns it typed, throws SpecError. */
export function validateSpec(raw: unknown): FigureSpec {
  if (typeof raw !== "object" || raw === null) {
    throw new SpecError("spec must be a JSON object");
  }
  const o = raw as Record<string, unknown>;
  for (const field of ["title", "xLabel", "yLabel"]) {
    if (typeof o[field] !== "string") {
      throw new SpecError(`spec.${field} must be a string`);
    }
  }
  if (o.xLog !== undefined && typeof o.xLog !== "boolean") {
    throw new SpecError("spec.xLog must be a boolean");
  }
  if (!Array.isArray(o.series) || o.series.length === 0) {
    throw new SpecError("spec.series must be a non-empty array");
  }
  for (const [i, s] of (o.series as unknown[]).entries()) {
    if (typeof s !== "object" || s === null) {
      throw new SpecError(`spec.series[${i}] must be an object`);
    }
    const t = s as Record<string, unknown>;
    for (const field of ["quantity", "label", "color"]) {
      if (typeof t[field] !== "string") {
        throw new SpecError(`spec.series[${i}].${field} must be a string`);
      }
    }
    if (!KINDS.includes(t.kind as SeriesKind)) {
      throw new SpecError(`spec.series[${i}].kind must be one of ${KINDS.join("/")}`);
    }
    if (t.dash !== undefined && typeof t.dash !== "string") {
      throw new SpecError(`spec.series[${i}].dash must be a string`);
    }
  }
  return raw as FigureSpec;
}

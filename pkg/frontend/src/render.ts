/**
 * Deterministic SVG rendering of sweep-result series.
 *
 * The output is a plain string with no timestamps, ids, or environment
 * dependence: rendering the same CSV with the same spec twice must give
 * byte-identical SVG (tests rely on this, and so does diffing committed
 * figures in review).
 */
import { ResultRow, quantities, seriesRows } from "./csv";
import { FigureSpec, SeriesSpec } from "./spec";
import { Scale, linearScale, logScale, formatNumber, px } from "./scale";

export class MissingQuantityError extends Error {
  constructor(quantity: string, available: string[]) {
    super(
      `quantity "${quantity}" required by the figure spec is not in the CSV; ` +
        `available ids: ${available.join(", ")}`,
    );
    this.name = "MissingQuantityError";
  }
}

export interface RenderResult {
  svg: string;
  /** quantity ids actually drawn, in spec order */
  rendered: string[];
  /** ids present in the CSV but not referenced by the spec */
  skipped: string[];
}

const W = 860;
const H = 480;
const MARGIN = { top: 44, right: 210, bottom: 56, left: 72 };
const PLOT_W = W - MARGIN.left - MARGIN.right;
const PLOT_H = H - MARGIN.top - MARGIN.bottom;

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

function linePath(pts: Array<[number, number]>): string {
  return pts.map(([x, y], i) => `${i === 0 ? "M" : "L"}${px(x)} ${px(y)}`).join(" ");
}

function stepPath(pts: Array<[number, number]>): string {
  // step-after: hold each value until the next sample point.
  let d = `M${px(pts[0][0])} ${px(pts[0][1])}`;
  for (let i = 1; i < pts.length; i++) {
    d += ` H${px(pts[i][0])} V${px(pts[i][1])}`;
  }
  return d;
}

function drawSeries(spec: SeriesSpec, rows: ResultRow[], xs: Scale, ys: Scale): string {
  const parts: string[] = [];
  const pts: Array<[number, number]> = rows.map((r) => [xs.map(r.sweepValue), ys.map(r.value)]);
  if (spec.kind === "marker") {
    for (let i = 0; i < rows.length; i++) {
      const r = rows[i];
      const [cx, cy] = pts[i];
      if (r.ciLow !== null && r.ciHigh !== null) {
        const yl = ys.map(r.ciLow);
        const yh = ys.map(r.ciHigh);
        parts.push(
          `<path d="M${px(cx)} ${px(yl)} V${px(yh)} M${px(cx - 3)} ${px(yl)} H${px(cx + 3)} ` +
            `M${px(cx - 3)} ${px(yh)} H${px(cx + 3)}" stroke="${spec.color}" stroke-width="1" fill="none"/>`,
        );
      }
      parts.push(`<circle cx="${px(cx)}" cy="${px(cy)}" r="3.5" fill="${spec.color}"/>`);
    }
  } else {
    const d = spec.kind === "step" ? stepPath(pts) : linePath(pts);
    const dash = spec.dash ? ` stroke-dasharray="${spec.dash}"` : "";
    parts.push(`<path d="${d}" stroke="${spec.color}" stroke-width="1.8" fill="none"${dash}/>`);
  }
  return parts.join("\n");
}

function drawAxes(spec: FigureSpec, xs: Scale, ys: Scale): string {
  const parts: string[] = [];
  const x0 = MARGIN.left;
  const x1 = MARGIN.left + PLOT_W;
  const y0 = MARGIN.top + PLOT_H;
  const y1 = MARGIN.top;
  // Gridlines first so data draws over them.
  for (const t of xs.ticks) {
    const x = xs.map(t);
    parts.push(`<line x1="${px(x)}" y1="${px(y0)}" x2="${px(x)}" y2="${px(y1)}" stroke="#e0e0e0" stroke-width="1"/>`);
  }
  for (const t of ys.ticks) {
    const y = ys.map(t);
    parts.push(`<line x1="${px(x0)}" y1="${px(y)}" x2="${px(x1)}" y2="${px(y)}" stroke="#e0e0e0" stroke-width="1"/>`);
  }
  parts.push(`<line x1="${px(x0)}" y1="${px(y0)}" x2="${px(x1)}" y2="${px(y0)}" stroke="#333" stroke-width="1.2"/>`);
  parts.push(`<line x1="${px(x0)}" y1="${px(y0)}" x2="${px(x0)}" y2="${px(y1)}" stroke="#333" stroke-width="1.2"/>`);
  for (const t of xs.ticks) {
    const x = xs.map(t);
    parts.push(`<line x1="${px(x)}" y1="${px(y0)}" x2="${px(x)}" y2="${px(y0 + 5)}" stroke="#333" stroke-width="1"/>`);
    parts.push(
      `<text x="${px(x)}" y="${px(y0 + 18)}" font-size="11" text-anchor="middle" fill="#333">${esc(formatNumber(t))}</text>`,
    );
  }
  for (const t of ys.ticks) {
    const y = ys.map(t);
    parts.push(`<line x1="${px(x0 - 5)}" y1="${px(y)}" x2="${px(x0)}" y2="${px(y)}" stroke="#333" stroke-width="1"/>`);
    parts.push(
      `<text x="${px(x0 - 8)}" y="${px(y + 3.5)}" font-size="11" text-anchor="end" fill="#333">${esc(formatNumber(t))}</text>`,
    );
  }
  parts.push(
    `<text x="${px(x0 + PLOT_W / 2)}" y="${px(y0 + 40)}" font-size="13" text-anchor="middle" fill="#111">${esc(spec.xLabel)}</text>`,
  );
  parts.push(
    `<text x="18" y="${px(y1 + PLOT_H / 2)}" font-size="13" text-anchor="middle" fill="#111" ` +
      `transform="rotate(-90 18 ${px(y1 + PLOT_H / 2)})">${esc(spec.yLabel)}</text>`,
  );
  parts.push(
    `<text x="${px(x0 + PLOT_W / 2)}" y="26" font-size="15" text-anchor="middle" fill="#111">${esc(spec.title)}</text>`,
  );
  return parts.join("\n");
}

function drawLegend(series: SeriesSpec[]): string {
  const parts: string[] = [];
  const x = MARGIN.left + PLOT_W + 16;
  let y = MARGIN.top + 8;
  for (const s of series) {
    if (s.kind === "marker") {
      parts.push(`<circle cx="${px(x + 11)}" cy="${px(y)}" r="3.5" fill="${s.color}"/>`);
    } else {
      const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
      parts.push(
        `<line x1="${px(x)}" y1="${px(y)}" x2="${px(x + 22)}" y2="${px(y)}" stroke="${s.color}" stroke-width="1.8"${dash}/>`,
      );
    }
    parts.push(`<text x="${px(x + 28)}" y="${px(y + 3.5)}" font-size="11" fill="#333">${esc(s.label)}</text>`);
    y += 18;
  }
  return parts.join("\n");
}

export function renderFigure(rows: ResultRow[], spec: FigureSpec): RenderResult {
  const available = quantities(rows);
  const wanted = new Set(spec.series.map((s) => s.quantity));
  const perSeries: Array<[SeriesSpec, ResultRow[]]> = [];
  for (const s of spec.series) {
    const sr = seriesRows(rows, s.quantity);
    if (sr.length === 0) {
      throw new MissingQuantityError(s.quantity, available);
    }
    perSeries.push([s, sr]);
  }
  const skipped = available.filter((q) => !wanted.has(q));

  const used = perSeries.flatMap(([, sr]) => sr);
  let xMin = Infinity;
  let xMax = -Infinity;
  let yMax = -Infinity;
  for (const r of used) {
    xMin = Math.min(xMin, r.sweepValue);
    xMax = Math.max(xMax, r.sweepValue);
    yMax = Math.max(yMax, r.value, r.ciHigh ?? -Infinity);
  }
  const xRange: [number, number] = [MARGIN.left, MARGIN.left + PLOT_W];
  const yRange: [number, number] = [MARGIN.top + PLOT_H, MARGIN.top]; // y grows downward in SVG
  const xs = spec.xLog ? logScale([xMin, xMax], xRange) : linearScale([xMin, xMax], xRange);
  const ys = linearScale([0, yMax <= 0 ? 1 : yMax * 1.05], yRange);

  const body = [
    `<rect x="0" y="0" width="${W}" height="${H}" fill="#ffffff"/>`,
    drawAxes(spec, xs, ys),
    ...perSeries.map(([s, sr]) => drawSeries(s, sr, xs, ys)),
    drawLegend(spec.series),
  ].join("\n");
  const svg =
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" width="${W}" height="${H}" ` +
    `font-family="Helvetica, Arial, sans-serif">\n${body}\n</svg>\n`;
  return { svg, rendered: spec.series.map((s) => s.quantity), skipped };
}

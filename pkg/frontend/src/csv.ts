/**
 * Reader for the sweep-result CSV interface.
 *
 * The producer writes one row per (sweep point, quantity) with the fixed
 * header below.  Analytic quantities leave ci_low/ci_high/trials/seed empty;
 * simulated quantities fill all four.  We validate the header verbatim rather
 * than by field count so schema drift fails loudly instead of mis-mapping
 * columns.
 */
import Papa from "papaparse";

export const HEADER = [
  "sweep_param",
  "sweep_value",
  "quantity",
  "value",
  "ci_low",
  "ci_high",
  "trials",
  "seed",
] as const;

export interface ResultRow {
  sweepParam: string;
  sweepValue: number;
  quantity: string;
  value: number;
  /** null for analytic rows */
  ciLow: number | null;
  ciHigh: number | null;
  trials: number | null;
  seed: number | null;
}

export class CsvFormatError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "CsvFormatError";
  }
}

function num(field: string, raw: string, line: number): number {
  const v = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(v)) {
    throw new CsvFormatError(`line ${line}: ${field} is not a finite number: ${JSON.stringify(raw)}`);
  }
  return v;
}

function optNum(field: string, raw: string, line: number): number | null {
  return raw === "" ? null : num(field, raw, line);
}

export function parseResults(text: string): ResultRow[] {
  if (text.trim() === "") {
    // papaparse reports blank input as a delimiter-detection failure;
    // say what actually happened instead.
    throw new CsvFormatError("empty CSV: no header row");
  }
  const parsed = Papa.parse<string[]>(text, { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new CsvFormatError(`CSV parse error${e.row !== undefined ? ` at row ${e.row}` : ""}: ${e.message}`);
  }
  const raw = parsed.data;
  if (raw.length === 0) {
    throw new CsvFormatError("empty CSV: no header row");
  }
  const header = raw[0].join(",");
  const expected = HEADER.join(",");
  if (header !== expected) {
    throw new CsvFormatError(`unexpected header ${JSON.stringify(header)}; expected ${JSON.stringify(expected)}`);
  }
  if (raw.length === 1) {
    throw new CsvFormatError("empty CSV: header present but no data rows");
  }
  const rows: ResultRow[] = [];
  for (let i = 1; i < raw.length; i++) {
    const r = raw[i];
    const line = i + 1;
    if (r.length !== HEADER.length) {
      throw new CsvFormatError(`line ${line}: expected ${HEADER.length} fields, got ${r.length}`);
    }
    const ciLow = optNum("ci_low", r[4], line);
    const ciHigh = optNum("ci_high", r[5], line);
    if ((ciLow === null) !== (ciHigh === null)) {
      throw new CsvFormatError(`line ${line}: ci_low/ci_high must be both empty or both set`);
    }
    rows.push({
      sweepParam: r[0],
      sweepValue: num("sweep_value", r[1], line),
      quantity: r[2],
      value: num("value", r[3], line),
      ciLow,
      ciHigh,
      trials: optNum("trials", r[6], line),
      seed: optNum("seed", r[7], line),
    });
  }
  return rows;
}

/** Distinct quantity ids in first-appearance order. */
export function quantities(rows: ResultRow[]): string[] {
  const seen = new Set<string>();
  const out: string[] = [];
  for (const r of rows) {
    if (!seen.has(r.quantity)) {
      seen.add(r.quantity);
      out.push(r.quantity);
    }
  }
  return out;
}

/** Rows for one quantity, sorted by sweep value (stable for ties). */
export function seriesRows(rows: ResultRow[], quantity: string): ResultRow[] {
  return rows
    .filter((r) => r.quantity === quantity)
    .sort((a, b) => a.sweepValue - b.sweepValue);
}

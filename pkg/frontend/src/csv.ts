/**
 * Reader for the scan CSVs emitted by the cluster-decay CLI.
 *
 * Expected layout: a `# params:` comment line, a header row, then numeric
 * rows. Values are kept both as numbers (for scaling) and as the original
 * strings (so rendered output can carry the untouched CSV values).
 */

import { readFileSync } from "node:fs";

export interface CsvTable {
  path: string;
  params: string;
  columns: string[];
  /** column name -> numeric values */
  values: Map<string, number[]>;
  /** column name -> raw cell strings, exactly as stored in the file */
  raw: Map<string, string[]>;
  rowCount: number;
}

export class CsvError extends Error {}

export function readCsv(path: string): CsvTable {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch {
    throw new CsvError(`input CSV not found: ${path}`);
  }
  const lines = text.split("\n").filter((line) => line.length > 0);
  let idx = 0;
  let params = "";
  if (idx < lines.length && lines[idx].startsWith("#")) {
    params = lines[idx].replace(/^#\s*params:\s*/, "");
    idx += 1;
  }
  if (idx >= lines.length) {
    throw new CsvError(`CSV has no header row: ${path}`);
  }
  const columns = lines[idx].split(",").map((c) => c.trim());
  idx += 1;
  const body = lines.slice(idx);
  if (body.length === 0) {
    throw new CsvError(`CSV has no data rows: ${path}`);
  }
  const values = new Map<string, number[]>(columns.map((c) => [c, []]));
  const raw = new Map<string, string[]>(columns.map((c) => [c, []]));
  for (const line of body) {
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new CsvError(
        `CSV row has ${cells.length} cells, expected ${columns.length}: ${path}`,
      );
    }
    columns.forEach((col, k) => {
      const num = Number(cells[k]);
      if (!Number.isFinite(num)) {
        throw new CsvError(`non-numeric cell in column '${col}': ${path}`);
      }
      values.get(col)!.push(num);
      raw.get(col)!.push(cells[k]);
    });
  }
  return { path, params, columns, values, raw, rowCount: body.length };
}

export function requireColumns(table: CsvTable, needed: string[]): void {
  for (const col of needed) {
    if (!table.columns.includes(col)) {
      throw new CsvError(
        `CSV ${table.path} is missing required column '${col}' ` +
          `(has: ${table.columns.join(", ")})`,
      );
    }
  }
}

/** Distinct values of a column, in first-appearance order. */
export function distinctValues(table: CsvTable, column: string): number[] {
  requireColumns(table, [column]);
  const seen = new Set<number>();
  const out: number[] = [];
  for (const v of table.values.get(column)!) {
    if (!seen.has(v)) {
      seen.add(v);
      out.push(v);
    }
  }
  return out;
}

export interface SeriesData {
  /** numeric values for scaling */
  x: number[];
  y: number[];
  /** untouched CSV strings, same order */
  rawX: string[];
  rawY: string[];
}

/** Extract (x, y) pairs, optionally keeping only rows where `filter` matches. */
export function extractSeries(
  table: CsvTable,
  xCol: string,
  yCol: string,
  filter?: { column: string; equals: number },
): SeriesData {
  requireColumns(table, filter ? [xCol, yCol, filter.column] : [xCol, yCol]);
  const xs = table.values.get(xCol)!;
  const ys = table.values.get(yCol)!;
  const rawXs = table.raw.get(xCol)!;
  const rawYs = table.raw.get(yCol)!;
  const keep = filter
    ? table.values.get(filter.column)!.map((v) => v === filter.equals)
    : xs.map(() => true);
  const out: SeriesData = { x: [], y: [], rawX: [], rawY: [] };
  keep.forEach((flag, i) => {
    if (flag) {
      out.x.push(xs[i]);
      out.y.push(ys[i]);
      out.rawX.push(rawXs[i]);
      out.rawY.push(rawYs[i]);
    }
  });
  if (out.x.length === 0) {
    throw new CsvError(
      `no rows selected from ${table.path}` +
        (filter ? ` with ${filter.column} = ${filter.equals}` : ""),
    );
  }
  return out;
}

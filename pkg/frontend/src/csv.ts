/**
 * Readers for the rate-computation CSV contract.
 *
 * The inputs are machine generated: comma separated, no quoting, numeric
 * cells (possibly empty for infeasible rows).  Column order is fixed by
 * the producer but we look columns up by header name and complain loudly
 * when one is missing.
 */

import * as fs from "fs";

export class CsvFormatError extends Error {}

export interface Table {
  header: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvFormatError("empty CSV: no header row");
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((line) => line.split(","));
  return { header, rows };
}

export function readTable(path: string): Table {
  if (!fs.existsSync(path)) {
    throw new CsvFormatError(`input CSV not found: ${path}`);
  }
  return parseCsv(fs.readFileSync(path, "utf8"));
}

function columnIndex(table: Table, name: string, path: string): number {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new CsvFormatError(`${path}: missing required column '${name}'`);
  }
  return idx;
}

export interface Corner {
  r1: number;
  r2: number;
}

/** Frontier corners per scheme, in file order (r1 ascending). */
export function readFrontiers(path: string): Map<string, Corner[]> {
  const table = readTable(path);
  const iScheme = columnIndex(table, "scheme", path);
  const iR1 = columnIndex(table, "corner_r1", path);
  const iR2 = columnIndex(table, "corner_r2", path);
  const out = new Map<string, Corner[]>();
  for (const row of table.rows) {
    const r1 = Number(row[iR1]);
    const r2 = Number(row[iR2]);
    if (!Number.isFinite(r1) || !Number.isFinite(r2)) {
      throw new CsvFormatError(`${path}: non-numeric corner in row [${row.join(",")}]`);
    }
    const scheme = row[iScheme];
    if (!out.has(scheme)) {
      out.set(scheme, []);
    }
    out.get(scheme)!.push({ r1, r2 });
  }
  return out;
}

export interface SumRatePoint {
  param: number;
  sum: number;
}

/** Sum-rate curves per scheme; rows with an empty sum_rate cell are skipped. */
export function readSumRates(path: string): Map<string, SumRatePoint[]> {
  const table = readTable(path);
  const iParam = columnIndex(table, "param", path);
  const iScheme = columnIndex(table, "scheme", path);
  const iSum = columnIndex(table, "sum_rate", path);
  const out = new Map<string, SumRatePoint[]>();
  for (const row of table.rows) {
    if (row[iSum] === "") {
      continue;
    }
    const param = Number(row[iParam]);
    const sum = Number(row[iSum]);
    if (!Number.isFinite(param) || !Number.isFinite(sum)) {
      throw new CsvFormatError(`${path}: non-numeric value in row [${row.join(",")}]`);
    }
    const scheme = row[iScheme];
    if (!out.has(scheme)) {
      out.set(scheme, []);
    }
    out.get(scheme)!.push({ param, sum });
  }
  return out;
}

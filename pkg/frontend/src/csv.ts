/**
 * Reader for the omegasum CLI checkpoint CSVs.
 *
 * Schema: header `x,value,normalized` with an optional trailing `u`
 * (u = log x) column; one data row per checkpoint.
 */

import { readFileSync } from "node:fs";

export interface CsvRow {
  x: number;
  value: number;
  normalized: number;
  u?: number;
}

export class CsvSchemaError extends Error {}

/** Parse CSV text in the CLI checkpoint schema. */
export function parseCsv(text: string): CsvRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvSchemaError("empty CSV");
  }
  const header = lines[0].split(",");
  const expected = ["x", "value", "normalized"];
  if (
    header.length < 3 ||
    !expected.every((name, i) => header[i] === name) ||
    (header.length === 4 && header[3] !== "u") ||
    header.length > 4
  ) {
    throw new CsvSchemaError(`unexpected header: ${lines[0]}`);
  }
  if (lines.length === 1) {
    throw new CsvSchemaError("CSV has a header but no data rows");
  }
  const hasU = header.length === 4;
  const rows: CsvRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== header.length) {
      throw new CsvSchemaError(`row ${i + 1} has ${parts.length} fields`);
    }
    const row: CsvRow = {
      x: Number(parts[0]),
      value: Number(parts[1]),
      normalized: Number(parts[2]),
    };
    if (hasU) {
      row.u = Number(parts[3]);
    }
    if (!Number.isFinite(row.x) || !Number.isFinite(row.normalized)) {
      throw new CsvSchemaError(`row ${i + 1} is not numeric`);
    }
    rows.push(row);
  }
  return rows;
}

/** Load and parse one CLI CSV file. */
export function loadCsv(path: string): CsvRow[] {
  return parseCsv(readFileSync(path, "utf8"));
}

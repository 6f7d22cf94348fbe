/** Parsing and validation of the sweep-harness CSV schema. */

import { readFileSync } from "fs";

export const EXPECTED_COLUMNS = [
  "snr_db",
  "mean_rate_bits",
  "std_error",
  "trials",
] as const;

export interface RatePoint {
  snrDb: number;
  meanRateBits: number;
  stdError: number;
  trials: number;
}

export class CsvSchemaError extends Error {}

export function parseRateCsv(text: string, source: string): RatePoint[] {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new CsvSchemaError(`${source}: empty CSV (no header)`);
  }
  const header = lines[0].split(",").map((c) => c.trim());
  for (let i = 0; i < EXPECTED_COLUMNS.length; i++) {
    if (header[i] !== EXPECTED_COLUMNS[i]) {
      throw new CsvSchemaError(
        `${source}: expected column ${i + 1} to be "${EXPECTED_COLUMNS[i]}", ` +
          `found "${header[i] ?? "(missing)"}"`,
      );
    }
  }
  if (header.length > EXPECTED_COLUMNS.length) {
    throw new CsvSchemaError(
      `${source}: unexpected extra column "${header[EXPECTED_COLUMNS.length]}"`,
    );
  }
  const points: RatePoint[] = [];
  for (let row = 1; row < lines.length; row++) {
    const cols = lines[row].split(",");
    if (cols.length !== EXPECTED_COLUMNS.length) {
      throw new CsvSchemaError(
        `${source}: row ${row + 1} has ${cols.length} fields, want 4`,
      );
    }
    const nums = cols.map((c) => Number(c));
    const bad = nums.findIndex((v) => !Number.isFinite(v));
    if (bad >= 0) {
      throw new CsvSchemaError(
        `${source}: row ${row + 1}, column "${EXPECTED_COLUMNS[bad]}" is not ` +
          `numeric: "${cols[bad]}"`,
      );
    }
    points.push({
      snrDb: nums[0],
      meanRateBits: nums[1],
      stdError: nums[2],
      trials: nums[3],
    });
  }
  if (points.length === 0) {
    throw new CsvSchemaError(`${source}: empty CSV (header but no data rows)`);
  }
  return points;
}

export function readRateCsv(path: string): RatePoint[] {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new CsvSchemaError(`${path}: ${(err as Error).message}`);
  }
  return parseRateCsv(text, path);
}

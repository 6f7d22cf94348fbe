import { describe, expect, it } from "vitest";

import { CsvSchemaError, parseRateCsv } from "../src/csv.js";

const GOOD = `snr_db,mean_rate_bits,std_error,trials
0,0.811159737,0.00288443418,2000
10,1.33001077,0.00438336,2000
`;

describe("parseRateCsv", () => {
  it("parses the harness schema", () => {
    const pts = parseRateCsv(GOOD, "good.csv");
    expect(pts).toHaveLength(2);
    expect(pts[0].snrDb).toBe(0);
    expect(pts[1].meanRateBits).toBeCloseTo(1.33001077, 8);
    expect(pts[1].trials).toBe(2000);
  });

  it("names the offending column on header mismatch", () => {
    const bad = GOOD.replace("std_error", "stderr");
    expect(() => parseRateCsv(bad, "bad.csv")).toThrowError(CsvSchemaError);
    expect(() => parseRateCsv(bad, "bad.csv")).toThrowError(/std_error/);
    expect(() => parseRateCsv(bad, "bad.csv")).toThrowError(/stderr/);
  });

  it("rejects extra columns", () => {
    const extra = GOOD.replace("trials", "trials,notes").replace(
      /2000/g,
      "2000,x",
    );
    expect(() => parseRateCsv(extra, "extra.csv")).toThrowError(/extra column/);
  });

  it("names the file for empty input", () => {
    expect(() => parseRateCsv("", "void.csv")).toThrowError(/void\.csv/);
    const headerOnly = GOOD.split("\n")[0] + "\n";
    expect(() => parseRateCsv(headerOnly, "hdr.csv")).toThrowError(
      /no data rows/,
    );
  });

  it("names the column for non-numeric cells", () => {
    const bad = GOOD.replace("1.33001077", "fast");
    expect(() => parseRateCsv(bad, "nn.csv")).toThrowError(
      /mean_rate_bits.*fast/,
    );
  });
});

/** Figure regeneration: one line per input CSV, error bars, fixed axes. */

import { readFileSync, writeFileSync } from "fs";

import { Curve, layoutChart, PALETTE } from "./chart.js";
import { CsvSchemaError, readRateCsv } from "./csv.js";
import { encodePng, rasterizeChart } from "./png.js";
import { renderSvg } from "./svg.js";

export const Y_LABEL = "rate (bits/channel use)";
export const X_LABEL = "SNR (dB)";

export interface PlotInput {
  path: string;
  label: string;
}

export interface PlotSpec {
  inputCsvs: PlotInput[];
  title: string;
  outputPath: string;
}

export class SpecError extends Error {}

export function parseSpec(doc: unknown, source: string): PlotSpec {
  if (typeof doc !== "object" || doc === null) {
    throw new SpecError(`${source}: spec must be a JSON object`);
  }
  const obj = doc as Record<string, unknown>;
  const inputs = obj["input_csvs"];
  if (!Array.isArray(inputs) || inputs.length === 0) {
    throw new SpecError(`${source}: "input_csvs" must be a non-empty array`);
  }
  const inputCsvs = inputs.map((entry, i) => {
    const e = entry as Record<string, unknown>;
    if (typeof e?.["path"] !== "string" || typeof e?.["label"] !== "string") {
      throw new SpecError(
        `${source}: input_csvs[${i}] needs string "path" and "label"`,
      );
    }
    return { path: e["path"], label: e["label"] };
  });
  if (typeof obj["title"] !== "string") {
    throw new SpecError(`${source}: "title" must be a string`);
  }
  if (typeof obj["output_path"] !== "string") {
    throw new SpecError(`${source}: "output_path" must be a string`);
  }
  return { inputCsvs, title: obj["title"], outputPath: obj["output_path"] };
}

export function loadSpec(path: string): PlotSpec {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new SpecError(`${path}: ${(err as Error).message}`);
  }
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new SpecError(`${path}: invalid JSON: ${(err as Error).message}`);
  }
  return parseSpec(doc, path);
}

export interface RenderResult {
  rasterPath: string;
  vectorPath: string;
  svg: string;
  png: Buffer;
}

function outputPaths(outputPath: string): { raster: string; vector: string } {
  if (outputPath.endsWith(".svg")) {
    return {
      vector: outputPath,
      raster: outputPath.slice(0, -4) + ".png",
    };
  }
  const dot = outputPath.lastIndexOf(".");
  const stem = dot > 0 ? outputPath.slice(0, dot) : outputPath;
  return { raster: dot > 0 ? outputPath : outputPath + ".png", vector: stem + ".svg" };
}

/** Render the figure; a pure function of the CSV bytes and the spec. */
export function render(spec: PlotSpec): RenderResult {
  const curves: Curve[] = spec.inputCsvs.map((input, i) => ({
    label: input.label,
    color: PALETTE[i % PALETTE.length],
    points: readRateCsv(input.path),
  }));
  const layout = layoutChart(curves);
  const svg = renderSvg(layout, spec.title, X_LABEL, Y_LABEL);
  const png = encodePng(rasterizeChart(layout));
  const paths = outputPaths(spec.outputPath);
  writeFileSync(paths.raster, png);
  writeFileSync(paths.vector, svg, "utf-8");
  return { rasterPath: paths.raster, vectorPath: paths.vector, svg, png };
}

export { CsvSchemaError };

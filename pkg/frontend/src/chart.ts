/** Geometry for a rate-vs-SNR line chart: scales, ticks, pixel paths. */

import type { RatePoint } from "./csv.js";

export const WIDTH = 760;
export const HEIGHT = 480;
export const MARGIN = { left: 64, right: 20, top: 40, bottom: 48 };

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

export interface Curve {
  label: string;
  color: string;
  points: RatePoint[];
}

export interface ErrorBar {
  x: number;
  yLow: number;
  yHigh: number;
}

export interface CurveLayout {
  label: string;
  color: string;
  path: { x: number; y: number }[];
  errorBars: ErrorBar[];
}

export interface ChartLayout {
  width: number;
  height: number;
  plot: { x0: number; y0: number; x1: number; y1: number };
  xTicks: { pos: number; value: number }[];
  yTicks: { pos: number; value: number }[];
  curves: CurveLayout[];
}

function niceStep(span: number, target: number): number {
  const raw = span / Math.max(target, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const m of [1, 2, 5, 10]) {
    if (raw <= m * mag) return m * mag;
  }
  return 10 * mag;
}

function ticks(lo: number, hi: number, target: number): number[] {
  if (!(hi > lo)) return [lo];
  const step = niceStep(hi - lo, target);
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function layoutChart(curves: Curve[]): ChartLayout {
  const all = curves.flatMap((c) => c.points);
  let xLo = Math.min(...all.map((p) => p.snrDb));
  let xHi = Math.max(...all.map((p) => p.snrDb));
  let yLo = Math.min(...all.map((p) => p.meanRateBits - p.stdError));
  let yHi = Math.max(...all.map((p) => p.meanRateBits + p.stdError));
  if (xHi === xLo) {
    xLo -= 1;
    xHi += 1;
  }
  const pad = (yHi - yLo || 1) * 0.05;
  yLo = Math.min(yLo - pad, 0);
  yHi += pad;

  const plot = {
    x0: MARGIN.left,
    y0: MARGIN.top,
    x1: WIDTH - MARGIN.right,
    y1: HEIGHT - MARGIN.bottom,
  };
  const sx = (v: number) =>
    plot.x0 + ((v - xLo) / (xHi - xLo)) * (plot.x1 - plot.x0);
  const sy = (v: number) =>
    plot.y1 - ((v - yLo) / (yHi - yLo)) * (plot.y1 - plot.y0);

  return {
    width: WIDTH,
    height: HEIGHT,
    plot,
    xTicks: ticks(xLo, xHi, 6).map((v) => ({ pos: sx(v), value: v })),
    yTicks: ticks(yLo, yHi, 6).map((v) => ({ pos: sy(v), value: v })),
    curves: curves.map((c) => ({
      label: c.label,
      color: c.color,
      path: c.points.map((p) => ({ x: sx(p.snrDb), y: sy(p.meanRateBits) })),
      errorBars: c.points
        .filter((p) => p.stdError > 0)
        .map((p) => ({
          x: sx(p.snrDb),
          yLow: sy(p.meanRateBits - p.stdError),
          yHigh: sy(p.meanRateBits + p.stdError),
        })),
    })),
  };
}

export function formatTick(v: number): string {
  const rounded = Math.round(v * 1e6) / 1e6;
  return Object.is(rounded, -0) ? "0" : String(rounded);
}

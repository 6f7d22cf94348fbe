/** Deterministic SVG rendering of a chart layout. */

import { ChartLayout, formatTick } from "./chart.js";

const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function num(v: number): string {
  return (Math.round(v * 100) / 100).toString();
}

export function renderSvg(
  layout: ChartLayout,
  title: string,
  xLabel: string,
  yLabel: string,
): string {
  const { plot } = layout;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${layout.width}" ` +
      `height="${layout.height}" viewBox="0 0 ${layout.width} ${layout.height}">`,
  );
  parts.push(`<rect width="100%" height="100%" fill="white"/>`);
  parts.push(
    `<text x="${layout.width / 2}" y="24" text-anchor="middle" ` +
      `font-size="16" ${FONT}>${esc(title)}</text>`,
  );

  for (const t of layout.yTicks) {
    parts.push(
      `<line x1="${num(plot.x0)}" y1="${num(t.pos)}" x2="${num(plot.x1)}" ` +
        `y2="${num(t.pos)}" stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${num(plot.x0 - 8)}" y="${num(t.pos + 4)}" text-anchor="end" ` +
        `font-size="11" ${FONT}>${formatTick(t.value)}</text>`,
    );
  }
  for (const t of layout.xTicks) {
    parts.push(
      `<line x1="${num(t.pos)}" y1="${num(plot.y1)}" x2="${num(t.pos)}" ` +
        `y2="${num(plot.y1 + 5)}" stroke="#333333" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${num(t.pos)}" y="${num(plot.y1 + 18)}" text-anchor="middle" ` +
        `font-size="11" ${FONT}>${formatTick(t.value)}</text>`,
    );
  }
  parts.push(
    `<rect x="${num(plot.x0)}" y="${num(plot.y0)}" ` +
      `width="${num(plot.x1 - plot.x0)}" height="${num(plot.y1 - plot.y0)}" ` +
      `fill="none" stroke="#333333" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${num((plot.x0 + plot.x1) / 2)}" y="${num(plot.y1 + 36)}" ` +
      `text-anchor="middle" font-size="13" ${FONT}>${esc(xLabel)}</text>`,
  );
  parts.push(
    `<text x="16" y="${num((plot.y0 + plot.y1) / 2)}" text-anchor="middle" ` +
      `font-size="13" ${FONT} transform="rotate(-90 16 ` +
      `${num((plot.y0 + plot.y1) / 2)})">${esc(yLabel)}</text>`,
  );

  for (const curve of layout.curves) {
    for (const bar of curve.errorBars) {
      parts.push(
        `<line x1="${num(bar.x)}" y1="${num(bar.yLow)}" x2="${num(bar.x)}" ` +
          `y2="${num(bar.yHigh)}" stroke="${curve.color}" stroke-width="1"/>`,
      );
      for (const y of [bar.yLow, bar.yHigh]) {
        parts.push(
          `<line x1="${num(bar.x - 3)}" y1="${num(y)}" x2="${num(bar.x + 3)}" ` +
            `y2="${num(y)}" stroke="${curve.color}" stroke-width="1"/>`,
        );
      }
    }
    const pts = curve.path.map((p) => `${num(p.x)},${num(p.y)}`).join(" ");
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="${curve.color}" ` +
        `stroke-width="2"/>`,
    );
    for (const p of curve.path) {
      parts.push(
        `<circle cx="${num(p.x)}" cy="${num(p.y)}" r="2.5" ` +
          `fill="${curve.color}"/>`,
      );
    }
  }

  const legendX = plot.x0 + 12;
  let legendY = plot.y0 + 16;
  for (const curve of layout.curves) {
    parts.push(
      `<line x1="${num(legendX)}" y1="${num(legendY - 4)}" ` +
        `x2="${num(legendX + 24)}" y2="${num(legendY - 4)}" ` +
        `stroke="${curve.color}" stroke-width="2"/>`,
    );
    parts.push(
      `<text x="${num(legendX + 30)}" y="${num(legendY)}" font-size="12" ` +
        `${FONT}>${esc(curve.label)}</text>`,
    );
    legendY += 18;
  }

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

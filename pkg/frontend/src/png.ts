/** Minimal raster rendering: RGBA canvas with a built-in PNG encoder.
 *
 * The raster mirrors the vector output's geometry (axes, curves, error
 * bars, legend swatches); text lives only in the SVG, which keeps this
 * encoder font-free.
 */

import { deflateSync } from "zlib";

import { ChartLayout } from "./chart.js";

export class Canvas {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 4).fill(255);
  }

  set(x: number, y: number, rgb: [number, number, number]): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.width || yi >= this.height) return;
    const off = (yi * this.width + xi) * 4;
    this.data[off] = rgb[0];
    this.data[off + 1] = rgb[1];
    this.data[off + 2] = rgb[2];
    this.data[off + 3] = 255;
  }

  line(
    x0: number,
    y0: number,
    x1: number,
    y1: number,
    rgb: [number, number, number],
    thick = 1,
  ): void {
    let xa = Math.round(x0);
    let ya = Math.round(y0);
    const xb = Math.round(x1);
    const yb = Math.round(y1);
    const dx = Math.abs(xb - xa);
    const dy = -Math.abs(yb - ya);
    const sx = xa < xb ? 1 : -1;
    const sy = ya < yb ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      for (let ox = 0; ox < thick; ox++) {
        for (let oy = 0; oy < thick; oy++) {
          this.set(xa + ox, ya + oy, rgb);
        }
      }
      if (xa === xb && ya === yb) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        xa += sx;
      }
      if (e2 <= dx) {
        err += dx;
        ya += sy;
      }
    }
  }

  disc(x: number, y: number, r: number, rgb: [number, number, number]): void {
    for (let ox = -r; ox <= r; ox++) {
      for (let oy = -r; oy <= r; oy++) {
        if (ox * ox + oy * oy <= r * r) this.set(x + ox, y + oy, rgb);
      }
    }
  }
}

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(buf: Uint8Array): number {
  let c = 0xffffffff;
  for (const b of buf) {
    c = CRC_TABLE[(c ^ b) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, payload: Uint8Array): Buffer {
  const head = Buffer.alloc(8);
  head.writeUInt32BE(payload.length, 0);
  head.write(type, 4, "ascii");
  const body = Buffer.concat([Buffer.from(type, "ascii"), payload]);
  const tail = Buffer.alloc(4);
  tail.writeUInt32BE(crc32(body), 0);
  return Buffer.concat([head, payload, tail]);
}

export function encodePng(canvas: Canvas): Buffer {
  const { width, height, data } = canvas;
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 6; // RGBA
  const raw = Buffer.alloc(height * (1 + width * 4));
  for (let y = 0; y < height; y++) {
    const rowStart = y * (1 + width * 4);
    raw[rowStart] = 0; // no filter
    raw.set(
      data.subarray(y * width * 4, (y + 1) * width * 4),
      rowStart + 1,
    );
  }
  return Buffer.concat([
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", deflateSync(raw, { level: 9 })),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

function hexToRgb(hex: string): [number, number, number] {
  return [
    parseInt(hex.slice(1, 3), 16),
    parseInt(hex.slice(3, 5), 16),
    parseInt(hex.slice(5, 7), 16),
  ];
}

export function rasterizeChart(layout: ChartLayout): Canvas {
  const canvas = new Canvas(layout.width, layout.height);
  const axis: [number, number, number] = [51, 51, 51];
  const grid: [number, number, number] = [221, 221, 221];
  const { plot } = layout;
  for (const t of layout.yTicks) {
    canvas.line(plot.x0, t.pos, plot.x1, t.pos, grid);
  }
  for (const t of layout.xTicks) {
    canvas.line(t.pos, plot.y1, t.pos, plot.y1 + 5, axis);
  }
  canvas.line(plot.x0, plot.y0, plot.x1, plot.y0, axis);
  canvas.line(plot.x0, plot.y1, plot.x1, plot.y1, axis);
  canvas.line(plot.x0, plot.y0, plot.x0, plot.y1, axis);
  canvas.line(plot.x1, plot.y0, plot.x1, plot.y1, axis);

  let legendY = plot.y0 + 12;
  for (const curve of layout.curves) {
    const rgb = hexToRgb(curve.color);
    for (const bar of curve.errorBars) {
      canvas.line(bar.x, bar.yLow, bar.x, bar.yHigh, rgb);
      canvas.line(bar.x - 3, bar.yLow, bar.x + 3, bar.yLow, rgb);
      canvas.line(bar.x - 3, bar.yHigh, bar.x + 3, bar.yHigh, rgb);
    }
    for (let i = 0; i + 1 < curve.path.length; i++) {
      canvas.line(
        curve.path[i].x,
        curve.path[i].y,
        curve.path[i + 1].x,
        curve.path[i + 1].y,
        rgb,
        2,
      );
    }
    for (const p of curve.path) {
      canvas.disc(Math.round(p.x), Math.round(p.y), 2, rgb);
    }
    canvas.line(plot.x0 + 12, legendY, plot.x0 + 36, legendY, rgb, 2);
    legendY += 18;
  }
  return canvas;
}

/**
 * Multi-panel SVG figures from CLI checkpoint CSVs.
 *
 * Rendering is a pure function of the CSV contents and the figure spec, so
 * rerunning a spec overwrites the output with identical bytes.
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";

import { CsvRow, loadCsv } from "./csv.js";

export interface PanelLayout {
  rows: number;
  cols: number;
}

export interface FigureSpec {
  /** One CSV per panel, in reading order. */
  input_csvs: string[];
  panel_layout: PanelLayout;
  /** Horizontal axis: raw x, or u = log x. */
  x_axis: "linear-x" | "u=log-x";
  /** Optional fixed vertical bounds shared by all panels. */
  y_bounds?: [number, number];
  output_path: string;
  /** Horizontal guides for normalized panels; defaults to [-1, 1]. */
  reference_lines?: number[];
  titles?: string[];
}

const PANEL_W = 460;
const PANEL_H = 290;
const MARGIN = { top: 28, right: 16, bottom: 40, left: 58 };

interface Scale {
  lo: number;
  hi: number;
  px: (v: number) => number;
}

function makeScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const span = hi - lo || 1;
  return {
    lo,
    hi,
    px: (v: number) => outLo + ((v - lo) / span) * (outHi - outLo),
  };
}

function ticks(lo: number, hi: number, count: number): number[] {
  const span = hi - lo || 1;
  const rawStep = span / Math.max(count - 1, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= count) ?? mag * 10;
  const first = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let t = first; t <= hi + step * 1e-9; t += step) {
    out.push(Math.abs(t) < step * 1e-9 ? 0 : t);
  }
  return out;
}

function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) return v.toExponential(1);
  return String(Number(v.toPrecision(6)));
}

function renderPanel(
  rows: CsvRow[],
  spec: FigureSpec,
  title: string,
  originX: number,
  originY: number
): string {
  const useLog = spec.x_axis === "u=log-x";
  const xs = rows.map((r) => (useLog ? r.u ?? Math.log(r.x) : r.x));
  const ys = rows.map((r) => r.normalized);
  const refs = spec.reference_lines ?? [-1, 1];

  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  let yLo = spec.y_bounds ? spec.y_bounds[0] : Math.min(...ys, ...refs);
  let yHi = spec.y_bounds ? spec.y_bounds[1] : Math.max(...ys, ...refs);
  const pad = 0.06 * (yHi - yLo || 1);
  yLo -= pad;
  yHi += pad;

  const left = originX + MARGIN.left;
  const right = originX + PANEL_W - MARGIN.right;
  const top = originY + MARGIN.top;
  const bottom = originY + PANEL_H - MARGIN.bottom;
  const sx = makeScale(xLo, xHi, left, right);
  const sy = makeScale(yLo, yHi, bottom, top);

  const parts: string[] = [`<g class="panel">`];
  parts.push(
    `<rect x="${left}" y="${top}" width="${right - left}" height="${bottom - top}" ` +
      `fill="none" stroke="#444" stroke-width="1"/>`
  );
  parts.push(
    `<text x="${(left + right) / 2}" y="${originY + 18}" text-anchor="middle" ` +
      `font-size="13" font-family="sans-serif">${title}</text>`
  );

  for (const t of ticks(xLo, xHi, 6)) {
    const px = sx.px(t);
    parts.push(`<line x1="${px}" y1="${bottom}" x2="${px}" y2="${bottom + 4}" stroke="#444"/>`);
    parts.push(
      `<text x="${px}" y="${bottom + 16}" text-anchor="middle" font-size="10" ` +
        `font-family="sans-serif">${fmt(t)}</text>`
    );
  }
  for (const t of ticks(yLo, yHi, 6)) {
    const py = sy.px(t);
    parts.push(`<line x1="${left - 4}" y1="${py}" x2="${left}" y2="${py}" stroke="#444"/>`);
    parts.push(
      `<text x="${left - 7}" y="${py + 3}" text-anchor="end" font-size="10" ` +
        `font-family="sans-serif">${fmt(t)}</text>`
    );
  }
  parts.push(
    `<text x="${(left + right) / 2}" y="${bottom + 32}" text-anchor="middle" ` +
      `font-size="11" font-family="sans-serif">${useLog ? "u = log x" : "x"}</text>`
  );

  for (const ref of refs) {
    if (ref < yLo || ref > yHi) continue;
    const py = sy.px(ref);
    parts.push(
      `<line class="reference" x1="${left}" y1="${py}" x2="${right}" y2="${py}" ` +
        `stroke="#b22" stroke-dasharray="5,4" stroke-width="1"/>`
    );
  }

  const points = xs
    .map((x, i) => `${sx.px(x).toFixed(2)},${sy.px(ys[i]).toFixed(2)}`)
    .join(" ");
  parts.push(
    `<polyline points="${points}" fill="none" stroke="#1860a8" stroke-width="1"/>`
  );
  parts.push(`</g>`);
  return parts.join("\n");
}

/** Render the spec to an SVG string. Throws before producing anything on bad input. */
export function renderSvg(spec: FigureSpec): string {
  const { rows, cols } = spec.panel_layout;
  if (rows < 1 || cols < 1) {
    throw new Error("panel_layout must have positive rows and cols");
  }
  if (spec.input_csvs.length === 0 || spec.input_csvs.length > rows * cols) {
    throw new Error(
      `expected between 1 and ${rows * cols} CSVs, got ${spec.input_csvs.length}`
    );
  }
  const panels = spec.input_csvs.map((path) => loadCsv(path));
  const width = cols * PANEL_W;
  const height = rows * PANEL_H;
  const body = panels
    .map((data, i) => {
      const r = Math.floor(i / cols);
      const c = i % cols;
      const title = spec.titles?.[i] ?? spec.input_csvs[i].split("/").pop() ?? "";
      return renderPanel(data, spec, title, c * PANEL_W, r * PANEL_H);
    })
    .join("\n");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n<rect width="100%" height="100%" fill="white"/>\n` +
    `${body}\n</svg>\n`
  );
}

/** Render and write the figure; no file is written if anything fails. */
export function render(spec: FigureSpec): string {
  const svg = renderSvg(spec);
  mkdirSync(dirname(spec.output_path), { recursive: true });
  writeFileSync(spec.output_path, svg);
  return spec.output_path;
}

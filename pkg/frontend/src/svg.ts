/**
 * Minimal deterministic SVG line-chart builder.
 *
 * No physics and no numeric transformation beyond affine axis scaling: the
 * raw CSV strings of every plotted point are embedded on the polyline as
 * data-x / data-y attributes, so rendered values can be checked against the
 * source files verbatim.
 */

import type { SeriesData } from "./csv.js";

export interface SeriesStyle {
  label: string;
  stroke: string;
  dash?: string;
}

export interface PanelContent {
  title: string;
  xLabel: string;
  yLabel: string;
  series: { data: SeriesData; style: SeriesStyle }[];
  yRange?: [number, number];
}

const PANEL_W = 420;
const PANEL_H = 300;
const MARGIN = { top: 34, right: 16, bottom: 46, left: 56 };

function fmt(v: number): string {
  // fixed-precision coordinates keep output byte-stable
  return v.toFixed(2);
}

function niceTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = (count * step) / span;
  const mult = err <= 0.15 ? 10 : err <= 0.35 ? 5 : err <= 0.75 ? 2 : 1;
  const final = step * mult;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / final) * final; v <= hi + 1e-12 * span; v += final) {
    ticks.push(Number(v.toPrecision(12)));
  }
  return ticks;
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderPanel(panel: PanelContent, ox: number, oy: number): string {
  const innerW = PANEL_W - MARGIN.left - MARGIN.right;
  const innerH = PANEL_H - MARGIN.top - MARGIN.bottom;
  let xMin = Infinity;
  let xMax = -Infinity;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const { data } of panel.series) {
    for (const v of data.x) {
      xMin = Math.min(xMin, v);
      xMax = Math.max(xMax, v);
    }
    for (const v of data.y) {
      yMin = Math.min(yMin, v);
      yMax = Math.max(yMax, v);
    }
  }
  if (panel.yRange) {
    [yMin, yMax] = panel.yRange;
  } else if (yMax === yMin) {
    yMin -= 0.5;
    yMax += 0.5;
  }
  if (xMax === xMin) {
    xMax = xMin + 1;
  }
  const sx = (v: number) => MARGIN.left + ((v - xMin) / (xMax - xMin)) * innerW;
  const sy = (v: number) => MARGIN.top + innerH - ((v - yMin) / (yMax - yMin)) * innerH;

  const parts: string[] = [];
  parts.push(`<g transform="translate(${ox},${oy})">`);
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${innerW}" height="${innerH}" ` +
      `fill="none" stroke="#444" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${PANEL_W / 2}" y="18" text-anchor="middle" font-size="13" ` +
      `font-family="sans-serif">${escapeXml(panel.title)}</text>`,
  );
  for (const t of niceTicks(xMin, xMax)) {
    const px = sx(t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${MARGIN.top + innerH}" x2="${fmt(px)}" ` +
        `y2="${MARGIN.top + innerH + 4}" stroke="#444"/>`,
      `<text x="${fmt(px)}" y="${MARGIN.top + innerH + 16}" text-anchor="middle" ` +
        `font-size="10" font-family="sans-serif">${t}</text>`,
    );
  }
  for (const t of niceTicks(yMin, yMax)) {
    const py = sy(t);
    parts.push(
      `<line x1="${MARGIN.left - 4}" y1="${fmt(py)}" x2="${MARGIN.left}" ` +
        `y2="${fmt(py)}" stroke="#444"/>`,
      `<text x="${MARGIN.left - 7}" y="${fmt(py + 3)}" text-anchor="end" ` +
        `font-size="10" font-family="sans-serif">${t}</text>`,
    );
  }
  parts.push(
    `<text x="${PANEL_W / 2}" y="${PANEL_H - 8}" text-anchor="middle" font-size="11" ` +
      `font-family="sans-serif">${escapeXml(panel.xLabel)}</text>`,
    `<text x="14" y="${PANEL_H / 2}" text-anchor="middle" font-size="11" ` +
      `font-family="sans-serif" transform="rotate(-90 14 ${PANEL_H / 2})">` +
      `${escapeXml(panel.yLabel)}</text>`,
  );
  panel.series.forEach(({ data, style }, idx) => {
    const pts = data.x.map((v, i) => `${fmt(sx(v))},${fmt(sy(data.y[i]))}`).join(" ");
    const dash = style.dash ? ` stroke-dasharray="${style.dash}"` : "";
    parts.push(
      `<polyline fill="none" stroke="${style.stroke}" stroke-width="1.2"${dash} ` +
        `points="${pts}" data-label="${escapeXml(style.label)}" ` +
        `data-x="${data.rawX.join(" ")}" data-y="${data.rawY.join(" ")}"/>`,
    );
    const ly = MARGIN.top + 12 + 13 * idx;
    const lx = MARGIN.left + innerW - 130;
    parts.push(
      `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 22}" y2="${ly - 4}" ` +
        `stroke="${style.stroke}" stroke-width="1.2"${dash}/>`,
      `<text x="${lx + 27}" y="${ly}" font-size="10" font-family="sans-serif">` +
        `${escapeXml(style.label)}</text>`,
    );
  });
  parts.push("</g>");
  return parts.join("\n");
}

export function renderFigure(id: string, panels: PanelContent[]): string {
  const cols = panels.length > 1 ? 2 : 1;
  const rows = Math.ceil(panels.length / cols);
  const width = cols * PANEL_W;
  const height = rows * PANEL_H + 24;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<text x="${width / 2}" y="${height - 8}" text-anchor="middle" font-size="12" ` +
      `font-family="sans-serif">${escapeXml(id)}</text>`,
  );
  panels.forEach((panel, k) => {
    const ox = (k % cols) * PANEL_W;
    const oy = Math.floor(k / cols) * PANEL_H;
    parts.push(renderPanel(panel, ox, oy));
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

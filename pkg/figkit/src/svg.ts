/**
 * Minimal deterministic SVG plotting: fixed canvas, linear axes, series as
 * polylines, error bars, shaded bands. All numbers are formatted through one
 * helper so identical inputs yield identical bytes.
 */

export interface Extent {
  min: number;
  max: number;
}

export function fmt(x: number): string {
  if (!Number.isFinite(x)) return "0";
  const s = x.toFixed(3);
  return s === "-0.000" ? "0.000" : s;
}

export function fmtTick(x: number): string {
  if (x === 0) return "0";
  const a = Math.abs(x);
  if (a >= 1000 || a < 0.01) return x.toExponential(1);
  if (Number.isInteger(x)) return String(x);
  return String(Number(x.toPrecision(3)));
}

export function extent(values: number[], padFraction = 0.08): Extent {
  let min = Math.min(...values);
  let max = Math.max(...values);
  if (min === max) {
    min -= 1;
    max += 1;
  }
  const pad = (max - min) * padFraction;
  return { min: min - pad, max: max + pad };
}

export interface Series {
  label: string;
  color: string;
  points: [number, number][];
  dash?: string;
  markers?: boolean;
  errorBars?: number[]; // half-height per point, in data units
}

export interface Band {
  centers: [number, number][];
  halfWidths: number[];
  color: string;
  label: string;
}

export interface PlotSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  xTicks?: number[];
  xTickLabels?: string[];
  series: Series[];
  band?: Band;
  width?: number;
  height?: number;
}

const MARGIN = { left: 64, right: 16, top: 34, bottom: 44 };

export function renderPlot(spec: PlotSpec): string {
  const width = spec.width ?? 640;
  const height = spec.height ?? 420;
  const innerW = width - MARGIN.left - MARGIN.right;
  const innerH = height - MARGIN.top - MARGIN.bottom;

  const xs: number[] = [];
  const ys: number[] = [];
  for (const s of spec.series) {
    s.points.forEach(([x, y], i) => {
      xs.push(x);
      ys.push(y);
      const e = s.errorBars?.[i] ?? 0;
      ys.push(y - e, y + e);
    });
  }
  if (spec.band) {
    spec.band.centers.forEach(([x, y], i) => {
      xs.push(x);
      ys.push(y - spec.band!.halfWidths[i], y + spec.band!.halfWidths[i]);
    });
  }
  const ex = extent(xs);
  const ey = extent(ys);
  const sx = (x: number) => MARGIN.left + ((x - ex.min) / (ex.max - ex.min)) * innerW;
  const sy = (y: number) => MARGIN.top + innerH - ((y - ey.min) / (ey.max - ey.min)) * innerH;

  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
  );
  out.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  out.push(
    `<text x="${width / 2}" y="20" text-anchor="middle" font-size="14">${escapeXml(spec.title)}</text>`,
  );

  // axes and ticks
  const xTicks = spec.xTicks ?? linTicks(ex, 5);
  const yTicks = linTicks(ey, 5);
  for (let i = 0; i < xTicks.length; i++) {
    const x = sx(xTicks[i]);
    out.push(`<line x1="${fmt(x)}" y1="${MARGIN.top}" x2="${fmt(x)}" y2="${MARGIN.top + innerH}" stroke="#dddddd" stroke-width="1"/>`);
    const label = spec.xTickLabels?.[i] ?? fmtTick(xTicks[i]);
    out.push(`<text x="${fmt(x)}" y="${MARGIN.top + innerH + 18}" text-anchor="middle" font-size="11">${label}</text>`);
  }
  for (const v of yTicks) {
    const y = sy(v);
    out.push(`<line x1="${MARGIN.left}" y1="${fmt(y)}" x2="${MARGIN.left + innerW}" y2="${fmt(y)}" stroke="#dddddd" stroke-width="1"/>`);
    out.push(`<text x="${MARGIN.left - 8}" y="${fmt(y + 4)}" text-anchor="end" font-size="11">${fmtTick(v)}</text>`);
  }
  out.push(`<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${innerW}" height="${innerH}" fill="none" stroke="#333333"/>`);
  out.push(`<text x="${MARGIN.left + innerW / 2}" y="${height - 8}" text-anchor="middle" font-size="12">${escapeXml(spec.xLabel)}</text>`);
  out.push(`<text x="16" y="${MARGIN.top + innerH / 2}" text-anchor="middle" font-size="12" transform="rotate(-90 16 ${MARGIN.top + innerH / 2})">${escapeXml(spec.yLabel)}</text>`);

  // shaded band around its center line
  if (spec.band) {
    const upper = spec.band.centers.map(([x, y], i) => `${fmt(sx(x))},${fmt(sy(y + spec.band!.halfWidths[i]))}`);
    const lower = spec.band.centers
      .map(([x, y], i) => `${fmt(sx(x))},${fmt(sy(y - spec.band!.halfWidths[i]))}`)
      .reverse();
    out.push(`<polygon points="${upper.concat(lower).join(" ")}" fill="${spec.band.color}" stroke="none"/>`);
  }

  for (const s of spec.series) {
    const pts = s.points.map(([x, y]) => `${fmt(sx(x))},${fmt(sy(y))}`).join(" ");
    if (s.points.length > 1) {
      const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
      out.push(`<polyline points="${pts}" fill="none" stroke="${s.color}" stroke-width="1.8"${dash}/>`);
    }
    if (s.errorBars) {
      s.points.forEach(([x, y], i) => {
        const e = s.errorBars![i];
        if (e > 0) {
          const cx = sx(x);
          out.push(`<line x1="${fmt(cx)}" y1="${fmt(sy(y - e))}" x2="${fmt(cx)}" y2="${fmt(sy(y + e))}" stroke="${s.color}" stroke-width="1.2"/>`);
          out.push(`<line x1="${fmt(cx - 4)}" y1="${fmt(sy(y - e))}" x2="${fmt(cx + 4)}" y2="${fmt(sy(y - e))}" stroke="${s.color}" stroke-width="1.2"/>`);
          out.push(`<line x1="${fmt(cx - 4)}" y1="${fmt(sy(y + e))}" x2="${fmt(cx + 4)}" y2="${fmt(sy(y + e))}" stroke="${s.color}" stroke-width="1.2"/>`);
        }
      });
    }
    if (s.markers) {
      for (const [x, y] of s.points) {
        out.push(`<circle cx="${fmt(sx(x))}" cy="${fmt(sy(y))}" r="3" fill="${s.color}"/>`);
      }
    }
  }

  // legend, top-left inside the frame
  let ly = MARGIN.top + 14;
  const entries: { label: string; color: string }[] = spec.series.map((s) => ({ label: s.label, color: s.color }));
  if (spec.band) entries.push({ label: spec.band.label, color: spec.band.color });
  for (const e of entries) {
    out.push(`<rect x="${MARGIN.left + 8}" y="${ly - 8}" width="14" height="8" fill="${e.color}"/>`);
    out.push(`<text x="${MARGIN.left + 27}" y="${ly}" font-size="11">${escapeXml(e.label)}</text>`);
    ly += 16;
  }

  out.push("</svg>");
  return out.join("\n") + "\n";
}

function linTicks(e: Extent, count: number): number[] {
  const ticks: number[] = [];
  for (let i = 0; i <= count; i++) {
    ticks.push(e.min + ((e.max - e.min) * i) / count);
  }
  return ticks;
}

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

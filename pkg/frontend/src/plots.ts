/**
 * Minimal SVG chart builder: axes, polyline series, legend.
 *
 * No DOM, no chart library; the output is a plain SVG document string that
 * any browser or image viewer renders.  Series are drawn in insertion
 * order, so put wide background curves first and dashed overlays last.
 */

export interface Series {
  label: string;
  points: Array<[number, number]>;
  color: string;
  width: number;
  dash?: string;
}

export interface ChartOptions {
  title: string;
  xlabel: string;
  ylabel: string;
  width?: number;
  height?: number;
  annotation?: string;
}

const MARGIN = { top: 42, right: 24, bottom: 52, left: 64 };

function niceTicks(lo: number, hi: number, count = 6): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const span = hi - lo;
  const step0 = span / Math.max(1, count);
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  const norm = step0 / mag;
  const step = (norm >= 5 ? 10 : norm >= 2 ? 5 : norm >= 1 ? 2 : 1) * mag;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    ticks.push(v);
  }
  return ticks;
}

function fmtTick(v: number): string {
  const a = Math.abs(v);
  if (a !== 0 && (a >= 1e4 || a < 1e-2)) {
    return v.toExponential(1);
  }
  return Number(v.toFixed(4)).toString();
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderChart(series: Series[], opts: ChartOptions): string {
  const width = opts.width ?? 640;
  const height = opts.height ?? 480;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const xs = series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = series.flatMap((s) => s.points.map((p) => p[1]));
  const xLo = 0;
  const xHi = xs.length ? Math.max(...xs) * 1.05 || 1 : 1;
  const yLo = 0;
  const yHi = ys.length ? Math.max(...ys) * 1.05 || 1 : 1;

  const sx = (x: number) => MARGIN.left + ((x - xLo) / (xHi - xLo)) * plotW;
  const sy = (y: number) => MARGIN.top + plotH - ((y - yLo) / (yHi - yLo)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="sans-serif">`
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<text x="${width / 2}" y="24" text-anchor="middle" font-size="15">${esc(opts.title)}</text>`
  );

  for (const tx of niceTicks(xLo, xHi)) {
    const x = sx(tx);
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${MARGIN.top + plotH}" ` +
        `stroke="#dddddd" stroke-width="1"/>`
    );
    parts.push(
      `<text x="${x}" y="${MARGIN.top + plotH + 18}" text-anchor="middle" font-size="11">` +
        `${fmtTick(tx)}</text>`
    );
  }
  for (const ty of niceTicks(yLo, yHi)) {
    const y = sy(ty);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + plotW}" y2="${y}" ` +
        `stroke="#dddddd" stroke-width="1"/>`
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${y + 4}" text-anchor="end" font-size="11">` +
        `${fmtTick(ty)}</text>`
    );
  }

  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="#333333"/>`
  );
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${height - 14}" text-anchor="middle" ` +
      `font-size="13">${esc(opts.xlabel)}</text>`
  );
  parts.push(
    `<text x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="13" ` +
      `transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">${esc(opts.ylabel)}</text>`
  );

  for (const s of series) {
    if (s.points.length === 0) {
      continue;
    }
    const coords = s.points.map(([x, y]) => `${sx(x).toFixed(2)},${sy(y).toFixed(2)}`);
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    parts.push(
      `<polyline data-series="${esc(s.label)}" points="${coords.join(" ")}" fill="none" ` +
        `stroke="${s.color}" stroke-width="${s.width}"${dash}/>`
    );
  }

  const drawn = series.filter((s) => s.points.length > 0);
  drawn.forEach((s, i) => {
    const y = MARGIN.top + 14 + i * 18;
    const x = MARGIN.left + 12;
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    parts.push(
      `<line x1="${x}" y1="${y - 4}" x2="${x + 26}" y2="${y - 4}" stroke="${s.color}" ` +
        `stroke-width="${s.width}"${dash}/>`
    );
    parts.push(`<text x="${x + 32}" y="${y}" font-size="12">${esc(s.label)}</text>`);
  });

  if (opts.annotation) {
    parts.push(
      `<text x="${MARGIN.left + plotW / 2}" y="${MARGIN.top + plotH / 2}" ` +
        `text-anchor="middle" font-size="14" fill="#888888">${esc(opts.annotation)}</text>`
    );
  }

  parts.push("</svg>");
  return parts.join("\n");
}

/**
 * Turn rate-region / sum-rate CSVs into SVG figures.
 *
 * The plot spec is a small JSON document:
 *
 *   {
 *     "kind": "region" | "sumrate",
 *     "inputs": ["fig4_frontier.csv"],
 *     "output": "fig4.svg",
 *     "title": "...", "xlabel": "...", "ylabel": "..."   // optional
 *   }
 *
 * Region curves are drawn as the exact staircases the corners describe,
 * never smoothed: the steps are the computed object.
 */

import * as fs from "fs";
import * as path from "path";

import { Corner, CsvFormatError, readFrontiers, readSumRates, SumRatePoint } from "./csv";
import { renderChart, Series } from "./plots";

export class PlotSpecError extends Error {}

export interface PlotSpec {
  kind: "region" | "sumrate";
  inputs: string[];
  output: string;
  title?: string;
  xlabel?: string;
  ylabel?: string;
}

const STYLE: Record<string, { color: string; width: number; dash?: string; order: number }> = {
  nnc: { color: "#2ca02c", width: 3.5, order: 0 },
  cf_binning: { color: "#d62728", width: 1.8, order: 1 },
  cf_nobin: { color: "#1f77b4", width: 1.8, dash: "7 4", order: 2 },
};

function styleFor(scheme: string) {
  return STYLE[scheme] ?? { color: "#555555", width: 1.5, order: 9 };
}

export function parsePlotSpec(doc: unknown, baseDir: string): PlotSpec {
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new PlotSpecError("plot spec must be a JSON object");
  }
  const rec = doc as Record<string, unknown>;
  const allowed = new Set(["kind", "inputs", "output", "title", "xlabel", "ylabel"]);
  for (const key of Object.keys(rec)) {
    if (!allowed.has(key)) {
      throw new PlotSpecError(`unknown plot spec field '${key}'`);
    }
  }
  const kind = rec.kind;
  if (kind !== "region" && kind !== "sumrate") {
    throw new PlotSpecError(`field 'kind' must be 'region' or 'sumrate', got ${JSON.stringify(kind)}`);
  }
  const inputs = rec.inputs;
  if (!Array.isArray(inputs) || inputs.length === 0 || !inputs.every((p) => typeof p === "string")) {
    throw new PlotSpecError("field 'inputs' must be a nonempty list of CSV paths");
  }
  if (typeof rec.output !== "string" || rec.output.length === 0) {
    throw new PlotSpecError("field 'output' must be the output image path");
  }
  const resolve = (p: string) => (path.isAbsolute(p) ? p : path.join(baseDir, p));
  return {
    kind,
    inputs: inputs.map(resolve),
    output: resolve(rec.output),
    title: typeof rec.title === "string" ? rec.title : undefined,
    xlabel: typeof rec.xlabel === "string" ? rec.xlabel : undefined,
    ylabel: typeof rec.ylabel === "string" ? rec.ylabel : undefined,
  };
}

/** Staircase boundary of the union of corner rectangles, drawn axis to axis. */
export function staircasePath(corners: Corner[]): Array<[number, number]> {
  if (corners.length === 0) {
    return [];
  }
  const pts: Array<[number, number]> = [[0, corners[0].r2]];
  for (let i = 0; i < corners.length; i++) {
    const c = corners[i];
    pts.push([c.r1, c.r2]);
    const next = corners[i + 1];
    if (next) {
      pts.push([c.r1, next.r2]);
    }
  }
  pts.push([corners[corners.length - 1].r1, 0]);
  return pts;
}

function mergeMaps<T>(maps: Array<Map<string, T[]>>): Map<string, T[]> {
  const out = new Map<string, T[]>();
  for (const m of maps) {
    for (const [scheme, rows] of m) {
      out.set(scheme, (out.get(scheme) ?? []).concat(rows));
    }
  }
  return out;
}

function orderedSchemes(schemes: Iterable<string>): string[] {
  return [...schemes].sort((a, b) => styleFor(a).order - styleFor(b).order);
}

export function renderSpec(spec: PlotSpec): string {
  let series: Series[] = [];
  let annotation: string | undefined;
  if (spec.kind === "region") {
    const bySch = mergeMaps(spec.inputs.map(readFrontiers));
    for (const scheme of orderedSchemes(bySch.keys())) {
      const st = styleFor(scheme);
      series.push({
        label: scheme,
        points: staircasePath(bySch.get(scheme)!),
        color: st.color,
        width: st.width,
        dash: st.dash,
      });
    }
    if (series.every((s) => s.points.length === 0) || series.length === 0) {
      annotation = "infeasible";
    }
  } else {
    const bySch = mergeMaps(spec.inputs.map(readSumRates));
    for (const scheme of orderedSchemes(bySch.keys())) {
      const st = styleFor(scheme);
      const pts = bySch.get(scheme)!.map((p: SumRatePoint) => [p.param, p.sum] as [number, number]);
      series.push({ label: scheme, points: pts, color: st.color, width: st.width, dash: st.dash });
    }
    if (series.every((s) => s.points.length === 0) || series.length === 0) {
      annotation = "infeasible";
    }
  }

  const svg = renderChart(series, {
    title: spec.title ?? path.basename(spec.output, path.extname(spec.output)),
    xlabel: spec.xlabel ?? (spec.kind === "region" ? "R1 (bits/use)" : "parameter"),
    ylabel: spec.ylabel ?? (spec.kind === "region" ? "R2 (bits/use)" : "sum rate (bits/use)"),
    annotation,
  });
  fs.mkdirSync(path.dirname(spec.output), { recursive: true });
  fs.writeFileSync(spec.output, svg + "\n");
  return spec.output;
}

export function renderSpecFile(specPath: string): string {
  let doc: unknown;
  try {
    doc = JSON.parse(fs.readFileSync(specPath, "utf8"));
  } catch (err) {
    throw new PlotSpecError(`cannot read plot spec ${specPath}: ${(err as Error).message}`);
  }
  return renderSpec(parsePlotSpec(doc, path.dirname(specPath)));
}

export { CsvFormatError };

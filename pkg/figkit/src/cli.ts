#!/usr/bin/env node
/**
 * figkit render --spec spec.json
 *
 * The spec names one or more figures, each with its input samples CSV,
 * report JSON, kind and output path, plus an optional "summary" HTML path:
 *
 *   {
 *     "figures": [
 *       {"kind": "profile-overlay", "csv": "...", "report": "...", "out": "profile.svg"},
 *       {"kind": "covariance-decay", "csv": "...", "report": "...", "out": "decay.svg"}
 *     ],
 *     "summary": "index.html"
 *   }
 *
 * A bare figure object (no "figures" wrapper) is also accepted.
 * Exit codes: 0 ok, 1 render/input error, 2 usage.
 */

import { mkdir, readFile, writeFile } from "fs/promises";
import path from "path";

import { buildFigure, FigureSpec } from "./figures.js";
import { renderSummary, SummarySection } from "./html.js";
import { loadReport, loadSamples, SchemaError } from "./schema.js";

interface RenderSpec {
  figures: FigureSpec[];
  summary?: string;
}

function usage(): void {
  console.error("usage: figkit render --spec spec.json");
}

async function parseSpec(specPath: string): Promise<RenderSpec> {
  let raw: unknown;
  try {
    raw = JSON.parse(await readFile(specPath, "utf8"));
  } catch (err) {
    throw new SchemaError(`${specPath}: ${(err as Error).message}`);
  }
  const obj = raw as Record<string, unknown>;
  const figures = (Array.isArray(obj.figures) ? obj.figures : [obj]) as FigureSpec[];
  for (const fig of figures) {
    for (const field of ["kind", "csv", "report", "out"] as const) {
      if (typeof fig[field] !== "string") {
        throw new SchemaError(`${specPath}: figure is missing "${field}"`);
      }
    }
  }
  const summary = obj.summary as string | undefined;
  const base = path.dirname(specPath);
  const resolve = (p: string) => (path.isAbsolute(p) ? p : path.join(base, p));
  return {
    figures: figures.map((f) => ({
      ...f,
      csv: resolve(f.csv),
      report: resolve(f.report),
      out: resolve(f.out),
    })),
    summary: summary === undefined ? undefined : resolve(summary),
  };
}

export async function render(specPath: string): Promise<string[]> {
  const spec = await parseSpec(specPath);
  const written: string[] = [];
  const sections: SummarySection[] = [];
  for (const fig of spec.figures) {
    const samples = await loadSamples(fig.csv);
    const report = await loadReport(fig.report);
    const svg = buildFigure(fig, report, samples);
    await mkdir(path.dirname(fig.out), { recursive: true });
    await writeFile(fig.out, svg, "utf8");
    written.push(fig.out);
    sections.push({
      title: `${report.experiment} — ${fig.kind}`,
      report,
      svgs: [svg],
    });
  }
  if (spec.summary !== undefined) {
    await mkdir(path.dirname(spec.summary), { recursive: true });
    await writeFile(spec.summary, renderSummary(sections), "utf8");
    written.push(spec.summary);
  }
  return written;
}

export async function main(argv: string[]): Promise<number> {
  if (argv[0] !== "render") {
    usage();
    return 2;
  }
  const flagIndex = argv.indexOf("--spec");
  if (flagIndex === -1 || flagIndex + 1 >= argv.length) {
    usage();
    return 2;
  }
  try {
    const written = await render(argv[flagIndex + 1]);
    for (const file of written) {
      console.log(`wrote ${file}`);
    }
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("figkit")) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}

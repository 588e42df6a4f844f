/**
 * Harness output schemas (v1).
 *
 * The CSV header is fixed; a file whose header deviates is refused with an
 * error naming the first offending column. Reports are JSON documents with
 * schema_version 1 carrying comparison rows, analytic curves and telemetry.
 */

import { readFile } from "fs/promises";

export const CSV_HEADER = "experiment,n,beta,t,k,kind,re,im,replica,seed";
export const REPORT_SCHEMA_VERSION = 1;

export interface SampleRow {
  experiment: string;
  n: number;
  beta: number;
  t: number;
  k: number;
  kind: string;
  re: number;
  im: number;
  replica: number;
  seed: number;
}

export interface ComparisonRow {
  statistic: string;
  estimate: number;
  outcome: string;
  se?: number;
  target?: number;
  z?: number;
  t?: number;
  k?: number;
  n?: number;
  threshold?: number;
  dof?: number;
  pvalue?: number;
  reason?: string;
}

export interface LadderRung {
  n: number;
  estimate: number;
  se: number;
}

export interface HarnessReport {
  schema_version: number;
  experiment: string;
  config: {
    tolerance: { z: number };
    times?: number[];
    [key: string]: unknown;
  };
  comparisons: ComparisonRow[];
  curves: Record<string, [number, number][]>;
  telemetry: Record<string, unknown>;
  summary: { comparisons: number; pass: number; fail: number; inconclusive: number; all_pass: boolean };
  ladder?: LadderRung[];
  spde_confirmation?: ComparisonRow[];
}

export class SchemaError extends Error {}

export function parseSamplesCsv(text: string, source: string): SampleRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaError(`${source}: empty file`);
  }
  const got = lines[0].split(",");
  const want = CSV_HEADER.split(",");
  for (let i = 0; i < want.length; i++) {
    if (got[i] !== want[i]) {
      throw new SchemaError(
        `${source}: header column ${i + 1} is "${got[i] ?? ""}", expected "${want[i]}"`,
      );
    }
  }
  if (got.length !== want.length) {
    throw new SchemaError(
      `${source}: header has ${got.length} columns, expected ${want.length}`,
    );
  }
  if (lines.length === 1) {
    throw new SchemaError(`${source}: no data rows`);
  }
  const rows: SampleRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== want.length) {
      throw new SchemaError(`${source}: row ${i} has ${parts.length} fields`);
    }
    const num = (j: number, field: string): number => {
      const v = Number(parts[j]);
      if (!Number.isFinite(v)) {
        throw new SchemaError(`${source}: row ${i}: bad ${field} "${parts[j]}"`);
      }
      return v;
    };
    rows.push({
      experiment: parts[0],
      n: num(1, "n"),
      beta: num(2, "beta"),
      t: num(3, "t"),
      k: num(4, "k"),
      kind: parts[5],
      re: num(6, "re"),
      im: num(7, "im"),
      replica: num(8, "replica"),
      seed: num(9, "seed"),
    });
  }
  return rows;
}

export async function loadSamples(path: string): Promise<SampleRow[]> {
  return parseSamplesCsv(await readFile(path, "utf8"), path);
}

export async function loadReport(path: string): Promise<HarnessReport> {
  let parsed: unknown;
  try {
    parsed = JSON.parse(await readFile(path, "utf8"));
  } catch (err) {
    throw new SchemaError(`${path}: not valid JSON (${(err as Error).message})`);
  }
  const report = parsed as HarnessReport;
  if (report.schema_version !== REPORT_SCHEMA_VERSION) {
    throw new SchemaError(
      `${path}: report schema_version ${report.schema_version}, expected ${REPORT_SCHEMA_VERSION}`,
    );
  }
  if (!Array.isArray(report.comparisons)) {
    throw new SchemaError(`${path}: report has no comparisons array`);
  }
  return report;
}

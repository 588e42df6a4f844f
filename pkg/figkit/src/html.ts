/**
 * HTML summary: one page with the comparison table of each report and the
 * rendered figures inlined, so the file is self-contained.
 */

import { ComparisonRow, HarnessReport } from "./schema.js";
import { escapeXml } from "./svg.js";

const OUTCOME_COLORS: Record<string, string> = {
  pass: "#2ca02c",
  fail: "#d62728",
  inconclusive: "#ff7f0e",
};

function cell(value: unknown): string {
  if (value === undefined || value === null) return "<td></td>";
  if (typeof value === "number") {
    const a = Math.abs(value);
    const text = a !== 0 && (a >= 1e4 || a < 1e-3) ? value.toExponential(3) : value.toPrecision(5);
    return `<td class="num">${text}</td>`;
  }
  return `<td>${escapeXml(String(value))}</td>`;
}

function comparisonTable(rows: ComparisonRow[]): string {
  const head =
    "<tr><th>statistic</th><th>n</th><th>t</th><th>k</th><th>estimate</th>" +
    "<th>se</th><th>target</th><th>z</th><th>outcome</th></tr>";
  const body = rows
    .map((c) => {
      const color = OUTCOME_COLORS[c.outcome] ?? "#333";
      return (
        "<tr>" +
        cell(c.statistic) + cell(c.n) + cell(c.t) + cell(c.k) +
        cell(c.estimate) + cell(c.se) + cell(c.target) + cell(c.z) +
        `<td style="color:${color};font-weight:bold">${escapeXml(c.outcome)}</td>` +
        "</tr>"
      );
    })
    .join("\n");
  return `<table>${head}\n${body}</table>`;
}

export interface SummarySection {
  title: string;
  report: HarnessReport;
  svgs: string[];
}

export function renderSummary(sections: SummarySection[]): string {
  const parts: string[] = [];
  parts.push("<!DOCTYPE html>");
  parts.push('<html><head><meta charset="utf-8"><title>figkit summary</title>');
  parts.push(
    "<style>body{font-family:Helvetica,Arial,sans-serif;margin:2em;}" +
      "table{border-collapse:collapse;margin:1em 0;}td,th{border:1px solid #ccc;" +
      "padding:3px 8px;font-size:13px;}td.num{text-align:right;font-variant-numeric:tabular-nums;}" +
      "h2{border-bottom:1px solid #999;}figure{display:inline-block;margin:0.5em;}</style>");
  parts.push("</head><body>");
  parts.push("<h1>figkit summary</h1>");
  for (const section of sections) {
    const s = section.report.summary;
    parts.push(`<h2>${escapeXml(section.title)}</h2>`);
    parts.push(
      `<p>${s.pass}/${s.comparisons} comparisons pass, ${s.fail} fail, ` +
        `${s.inconclusive} inconclusive.</p>`);
    for (const svg of section.svgs) {
      parts.push(`<figure>${svg}</figure>`);
    }
    parts.push(comparisonTable(section.report.comparisons));
  }
  parts.push("</body></html>");
  return parts.join("\n") + "\n";
}

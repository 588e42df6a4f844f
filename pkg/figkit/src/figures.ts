/**
 * The four figure kinds. Every number plotted comes from the harness
 * report (estimates, standard errors, analytic target curves) or is a
 * deterministic rendering transform of those numbers (Fourier synthesis of
 * reported coefficients, error-bar half-heights at the report's declared
 * z tolerance). Nothing is estimated here.
 */

import { ComparisonRow, HarnessReport, SampleRow, SchemaError } from "./schema.js";
import { PlotSpec, renderPlot } from "./svg.js";

export type FigureKind =
  | "profile-overlay"
  | "covariance-decay"
  | "mode-phase"
  | "decay-ladder";

export interface FigureSpec {
  kind: FigureKind;
  csv: string;
  report: string;
  out: string;
  time?: number;    // profile-overlay: which observation time (default: last)
  mode?: number;    // covariance-decay / mode-phase: which k (default: first)
  width?: number;
  height?: number;
  title?: string;
}

const SIM_COLOR = "#d62728";
const REF_COLOR = "#1f77b4";
const IM_COLOR = "#7f7f7f";
const BAND_COLOR = "#aec7e8";

// ---------------------------------------------------------------------------
// profile overlay
// ---------------------------------------------------------------------------

function psi(k: number, u: number): number {
  if (k > 0) return Math.SQRT2 * Math.cos(2 * Math.PI * k * u);
  if (k < 0) return Math.SQRT2 * Math.sin(2 * Math.PI * -k * u);
  return 1;
}

export interface ProfileOverlayData {
  time: number;
  u: number[];
  simulated: number[];
  reference: number[];
  band: number[]; // half-width: zTol * pointwise SE of the synthesis
}

export function prepareProfileOverlay(
  report: HarnessReport,
  time?: number,
  gridPoints = 257,
): ProfileOverlayData {
  const rows = report.comparisons.filter((c) => c.statistic === "psi_coeff");
  if (rows.length === 0) {
    throw new SchemaError(`${report.experiment}: no psi_coeff rows for a profile overlay`);
  }
  const times = [...new Set(rows.map((c) => c.t as number))].sort((a, b) => a - b);
  const t = time ?? times[times.length - 1];
  const at = rows.filter((c) => c.t === t);
  if (at.length === 0) {
    throw new SchemaError(`no psi_coeff rows at t=${t}; have t in {${times.join(", ")}}`);
  }
  const zTol = report.config.tolerance.z;
  const u: number[] = [];
  const simulated: number[] = [];
  const reference: number[] = [];
  const band: number[] = [];
  for (let i = 0; i < gridPoints; i++) {
    const x = i / (gridPoints - 1);
    let sim = 0;
    let ref = 0;
    let varSum = 0;
    for (const row of at) {
      const basis = psi(row.k as number, x);
      sim += row.estimate * basis;
      ref += (row.target as number) * basis;
      varSum += (row.se as number) ** 2 * basis ** 2;
    }
    u.push(x);
    simulated.push(sim);
    reference.push(ref);
    band.push(zTol * Math.sqrt(varSum));
  }
  return { time: t, u, simulated, reference, band };
}

function profileOverlay(report: HarnessReport, spec: FigureSpec): string {
  const data = prepareProfileOverlay(report, spec.time);
  const zTol = report.config.tolerance.z;
  const plot: PlotSpec = {
    title: spec.title ?? `${report.experiment}: profile vs transport reference, t=${data.time}`,
    xLabel: "u",
    yLabel: "density",
    xTicks: [0, 0.25, 0.5, 0.75, 1],
    band: {
      centers: data.u.map((x, i) => [x, data.reference[i]]),
      halfWidths: data.band,
      color: BAND_COLOR,
      label: `reference ± ${zTol} SE`,
    },
    series: [
      {
        label: "reference (analytic)",
        color: REF_COLOR,
        points: data.u.map((x, i) => [x, data.reference[i]]),
      },
      {
        label: "simulated (replica mean)",
        color: SIM_COLOR,
        dash: "6 3",
        points: data.u.map((x, i) => [x, data.simulated[i]]),
      },
    ],
    width: spec.width,
    height: spec.height,
  };
  return renderPlot(plot);
}

// ---------------------------------------------------------------------------
// covariance decay
// ---------------------------------------------------------------------------

function pickMode(rows: ComparisonRow[], wanted?: number): number {
  const ks = [...new Set(rows.map((c) => c.k as number))].sort((a, b) => a - b);
  if (ks.length === 0) throw new SchemaError("no autocovariance rows in report");
  if (wanted === undefined) return ks[0];
  if (!ks.includes(wanted)) {
    throw new SchemaError(`mode k=${wanted} not in report (have ${ks.join(", ")})`);
  }
  return wanted;
}

function covarianceDecay(report: HarnessReport, spec: FigureSpec): string {
  const zTol = report.config.tolerance.z;
  const hyperbolic = report.comparisons.some((c) => c.statistic === "psi_autocov");
  const reStat = hyperbolic ? "psi_autocov" : "mode_autocov_re";
  const rows = report.comparisons.filter((c) => c.statistic === reStat);
  const k = pickMode(rows, spec.mode);
  const at = rows
    .filter((c) => c.k === k)
    .sort((a, b) => (a.t as number) - (b.t as number));
  if (at.length === 0) throw new SchemaError(`no ${reStat} rows for k=${k}`);
  const curveKey = `${hyperbolic ? "psi_autocov" : "mode_autocov_re"}:k=${k}`;
  const curve = report.curves[curveKey];
  if (!curve) throw new SchemaError(`report carries no analytic curve ${curveKey}`);

  const series = [
    {
      label: "analytic target",
      color: REF_COLOR,
      points: curve.map(([t, v]) => [t, v] as [number, number]),
    },
    {
      label: `simulated ± ${zTol} SE`,
      color: SIM_COLOR,
      markers: true,
      points: at.map((c) => [c.t as number, c.estimate] as [number, number]),
      errorBars: at.map((c) => zTol * (c.se as number)),
    },
  ];
  if (!hyperbolic) {
    const imRows = report.comparisons
      .filter((c) => c.statistic === "mode_autocov_im" && c.k === k)
      .sort((a, b) => (a.t as number) - (b.t as number));
    const imCurve = report.curves[`mode_autocov_im:k=${k}`];
    if (imRows.length > 0 && imCurve) {
      series.push({
        label: "analytic target (imag)",
        color: IM_COLOR,
        dash: "3 3",
        points: imCurve.map(([t, v]) => [t, v] as [number, number]),
      } as (typeof series)[number]);
      series.push({
        label: `simulated imag ± ${zTol} SE`,
        color: IM_COLOR,
        markers: true,
        points: imRows.map((c) => [c.t as number, c.estimate] as [number, number]),
        errorBars: imRows.map((c) => zTol * (c.se as number)),
      } as (typeof series)[number]);
    }
  }
  return renderPlot({
    title: spec.title ?? `${report.experiment}: autocovariance decay, k=${k}`,
    xLabel: "t",
    yLabel: hyperbolic ? "E[Y_t(psi_k) Y_0(psi_k)]" : "E[Y_t(k) conj(Y_0(k))]",
    series,
    width: spec.width,
    height: spec.height,
  });
}

// ---------------------------------------------------------------------------
// mode phase
// ---------------------------------------------------------------------------

function modePhase(report: HarnessReport, spec: FigureSpec): string {
  const zTol = report.config.tolerance.z;
  const rows = report.comparisons.filter((c) => c.statistic === "mode_autocov_phase");
  const k = pickMode(rows, spec.mode);
  const at = rows
    .filter((c) => c.k === k)
    .sort((a, b) => (a.t as number) - (b.t as number));
  if (at.length === 0) throw new SchemaError(`no phase rows for k=${k}`);
  const curve = report.curves[`mode_autocov_phase:k=${k}`];
  if (!curve) throw new SchemaError(`report carries no analytic curve mode_autocov_phase:k=${k}`);
  return renderPlot({
    title: spec.title ?? `${report.experiment}: autocovariance phase, k=${k}`,
    xLabel: "t",
    yLabel: "phase (radians)",
    series: [
      {
        label: "target rotation",
        color: REF_COLOR,
        points: curve.map(([t, v]) => [t, v] as [number, number]),
      },
      {
        label: `simulated phase ± ${zTol} SE`,
        color: SIM_COLOR,
        markers: true,
        points: at.map((c) => [c.t as number, c.estimate] as [number, number]),
        errorBars: at.map((c) => zTol * (c.se as number)),
      },
    ],
    width: spec.width,
    height: spec.height,
  });
}

// ---------------------------------------------------------------------------
// decay ladder
// ---------------------------------------------------------------------------

function decayLadder(report: HarnessReport, spec: FigureSpec): string {
  const ladder = report.ladder;
  if (!ladder || ladder.length === 0) {
    throw new SchemaError(`${report.experiment}: report has no ladder block`);
  }
  const zTol = report.config.tolerance.z;
  const xs = ladder.map((r) => Math.log2(r.n));
  return renderPlot({
    title: spec.title ?? `${report.experiment}: boundary statistic vs size`,
    xLabel: "n",
    yLabel: "E[ sup |sqrt(n) integral|^2 ]",
    xTicks: xs,
    xTickLabels: ladder.map((r) => String(r.n)),
    series: [
      {
        label: `estimate ± ${zTol} SE`,
        color: SIM_COLOR,
        markers: true,
        points: ladder.map((r, i) => [xs[i], r.estimate] as [number, number]),
        errorBars: ladder.map((r) => zTol * r.se),
      },
    ],
    width: spec.width,
    height: spec.height,
  });
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

export function buildFigure(
  spec: FigureSpec,
  report: HarnessReport,
  samples: SampleRow[],
): string {
  if (samples.length === 0) {
    throw new SchemaError(`${spec.csv}: no data rows`);
  }
  switch (spec.kind) {
    case "profile-overlay":
      return profileOverlay(report, spec);
    case "covariance-decay":
      return covarianceDecay(report, spec);
    case "mode-phase":
      return modePhase(report, spec);
    case "decay-ladder":
      return decayLadder(report, spec);
    default:
      throw new SchemaError(`unknown figure kind "${(spec as FigureSpec).kind}"`);
  }
}

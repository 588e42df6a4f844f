"""Comparison reports and their serialization.

A report is a JSON document (schema version 1) holding the expanded
config, one row per statistical comparison, analytic target curves for
plotting, and run telemetry.  Every float is serialized with ``repr``
precision and keys are sorted, so a report is byte-identical across
repeated runs of the same seeded config at any thread count.

Outcome semantics per row:

* ``pass``          |z| within tolerance and the standard error small enough,
* ``fail``          |z| beyond tolerance,
* ``inconclusive``  the standard error exceeds its ceiling (underpowered),
  or the row's analytic target was not confirmed; never counted as a pass.
"""

from __future__ import annotations

import json
import os

from ..fields import CSV_HEADER

__all__ = ["SCHEMA_VERSION", "comparison_row", "build_report",
           "write_report", "write_samples", "read_samples", "summary_lines"]

SCHEMA_VERSION = 1


def comparison_row(statistic, estimate, se, target, tol, *, t=None, k=None,
                   n=None, z=None, reason=None):
    """One comparison with its z-score and outcome at the given tolerances."""
    if z is None:
        z = (estimate - target) / se if se > 0 else float("inf")
    if reason is not None:
        outcome = "inconclusive"
    elif tol.se_max is not None and se > tol.se_max:
        outcome, reason = "inconclusive", f"se {se:.3g} above ceiling {tol.se_max:.3g}"
    elif abs(z) <= tol.z:
        outcome = "pass"
    else:
        outcome = "fail"
    row = {"statistic": statistic, "estimate": estimate, "se": se,
           "target": target, "z": z, "outcome": outcome}
    if t is not None:
        row["t"] = t
    if k is not None:
        row["k"] = k
    if n is not None:
        row["n"] = n
    if reason is not None:
        row["reason"] = reason
    return row


def exact_row(statistic, residual, threshold, **extra):
    """An exact-identity check: residual against an absolute threshold."""
    row = {"statistic": statistic, "estimate": residual, "target": 0.0,
           "threshold": threshold,
           "outcome": "pass" if residual <= threshold else "fail"}
    row.update(extra)
    return row


def build_report(cfg, comparisons, *, curves=None, telemetry=None, extra=None):
    n_pass = sum(1 for c in comparisons if c["outcome"] == "pass")
    n_fail = sum(1 for c in comparisons if c["outcome"] == "fail")
    n_inc = len(comparisons) - n_pass - n_fail
    report = {
        "schema_version": SCHEMA_VERSION,
        "experiment": cfg.experiment,
        "config": cfg.expanded(),
        "comparisons": comparisons,
        "curves": curves or {},
        "telemetry": telemetry or {},
        "summary": {
            "comparisons": len(comparisons),
            "pass": n_pass,
            "fail": n_fail,
            "inconclusive": n_inc,
            "all_pass": n_fail == 0 and n_inc == 0,
        },
    }
    if extra:
        report.update(extra)
    return report


def write_report(report, path):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_samples(samples, path):
    """Write FieldSample rows in the fixed CSV schema, replica-major order."""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for s in samples:
            fh.write(s.csv_row() + "\n")


def read_samples(path):
    """Parse a samples CSV back into FieldSample rows; header is checked."""
    from ..fields import FieldSample

    with open(path) as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        out = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            exp, n, beta, t, k, kind, re, im, replica, seed = line.split(",")
            out.append(FieldSample(exp, int(n), int(beta), float(t), int(k),
                                   kind, float(re), float(im), int(replica),
                                   int(seed)))
    return out


def summary_lines(report):
    """One human-readable line per comparison."""
    lines = []
    for c in report["comparisons"]:
        where = " ".join(
            f"{key}={c[key]:g}" if isinstance(c[key], float) else f"{key}={c[key]}"
            for key in ("n", "t", "k") if key in c)
        if "threshold" in c:
            body = (f"residual {c['estimate']:.3e} <= {c['threshold']:.1e}")
        elif "z" in c:
            body = (f"est {c['estimate']:+.6f} +- {c['se']:.6f} "
                    f"target {c['target']:+.6f} z {c['z']:+.2f}")
        else:
            body = f"est {c['estimate']:.6g} target {c['target']:.6g}"
        reason = f" ({c['reason']})" if "reason" in c else ""
        lines.append(f"[{c['outcome']:>12s}] {c['statistic']} {where}: {body}{reason}")
    s = report["summary"]
    lines.append(f"{s['pass']}/{s['comparisons']} comparisons pass, "
                 f"{s['fail']} fail, {s['inconclusive']} inconclusive")
    return lines

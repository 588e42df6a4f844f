"""Command-line entry point.

Subcommands
-----------
simulate   run the configured experiment; write samples.csv + report.json
oracle     run the exact-identity validation grid (config optional)
spde       run a reference SPDE ensemble with its exactness checks
compare    rebuild a report from an existing samples.csv
report     print the one-line summaries of a stored report.json

Exit codes: 0 all comparisons pass; 1 a comparison failed or was
inconclusive; 2 usage error; 3 unreadable or invalid config; 4 output not
writable.  ``--threads`` (or the RLAB_THREADS variable) controls replica
parallelism; outputs are byte-identical for any thread count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .config import ConfigError, load_config
from .experiments import compare, run
from .parallel import resolve_threads
from .report import read_samples, summary_lines, write_report, write_samples

__all__ = ["main", "EXIT_OK", "EXIT_FAIL", "EXIT_USAGE", "EXIT_CONFIG",
           "EXIT_OUTPUT"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_OUTPUT = 4


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="rlab",
        description="Shuffle-chain scaling experiments and exact oracles.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required=True):
        p.add_argument("--config", required=config_required,
                       help="experiment config (JSON file)")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--replicas", type=int, default=None)

    common(sub.add_parser("simulate", help="run an experiment end to end"))
    common(sub.add_parser("oracle", help="run the exact-identity grid"),
           config_required=False)
    common(sub.add_parser("spde", help="run the reference SPDE ensemble"))
    p_cmp = sub.add_parser("compare", help="re-analyze a samples CSV")
    common(p_cmp)
    p_cmp.add_argument("--csv", required=True, help="samples.csv to analyze")
    p_rep = sub.add_parser("report", help="print a stored report")
    p_rep.add_argument("--report", required=True, help="report.json to print")
    return parser


_DEFAULT_ORACLE = {"experiment": "oracle-validate", "seed": 0}


def _load(args):
    overrides = {"seed": args.seed, "replicas": args.replicas,
                 "out": args.out}
    if args.config is None:
        cfg = load_config(dict(_DEFAULT_ORACLE), overrides)
    else:
        if not os.path.exists(args.config):
            raise ConfigError(f"config file not found: {args.config}")
        cfg = load_config(args.config, overrides)
    cfg.threads = resolve_threads(args.threads, cfg.threads)
    return cfg


def _emit(cfg, report, samples, out_dir):
    out = out_dir or cfg.out or "rlab-out"
    try:
        os.makedirs(out, exist_ok=True)
        write_samples(samples, os.path.join(out, "samples.csv"))
        write_report(report, os.path.join(out, "report.json"))
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    for line in summary_lines(report):
        print(line)
    print(f"wrote {out}/samples.csv and {out}/report.json")
    return EXIT_OK if report["summary"]["all_pass"] else EXIT_FAIL


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "report":
        try:
            with open(args.report) as fh:
                report = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read report: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        for line in summary_lines(report):
            print(line)
        return EXIT_OK if report["summary"]["all_pass"] else EXIT_FAIL

    try:
        cfg = _load(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.command == "oracle" and cfg.experiment != "oracle-validate":
        print("error: oracle subcommand needs an oracle-validate config",
              file=sys.stderr)
        return EXIT_CONFIG
    if args.command == "spde" and cfg.experiment != "spde-reference":
        print("error: spde subcommand needs a spde-reference config",
              file=sys.stderr)
        return EXIT_CONFIG

    if args.command == "compare":
        try:
            samples = read_samples(args.csv)
        except (OSError, ValueError) as exc:
            print(f"error: cannot read samples: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        try:
            report = compare(cfg, samples)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        return _emit(cfg, report, samples, args.out)

    report, samples = run(cfg)
    return _emit(cfg, report, samples, args.out)


if __name__ == "__main__":
    sys.exit(main())

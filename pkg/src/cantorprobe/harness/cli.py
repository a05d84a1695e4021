"""Command line entry point.

Exit codes: 0 success, 1 usage or configuration error, 2 a numerical check failed.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from ..errors import CheckFailed
from .config import ExperimentConfig, load_config
from .emit import emit
from .experiments import run_construct, run_energy_profile, run_fubini, run_graph, run_prevalence

log = logging.getLogger("cantorprobe")

COMMANDS = ("construct", "energy-profile", "fubini", "prevalence", "graph")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cantorprobe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="key = value config file (defaults used when omitted)")
        p.add_argument("--seed", type=int, help="single seed for the random f")
        p.add_argument("--depth", type=int, help="address depth of X and the images")
        p.add_argument("--out", help="output directory")
        p.add_argument("--deterministic", action="store_true", default=None,
                       help="omit the timestamp so reruns are byte-identical")
        p.add_argument("--threads", type=int, help="worker threads")
    return parser


class _UsageError(Exception):
    pass


def _parse(parser: argparse.ArgumentParser, argv):
    try:
        return parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            raise
        raise _UsageError() from exc


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    parser = build_parser()
    try:
        args = _parse(parser, argv)
    except _UsageError:
        return 1
    try:
        cfg = load_config(args.config) if args.config else ExperimentConfig()
        cfg = cfg.with_overrides(seed=args.seed, depth=args.depth, out=args.out,
                                 deterministic=args.deterministic, threads=args.threads)
    except (ValueError, OSError) as exc:
        log.error("config error: %s", exc)
        return 1

    det = cfg.deterministic
    try:
        if args.command == "construct":
            report, mu = run_construct(cfg)
            paths = emit(report, "json", cfg.out, det) + emit(report, "csv", cfg.out, det)
            measure_csv = Path(cfg.out) / "measure.csv"
            measure_csv.write_text(mu.to_csv())
            paths.append(measure_csv)
        elif args.command == "energy-profile":
            report = run_energy_profile(cfg)
            paths = emit(report, "json", cfg.out, det) + emit(report, "csv", cfg.out, det)
            for p in report.profiles:
                log.info("s=%g: %s", p["s"], p["classification"])
        elif args.command == "fubini":
            report = run_fubini(cfg)
            paths = emit(report, "json", cfg.out, det) + emit(report, "csv", cfg.out, det)
            worst = max(r["ratio_tight"] for r in report.results)
            log.info("%d checks passed, largest lhs/rhs_tight = %.12g", len(report.results), worst)
        elif args.command == "prevalence":
            report = run_prevalence(cfg)
            paths = [p for fmt in ("json", "csv", "svg") for p in emit(report, fmt, cfg.out, det)]
            s = report.summary
            log.info("median slope %.4f, fraction >= %g: %.3f, collapses at %s",
                     s["median_slope"], s["slope_threshold"],
                     s["fraction_at_or_above_threshold"], s["collapse_lambdas"])
        else:
            report = run_graph(cfg)
            paths = emit(report, "json", cfg.out, det) + emit(report, "csv", cfg.out, det)
            for run in report.runs:
                log.info("seed %s: X %.3f  f(X) %.3f  graph %.3f  product %.3f  %s",
                         run["seed"], run["est_X"]["slope"], run["est_fX"]["slope"],
                         run["est_graph"]["slope"], run["est_product"]["slope"], run["checks"])
            if not report.passed:
                log.error("graph/product bounds violated")
                return 2
    except CheckFailed as exc:
        log.error("check failed: %s", exc)
        return 2
    except (ValueError, RuntimeError, IndexError, OSError) as exc:
        log.error("error: %s", exc)
        return 1
    for path in paths:
        log.info("wrote %s", path)
    return 0


if __name__ == "__main__":
    sys.exit(main())

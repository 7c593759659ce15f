"""``verify`` command line front end."""
from __future__ import annotations

import argparse
import os
import sys

from ..linalg import ValidationError
from .report import SuiteConfig, run_suite
from .suites import REGISTRY

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _dims(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"dims must be comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="verify", description="Run a verification suite and write a report.")
    p.add_argument("--suite", required=True, help="one of: " + ", ".join(REGISTRY))
    p.add_argument("--dims", type=_dims, default=(2,), help="comma-separated dimensions, e.g. 2,3")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0, help="root seed (VERIFY_SEED overrides it)")
    p.add_argument("--tol", type=float, default=None, help="tolerance; default depends on the check")
    p.add_argument("--dk", type=int, default=2, help="dimension of the second factor K")
    p.add_argument("--restarts", type=int, default=4, help="optimizer restarts per estimate")
    p.add_argument("--out", default=None, help="JSON report path")
    p.add_argument("--csv", default=None, help="CSV path for the records")
    p.add_argument("--timings", action="store_true", help="store wall-clock time in each record")
    p.add_argument("--quiet", action="store_true")
    return p




def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    seed = args.seed
    env = os.environ.get("VERIFY_SEED")
    try:
        if env is not None and env.strip():
            seed = int(env)
        cfg = SuiteConfig(
            suite=args.suite, dims=args.dims, trials=args.trials, seed=seed, tolerance=args.tol,
            d_k=args.dk, restarts=args.restarts, timings=args.timings,
            output_path=args.out, csv_path=args.csv,
        )
        report = run_suite(cfg)
    except (ValidationError, ValueError) as exc:
        print(f"verify: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"verify: cannot write report: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    summary = report.summary
    if not args.quiet:
        print(
            f"{cfg.suite}: {len(report.records)} records, pass={summary['pass']} "
            f"heuristic_pass={summary['heuristic_pass']} fail={summary['fail']} "
            f"infinite_skip={summary['infinite_skip']} min_slack={summary['min_slack']} "
            f"max_residual={summary['max_residual']} ({report.runtime_ms:.0f} ms)"
        )
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

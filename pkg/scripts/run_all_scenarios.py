#!/usr/bin/env python3
"""Run every built-in scenario and print a one-line summary per frame."""

import argparse
import sys

from qrf.runner import run_scenario
from qrf.scenarios import get_scenario, list_scenarios


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--tol", type=float, default=1e-9)
    args = parser.parse_args()

    all_pass = True
    print(f"{'scenario':<16} {'pass':<6} {'sharp':<6} {'loc':<6} {'checks':<7} "
          f"{'worst asserted delta':<22} wall")
    for name, _ in list_scenarios():
        report = run_scenario(get_scenario(name, trials=args.trials, seed=args.seed, tol=args.tol))
        asserted = [c.delta for c in report.checks if c.passed is not None]
        worst = max(asserted) if asserted else 0.0
        cls = report.classification
        print(
            f"{name:<16} {str(report.passed).lower():<6} {str(cls['sharp']).lower():<6} "
            f"{str(cls['localizable']).lower():<6} {len(report.checks):<7} "
            f"{worst:<22.3e} {report.wall_time:.2f}s"
        )
        all_pass = all_pass and report.passed
    return 0 if all_pass else 1


if __name__ == "__main__":
    sys.exit(main())

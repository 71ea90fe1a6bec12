"""Command-line scenario runner: list built-ins, run the check suite, emit reports."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import QrfError
from .reporting import emit
from .runner import run_scenario
from .scenarios import get_scenario, list_scenarios, load_scenario_file


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrf",
        description="Verify operator-valued integration and frame relativization "
        "properties on built-in or file-defined scenarios.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list built-in scenarios")

    run = sub.add_parser("run", help="run the full check suite on a scenario")
    run.add_argument(
        "--scenario",
        required=True,
        help="built-in scenario name, or 'file:PATH' / a .json path for a scenario file",
    )
    run.add_argument("--seed", type=int, default=0, help="run seed (default 0)")
    run.add_argument("--trials", type=int, default=100, help="random draws per check (default 100)")
    run.add_argument(
        "--tol",
        type=float,
        default=1e-9,
        help="pass threshold for norm-level checks (default 1e-9); identity-level "
        "tolerances are fixed by the verification contract",
    )
    run.add_argument("--format", choices=("text", "json", "csv"), default="text")
    run.add_argument("--out", default=None, help="write the report to a file instead of stdout")
    return parser


def _load(args) -> object:
    ref = args.scenario
    if ref.startswith("file:") or ref.endswith(".json"):
        path = ref[len("file:"):] if ref.startswith("file:") else ref
        return load_scenario_file(path, trials=args.trials, seed=args.seed, tol=args.tol)
    return get_scenario(ref, trials=args.trials, seed=args.seed, tol=args.tol)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "list":
        for name, desc in list_scenarios():
            print(f"{name:<16} {desc}")
        return 0

    try:
        scenario = _load(args)
        report = run_scenario(scenario)
    except json.JSONDecodeError as err:
        print(
            f"error: malformed scenario JSON at line {err.lineno} column {err.colno}: {err.msg}",
            file=sys.stderr,
        )
        return 2
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except QrfError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    rendered = emit(report, args.format)
    if args.out:
        Path(args.out).write_text(rendered)
    else:
        sys.stdout.write(rendered)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Write every built-in scenario (and the broken-covariance control) as JSON
files usable with `qrf run --scenario file:PATH`."""

import argparse
import json
import sys
from pathlib import Path

from qrf.scenarios import broken_covariance_scenario, get_scenario, list_scenarios, scenario_to_json


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir", nargs="?", default="scenario-files")
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    scenarios = [get_scenario(name) for name, _ in list_scenarios()]
    scenarios.append(broken_covariance_scenario())
    for sc in scenarios:
        path = outdir / f"{sc.name}.json"
        path.write_text(json.dumps(scenario_to_json(sc), indent=2) + "\n")
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

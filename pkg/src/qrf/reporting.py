"""Check records, scenario reports, and deterministic text/json/csv emission."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

# One-line statement of the property each check certifies; shown in text reports.
CLAIMS = {
    "frame_covariance": "frame effects transform covariantly with the reference unitaries",
    "integral_pairing": "product-state expectations of the integral match the scalar sums",
    "integral_linearity": "integration is linear in the operator function",
    "integral_adjoint": "integration intertwines the adjoint",
    "integral_positivity": "positive-valued functions integrate to positive operators",
    "integral_unitality": "the constant identity function integrates to the identity",
    "integral_contraction": "integration does not increase the sup norm",
    "integral_multiplicative": "integration is multiplicative against sharp measures",
    "integral_injective": "localizing states reconstruct the integrand exactly",
    "integral_transform": "point maps and channels pull through the integral",
    "relativize_well_defined": "output is independent of the coset representatives",
    "relativize_linearity": "relativization is linear",
    "relativize_adjoint": "relativization intertwines the adjoint",
    "relativize_unitality": "relativization maps the identity to the identity",
    "relativize_contraction": "relativization does not increase the operator norm",
    "relativize_multiplicative": "relativization is multiplicative for sharp frames",
    "relativize_injective": "localizable frames let relativized operators be read back",
    "relativize_cp_n1": "positivity certified by Gram sampling (no ampliation)",
    "relativize_cp_n2": "2-positivity certified by Gram sampling",
    "relativize_cp_n3": "3-positivity certified by Gram sampling",
    "relativize_invariance": "outputs commute with the joint group action",
}


@dataclass
class CheckResult:
    """Outcome of one numerical check.

    ``passed`` is None for informational results that the theory does not
    assert in the scenario at hand (the note says why).
    """

    check: str
    delta: float
    tol: float
    passed: bool | None
    lhs: float | None = None
    rhs: float | None = None
    note: str = ""

    def record(self, scenario: str) -> dict:
        return {
            "check": self.check,
            "scenario": scenario,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "delta": self.delta,
            "tol": self.tol,
            "pass": self.passed,
            "note": self.note,
        }


@dataclass
class Report:
    """All check results for one scenario run."""

    scenario: str
    seed: int
    trials: int
    tol: float
    classification: dict
    checks: list[CheckResult] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.passed is not None)

    def to_obj(self) -> dict:
        return {
            "scenario": self.scenario,
            "seed": self.seed,
            "trials": self.trials,
            "tol": self.tol,
            "classification": {
                "sharp": self.classification["sharp"],
                "localizable": self.classification["localizable"],
            },
            "checks": [c.record(self.scenario) for c in self.checks],
            "pass": self.passed,
            "wall_time": self.wall_time,
        }

    @staticmethod
    def from_obj(obj: dict) -> "Report":
        checks = [
            CheckResult(
                check=r["check"],
                delta=float(r["delta"]),
                tol=float(r["tol"]),
                passed=r["pass"],
                lhs=None if r["lhs"] is None else float(r["lhs"]),
                rhs=None if r["rhs"] is None else float(r["rhs"]),
                note=r.get("note", ""),
            )
            for r in obj["checks"]
        ]
        return Report(
            scenario=obj["scenario"],
            seed=int(obj["seed"]),
            trials=int(obj["trials"]),
            tol=float(obj["tol"]),
            classification={
                "sharp": bool(obj["classification"]["sharp"]),
                "localizable": bool(obj["classification"]["localizable"]),
            },
            checks=checks,
            wall_time=float(obj["wall_time"]),
        )


# -- serialization --------------------------------------------------------------


def _fmt_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError("non-finite float in report")
    if x == 0.0:
        x = 0.0  # normalize -0.0 so re-emission is byte-stable
    return format(x, ".17g")


def _write(o, out: io.StringIO, indent: int) -> None:
    pad = "  " * indent
    if o is None:
        out.write("null")
    elif o is True:
        out.write("true")
    elif o is False:
        out.write("false")
    elif isinstance(o, float):
        out.write(_fmt_float(o))
    elif isinstance(o, int):
        out.write(str(o))
    elif isinstance(o, str):
        out.write(json.dumps(o))
    elif isinstance(o, dict):
        if not o:
            out.write("{}")
            return
        out.write("{\n")
        for i, (k, v) in enumerate(o.items()):
            out.write(f'{pad}  {json.dumps(str(k))}: ')
            _write(v, out, indent + 1)
            out.write(",\n" if i + 1 < len(o) else "\n")
        out.write(pad + "}")
    elif isinstance(o, (list, tuple)):
        if not o:
            out.write("[]")
            return
        out.write("[\n")
        for i, v in enumerate(o):
            out.write(pad + "  ")
            _write(v, out, indent + 1)
            out.write(",\n" if i + 1 < len(o) else "\n")
        out.write(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(o)!r}")


def dumps(obj) -> str:
    """Deterministic JSON with every float at 17 significant digits."""
    out = io.StringIO()
    _write(obj, out, 0)
    out.write("\n")
    return out.getvalue()


def _status(passed: bool | None) -> str:
    if passed is None:
        return "INFO"
    return "PASS" if passed else "FAIL"


def emit(report: Report, fmt: str = "text") -> str:
    """Serialize a report as text, json or csv."""
    if fmt == "json":
        return dumps(report.to_obj())
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["check", "scenario", "lhs", "rhs", "delta", "tol", "pass", "note"])
        for c in report.checks:
            r = c.record(report.scenario)
            writer.writerow(
                [
                    r["check"],
                    r["scenario"],
                    "" if r["lhs"] is None else _fmt_float(r["lhs"]),
                    "" if r["rhs"] is None else _fmt_float(r["rhs"]),
                    _fmt_float(r["delta"]),
                    _fmt_float(r["tol"]),
                    "" if r["pass"] is None else str(r["pass"]).lower(),
                    r["note"],
                ]
            )
        return out.getvalue()
    if fmt == "text":
        lines = [
            f"scenario: {report.scenario}",
            f"seed={report.seed} trials={report.trials} tol={report.tol:g}",
            "classification: sharp={sharp} localizable={localizable}".format(
                sharp=str(report.classification["sharp"]).lower(),
                localizable=str(report.classification["localizable"]).lower(),
            ),
        ]
        for c in report.checks:
            claim = CLAIMS.get(c.check, "")
            note = f" [{c.note}]" if c.note else ""
            lines.append(
                f"  [{_status(c.passed)}] {c.check:<26} delta={c.delta:.3e} "
                f"tol={c.tol:.1e}  {claim}{note}"
            )
        lines.append(
            f"result: {'PASS' if report.passed else 'FAIL'} "
            f"(wall_time {report.wall_time:.2f}s)"
        )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")

"""Execute the full check suite for one scenario and assemble its report.

Checks run in a fixed order with independently seeded substreams spawned from
the run seed, so identical (scenario, seed, trials, tol) inputs produce
identical reports apart from wall time.
"""

from __future__ import annotations

import time

import numpy as np

from . import sampling
from .integrate import (
    RECONSTRUCTION_TOL,
    check_contraction,
    check_injective,
    check_linear_pos_adjoint,
    check_multiplicative,
    check_pairing,
    check_transform,
    check_unitality,
    random_function,
)
from .povm import is_localizable, is_sharp
from .relativize import (
    Relativizer,
    check_cp,
    check_frame,
    check_invariance,
    check_relativize_properties,
    check_well_defined,
)
from .reporting import CheckResult, Report
from .scenarios import Scenario

# substream indices, one per check family
_STREAMS = [
    "pairing",
    "linear_pos_adjoint",
    "contraction",
    "multiplicative",
    "injective",
    "transform",
    "well_defined",
    "properties",
    "cp1",
    "cp2",
    "cp3",
    "invariance",
]


def _rngs(seed: int) -> dict[str, np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(len(_STREAMS))
    return {name: np.random.default_rng(c) for name, c in zip(_STREAMS, children)}


def _fold(results: list[CheckResult]) -> CheckResult:
    """Keep the worst (largest-delta) result; pass only if every instance passed."""
    worst = max(results, key=lambda r: r.delta)
    if worst.passed is None:
        return worst
    passed = all(bool(r.passed) for r in results)
    return CheckResult(
        check=worst.check,
        delta=worst.delta,
        tol=worst.tol,
        passed=passed,
        lhs=worst.lhs,
        rhs=worst.rhs,
        note=worst.note,
    )


def run_scenario(sc: Scenario) -> Report:
    """Run every check against the scenario; report one record per check."""
    t0 = time.perf_counter()
    sc.validate()
    frame, rep_s = sc.frame, sc.rep_s
    E = frame.povm
    dim_s = rep_s.dim
    rngs = _rngs(sc.seed)
    trials = sc.trials
    tol = sc.tol

    sharp = is_sharp(E, tol)
    localizable = is_localizable(E, tol)
    checks: list[CheckResult] = [check_frame(frame, tol)]

    # integration property suite against the frame POVM
    rng = rngs["pairing"]
    pairing_results = []
    n_functions = 10
    states_per_fn = max(1, (2 * trials) // n_functions)
    for _ in range(n_functions):
        f = random_function(rng, E.space_size, dim_s)
        pairing_results.append(
            check_pairing(f, E, rng, n_states=states_per_fn)
        )
    checks.append(_fold(pairing_results))

    lin, adj, pos = check_linear_pos_adjoint(
        E, dim_s, rngs["linear_pos_adjoint"], trials=trials
    )
    checks.extend([lin, adj, pos])
    checks.append(check_unitality(E, dim_s))

    rng = rngs["contraction"]
    checks.append(
        _fold(
            [
                check_contraction(
                    random_function(rng, E.space_size, dim_s), E, tol
                )
                for _ in range(trials)
            ]
        )
    )

    rng = rngs["multiplicative"]
    checks.append(
        _fold(
            [
                check_multiplicative(
                    random_function(rng, E.space_size, dim_s),
                    random_function(rng, E.space_size, dim_s),
                    E,
                    tol,
                )
                for _ in range(trials)
            ]
        )
    )

    if localizable:
        rng = rngs["injective"]
        inj_results = []
        for _ in range(min(trials, 25)):
            f = random_function(rng, E.space_size, dim_s)
            inj_results.append(check_injective(f, f, E, int_tol=tol))
        checks.append(_fold(inj_results))
    else:
        checks.append(
            CheckResult(
                "integral_injective",
                delta=0.0,
                tol=RECONSTRUCTION_TOL,
                passed=None,
                note="not asserted (not localizable)",
            )
        )

    rng = rngs["transform"]
    transform_results = []
    for _ in range(max(1, trials // 2)):
        target_size = int(rng.integers(1, 5))
        phi = sampling.random_point_map(rng, E.space_size, target_size)
        f = random_function(rng, target_size, dim_s)
        psi = sampling.random_kraus_channel(rng, E.dim)
        transform_results.append(check_transform(f, E, phi, psi, tol))
    checks.append(_fold(transform_results))

    # relativization suite
    checks.append(
        check_well_defined(
            frame, rep_s, sc.basepoint, rngs["well_defined"], trials=min(trials, 25), tol=tol
        )
    )
    checks.extend(
        check_relativize_properties(
            frame, rep_s, sc.basepoint, rngs["properties"], trials=trials, tol=tol
        )
    )
    for n in (1, 2, 3):
        checks.append(
            check_cp(
                frame, rep_s, sc.basepoint, n, trials, rngs[f"cp{n}"]
            )
        )

    rng = rngs["invariance"]
    R = Relativizer(frame, rep_s, sc.basepoint)
    inv_results = []
    for _ in range(min(trials, 25)):
        A = sampling.random_combination(rng, R.invariant_basis)
        inv_results.append(
            check_invariance(frame, rep_s, R.apply(A), tol)
        )
    checks.append(_fold(inv_results))

    return Report(
        scenario=sc.name,
        seed=sc.seed,
        trials=sc.trials,
        tol=sc.tol,
        classification={"sharp": sharp, "localizable": localizable},
        checks=checks,
        wall_time=time.perf_counter() - t0,
    )

"""Acceptance gate: the eight exit criteria of the verification suite.

Each test pins the stated tolerance, runs over the built-in scenario catalog,
and prints one pass/fail line (run pytest with -s to see them).  Expected
values come from independent oracles: explicit-loop scalar sums, brute-force
Kronecker assembly, and closed-form fixtures frozen after being recomputed
here.
"""

import json
import re

import numpy as np
import pytest

from qrf.errors import NotInvariantError
from qrf.integrate import (
    OperatorFunction,
    check_linear_pos_adjoint,
    check_contraction,
    check_transform,
    check_unitality,
    fn_add,
    fn_scale,
    integrate,
    random_function,
    reconstruct_function,
    sup_norm,
)
from qrf.linalg import adjoint, basis_projector, kron, op_norm
from qrf.povm import is_localizable, is_sharp
from qrf.relativize import (
    Relativizer,
    check_cp,
    check_frame,
    check_well_defined,
    covariance_defect,
    relativize,
)
from qrf.reporting import emit
from qrf.runner import run_scenario
from qrf.sampling import (
    random_combination,
    random_hermitian,
    random_kraus_channel,
    random_point_map,
    random_state,
)
from qrf.scenarios import broken_covariance_scenario, get_scenario, list_scenarios

ALL_SCENARIOS = [name for name, _ in list_scenarios()]
SHARP_TRIO = ["z2-sharp", "z6-regular", "d4-regular"]


def _announce(num: int, label: str, passed: bool) -> None:
    print(f"[ACCEPTANCE] criterion {num} ({label}): {'PASS' if passed else 'FAIL'}")


def test_criterion_1_pairing_contract():
    """200 seeded random product states per scenario, pairing gap <= 1e-10."""
    tol = 1e-10
    worst = 0.0
    for name in ALL_SCENARIOS:
        sc = get_scenario(name, seed=1)
        rng = np.random.default_rng(sc.seed)
        E = sc.frame.povm
        dim_s = sc.rep_s.dim
        for batch in range(10):
            f = random_function(rng, E.space_size, dim_s)
            M = integrate(f, E)
            for _ in range(20):
                rho = random_state(rng, dim_s)
                omega = random_state(rng, E.dim)
                # oracle: the scalar sum, computed with explicit loops
                scalar = sum(
                    complex(np.trace(rho @ f.values[x]))
                    * complex(np.trace(omega @ E.effects[x]))
                    for x in range(E.space_size)
                )
                got = complex(np.trace(kron(rho, omega) @ M))
                worst = max(worst, abs(got - scalar))
    ok = worst <= tol
    _announce(1, "pairing contract", ok)
    assert ok, f"worst pairing gap {worst:.3e} > {tol:g}"


def test_criterion_2_integration_map_properties():
    """Linearity 1e-10, adjoint 1e-12, positivity 1e-9, contraction -1e-9,
    unitality 1e-11, over 100 draws per scenario."""
    for name in ALL_SCENARIOS:
        sc = get_scenario(name, seed=2)
        rng = np.random.default_rng(sc.seed)
        E = sc.frame.povm
        dim_s = sc.rep_s.dim
        lin, adj, pos = check_linear_pos_adjoint(E, dim_s, rng, trials=100)
        assert lin.delta <= 1e-10, f"{name}: linearity {lin.delta:.3e}"
        assert adj.delta <= 1e-12, f"{name}: adjoint {adj.delta:.3e}"
        assert pos.delta <= 1e-9, f"{name}: positivity {pos.delta:.3e}"
        for _ in range(100):
            res = check_contraction(random_function(rng, E.space_size, dim_s), E, tol=1e-9)
            assert res.passed, f"{name}: contraction margin {-res.delta:.3e} < -1e-9"
        unit = check_unitality(E, dim_s, tol=1e-11)
        assert unit.passed, f"{name}: unitality {unit.delta:.3e}"
    _announce(2, "integration map properties", True)


def test_criterion_3_sharp_multiplicative_and_noisy_defect():
    """|Y(AB) - Y(A)Y(B)| <= 1e-9 on sharp scenarios over 100 invariant pairs;
    the pinned noisy fixture defect matches its brute-force oracle and
    exceeds 0.01."""
    for name in SHARP_TRIO:
        sc = get_scenario(name, seed=3)
        rng = np.random.default_rng(sc.seed)
        R = Relativizer(sc.frame, sc.rep_s, sc.basepoint)
        worst = 0.0
        for _ in range(100):
            A = random_combination(rng, R.invariant_basis)
            B = random_combination(rng, R.invariant_basis)
            worst = max(worst, op_norm(R.apply(A @ B) - R.apply(A) @ R.apply(B)))
        assert worst <= 1e-9, f"{name}: multiplicativity defect {worst:.3e}"

    # pinned fixture on the smeared frame: A = B = |0><0|
    sc = get_scenario("z2-noisy")
    R = Relativizer(sc.frame, sc.rep_s, 0)
    A = basis_projector(2, 0)
    delta = op_norm(R.apply(A) @ R.apply(A) - R.apply(A @ A))
    # brute-force oracle, assembled with explicit loops
    yA = np.zeros((4, 4), dtype=complex)
    for g in (0, 1):
        U = sc.rep_s.matrix(g)
        yA += np.kron(U @ A @ adjoint(U), sc.frame.povm.effects[g])
    oracle = float(np.linalg.svd(yA @ yA - yA, compute_uv=False)[0])
    assert abs(delta - oracle) <= 1e-10
    assert delta == pytest.approx(0.09, abs=1e-10)  # frozen closed form
    assert delta > 0.01
    _announce(3, "sharp frames multiply, noisy defect pinned", True)


def test_criterion_4_localizable_reconstruction():
    """On every norm-1 scenario: when integrals agree to 1e-9 the recovered
    difference stays below 1e-7; a one-point perturbation is detected with
    margin equal to its size within 1e-8."""
    for name in ALL_SCENARIOS:
        sc = get_scenario(name, seed=4)
        E = sc.frame.povm
        if not is_localizable(E):
            continue
        rng = np.random.default_rng(sc.seed)
        dim_s = sc.rep_s.dim
        f = random_function(rng, E.space_size, dim_s)
        g = OperatorFunction(tuple(v.copy() for v in f.values))
        Mf, Mg = integrate(f, E), integrate(g, E)
        assert op_norm(Mf - Mg) <= 1e-9
        rec_f = reconstruct_function(Mf, E, dim_s)
        rec_g = reconstruct_function(Mg, E, dim_s)
        recovered_gap = sup_norm(fn_add(rec_f, fn_scale(-1.0, rec_g)))
        assert recovered_gap <= 1e-7, f"{name}: recovered gap {recovered_gap:.3e}"
        residual = sup_norm(fn_add(rec_f, fn_scale(-1.0, f)))
        assert residual <= 1e-7, f"{name}: reconstruction residual {residual:.3e}"

        # one-point perturbation of known size
        size = 0.037
        bump = random_hermitian(rng, dim_s)
        bump = size * bump / op_norm(bump)
        values = list(f.values)
        values[0] = values[0] + bump
        g2 = OperatorFunction(tuple(values))
        rec_g2 = reconstruct_function(integrate(g2, E), E, dim_s)
        margin = sup_norm(fn_add(rec_f, fn_scale(-1.0, rec_g2)))
        assert abs(margin - size) <= 1e-8, f"{name}: margin {margin:.9f} vs {size}"
    _announce(4, "localizable frames allow exact reconstruction", True)


def test_criterion_5_transformation_identity():
    """Point-map/channel identity to 1e-9 over 50 draws per scenario."""
    for name in ALL_SCENARIOS:
        sc = get_scenario(name, seed=5)
        rng = np.random.default_rng(sc.seed)
        E = sc.frame.povm
        dim_s = sc.rep_s.dim
        for _ in range(50):
            target = int(rng.integers(1, 5))  # maps into at most 4 points
            phi = random_point_map(rng, E.space_size, target)
            f = random_function(rng, target, dim_s)
            psi = random_kraus_channel(rng, E.dim, n_kraus=2)
            res = check_transform(f, E, phi, psi, tol=1e-9)
            assert res.passed, f"{name}: transform delta {res.delta:.3e}"
    _announce(5, "transformation identity", True)


def test_criterion_6_relativization_certificates():
    """Adversarial representative swap <= 1e-9; CP Gram sampling n in {1,2,3}
    with 100 trials each and zero violations at 1e-8; invariance of every
    output <= 1e-9; covariance of every built-in frame <= 1e-10."""
    for name in ALL_SCENARIOS:
        sc = get_scenario(name, seed=6)
        rng = np.random.default_rng(sc.seed)
        assert covariance_defect(sc.frame) <= 1e-10, f"{name}: covariance"
        res = check_well_defined(sc.frame, sc.rep_s, sc.basepoint, rng, trials=20)
        assert res.delta <= 1e-9, f"{name}: representative swap {res.delta:.3e}"
        for n in (1, 2, 3):
            cp = check_cp(sc.frame, sc.rep_s, sc.basepoint, n, trials=100, rng=rng, tol=1e-8)
            assert cp.passed and cp.delta <= 1e-8, f"{name}: CP at n={n}"
        R = Relativizer(sc.frame, sc.rep_s, sc.basepoint)
        from qrf.groups import product_rep

        joint = product_rep(sc.rep_s, sc.frame.rep_r)
        for _ in range(25):
            M = R.apply(random_combination(rng, R.invariant_basis))
            defect = max(
                op_norm(joint.conj(g, M) - M) for g in sc.frame.group.elements()
            )
            assert defect <= 1e-9, f"{name}: invariance defect {defect:.3e}"
    _announce(6, "relativization certificates", True)


def test_criterion_7_negative_controls():
    """Broken covariance fails for the stated reason; non-invariant operators
    are rejected with a named defect; the non-sharp defect is positive."""
    # broken covariance: structure valid, covariance defect >= 0.5
    broken = broken_covariance_scenario()
    broken.validate()  # fails for covariance, not for malformed structure
    res = check_frame(broken.frame, 1e-9)
    assert res.passed is False
    assert res.delta >= 0.5
    report = run_scenario(broken)
    cov = next(c for c in report.checks if c.check == "frame_covariance")
    assert cov.passed is False and cov.delta >= 0.5
    assert report.passed is False

    # non-invariant operator rejected by relativization, naming the defect
    sc = get_scenario("z4-parity")
    bad = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    with pytest.raises(NotInvariantError) as err:
        relativize(sc.frame, sc.rep_s, bad, 0)
    assert err.value.defect == pytest.approx(2.0, abs=1e-12)
    assert f"{err.value.defect:.6e}" in str(err.value)

    # the non-sharp frame has a strictly positive multiplicativity defect
    noisy = get_scenario("z2-noisy")
    assert not is_sharp(noisy.frame.povm)
    R = Relativizer(noisy.frame, noisy.rep_s, 0)
    A = basis_projector(2, 0)
    assert op_norm(R.apply(A) @ R.apply(A) - R.apply(A @ A)) > 0.01
    _announce(7, "negative controls", True)


def test_criterion_8_determinism():
    """Two identically seeded runs of the full suite emit identical JSON
    reports apart from wall_time."""
    strip = lambda text: re.sub(r'"wall_time": [^\n]+', '"wall_time": X', text)
    for name in ALL_SCENARIOS:
        first = emit(run_scenario(get_scenario(name, trials=50, seed=123)), "json")
        second = emit(run_scenario(get_scenario(name, trials=50, seed=123)), "json")
        assert strip(first) == strip(second), f"{name}: reports differ"
        # sanity: the reports themselves pass
        assert json.loads(first)["pass"] is True
    _announce(8, "determinism", True)

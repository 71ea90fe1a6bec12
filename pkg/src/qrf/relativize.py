"""Quantum reference frames and relativization of system operators.

A frame is a transitive group action on a finite sample space together with a
unitary representation and a covariant POVM on the reference system.  Fixing
a basepoint x identifies the space with the cosets of its stabilizer, and
relativization sends a stabilizer-invariant system operator A to

    sum over cosets of  U_S(g_c) A U_S(g_c)*  (x)  E_(g_c . x),

the integral of the orbit function against the coset-indexed POVM.  The
checks in this module certify that the output does not depend on the chosen
coset representatives, commutes with the joint group action, and inherits the
structural properties of integration (unitality, linearity, adjoints,
contraction, complete positivity via Gram sampling, multiplicativity for
sharp frames, reconstruction for localizable ones).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import povm as povm_mod, sampling
from .errors import DimensionError, NotInvariantError, ValidationError
from .integrate import OperatorFunction, RECONSTRUCTION_TOL, reconstruct_function
from .groups import (
    FiniteGroup,
    GroupAction,
    UnitaryRep,
    invariance_defect,
    invariant_subalgebra_basis,
    is_transitive,
    orbit_bijection,
    product_rep,
    stabilizer,
)
from .linalg import DEFAULT_TOL, adjoint, as_operator, kron, max_abs, op_norm
from .reporting import CheckResult

CP_TOL = 1e-8
INVARIANCE_PRE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Frame:
    """A covariant POVM over a transitive group action, with its unitaries."""

    group: FiniteGroup
    action: GroupAction
    rep_r: UnitaryRep
    povm: povm_mod.Povm

    def validate(self, tol: float = DEFAULT_TOL) -> None:
        """Structural invariants; covariance itself is certified by check_frame."""
        self.group.validate()
        if self.action.group is not self.group and not np.array_equal(
            self.action.group.cayley, self.group.cayley
        ):
            raise ValidationError("frame action belongs to a different group")
        self.action.validate()
        self.rep_r.validate(tol)
        if len(self.rep_r.matrices) != self.group.order:
            raise ValidationError("reference representation does not match the group")
        self.povm.validate(tol)
        if self.povm.dim != self.rep_r.dim:
            raise ValidationError(
                f"POVM dim {self.povm.dim} does not match reference dim {self.rep_r.dim}"
            )
        if self.povm.space_size != self.action.space_size:
            raise ValidationError(
                f"POVM over {self.povm.space_size} points, action on "
                f"{self.action.space_size}"
            )
        if not is_transitive(self.action):
            raise ValidationError("frame action is not transitive")


def covariance_defect(frame: Frame) -> float:
    """Largest deviation |U(g) E_x U(g)* - E_(g.x)| over all (g, x)."""
    worst = 0.0
    for g in frame.group.elements():
        U = frame.rep_r.matrix(g)
        for x in range(frame.action.space_size):
            moved = U @ frame.povm.effects[x] @ adjoint(U)
            worst = max(worst, op_norm(moved - frame.povm.effects[frame.action.apply(g, x)]))
    return worst


def check_frame(frame: Frame, tol: float = DEFAULT_TOL) -> CheckResult:
    delta = covariance_defect(frame)
    return CheckResult("frame_covariance", delta=delta, tol=tol, passed=delta <= tol)


@dataclass(frozen=True, eq=False)
class RelativizedOperator:
    """A relativized system operator on the joint space, with its provenance."""

    matrix: np.ndarray
    basepoint: int
    source: np.ndarray

    def __post_init__(self):
        M = as_operator(self.matrix).copy()
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)
        A = as_operator(self.source).copy()
        A.setflags(write=False)
        object.__setattr__(self, "source", A)


class Relativizer:
    """Coset data for one (frame, system rep, basepoint) triple.

    Precomputes the stabilizer, the coset-to-point identification and both the
    default (smallest-index) and adversarial (largest-index) representative
    systems, so repeated relativizations are cheap.
    """

    def __init__(self, frame: Frame, rep_s: UnitaryRep, basepoint: int):
        if rep_s.group is not frame.group and not np.array_equal(
            rep_s.group.cayley, frame.group.cayley
        ):
            raise DimensionError("system representation belongs to a different group")
        if not 0 <= basepoint < frame.action.space_size:
            raise DimensionError(f"basepoint {basepoint} outside the sample space")
        self.frame = frame
        self.rep_s = rep_s
        self.basepoint = basepoint
        self.stabilizer = stabilizer(frame.action, basepoint)
        self.coset_space, self.points = orbit_bijection(frame.action, basepoint)
        self.min_representatives = self.coset_space.representatives
        self.max_representatives = tuple(
            max(self.coset_space.members(c)) for c in range(self.coset_space.n_cosets)
        )

    @property
    def dim_s(self) -> int:
        return self.rep_s.dim

    @property
    def dim_r(self) -> int:
        return self.frame.rep_r.dim

    @cached_property
    def invariant_basis(self) -> list[np.ndarray]:
        return invariant_subalgebra_basis(self.rep_s, self.stabilizer)

    def invariance_defect(self, A: np.ndarray) -> float:
        return invariance_defect(self.rep_s, self.stabilizer, A)

    def coset_povm(self) -> povm_mod.Povm:
        """The frame POVM re-indexed by cosets through the orbit identification."""
        return povm_mod.Povm(tuple(self.frame.povm.effects[p] for p in self.points))

    def orbit_function(self, A: np.ndarray, representatives=None) -> OperatorFunction:
        """The coset function  c -> U_S(g_c) A U_S(g_c)*."""
        reps = self.min_representatives if representatives is None else representatives
        return OperatorFunction(tuple(self.rep_s.conj(int(g), A) for g in reps))

    def apply_with_representatives(self, A: np.ndarray, representatives) -> np.ndarray:
        """Raw coset sum for an explicit representative system (no invariance guard)."""
        reps = list(representatives)
        if len(reps) != self.coset_space.n_cosets:
            raise DimensionError("need exactly one representative per coset")
        for c, g in enumerate(reps):
            if int(self.coset_space.coset_of[int(g)]) != c:
                raise ValidationError(f"element {g} does not represent coset {c}")
        out = np.zeros((self.dim_s * self.dim_r,) * 2, dtype=complex)
        for c, g in enumerate(reps):
            moved = self.rep_s.conj(int(g), A)
            out += kron(moved, self.frame.povm.effects[self.points[c]])
        return out

    def apply(self, A: np.ndarray) -> np.ndarray:
        return self.apply_with_representatives(A, self.min_representatives)


def relativize(
    frame: Frame,
    rep_s: UnitaryRep,
    A: np.ndarray,
    basepoint: int,
    invariance_tol: float = INVARIANCE_PRE_TOL,
    agreement_tol: float = DEFAULT_TOL,
) -> RelativizedOperator:
    """Relativize a stabilizer-invariant system operator at the basepoint.

    Rejects operators that are not invariant under the basepoint stabilizer
    (naming the defect), and re-verifies well-definedness by recomputing with
    the adversarial largest-index representative system.
    """
    R = Relativizer(frame, rep_s, basepoint)
    A = as_operator(A, "A")
    if A.shape[0] != rep_s.dim:
        raise DimensionError(
            f"operator dim {A.shape[0]} does not match system dim {rep_s.dim}"
        )
    if len(R.stabilizer) > 1:
        defect = R.invariance_defect(A)
        if defect > invariance_tol:
            raise NotInvariantError(defect)
    M = R.apply_with_representatives(A, R.min_representatives)
    M_adv = R.apply_with_representatives(A, R.max_representatives)
    gap = op_norm(M - M_adv)
    if gap > agreement_tol:
        raise ValidationError(
            f"representative systems disagree by {gap:.3e}; relativization ill-defined"
        )
    return RelativizedOperator(M, basepoint, A)


# -- checks ----------------------------------------------------------------------


def check_well_defined(
    frame: Frame,
    rep_s: UnitaryRep,
    basepoint: int,
    rng: np.random.Generator,
    trials: int = 20,
    tol: float = DEFAULT_TOL,
) -> CheckResult:
    """Adversarial representative swap on random invariant operators."""
    R = Relativizer(frame, rep_s, basepoint)
    basis = R.invariant_basis
    worst = 0.0
    for _ in range(trials):
        A = sampling.random_combination(rng, basis)
        gap = op_norm(
            R.apply_with_representatives(A, R.min_representatives)
            - R.apply_with_representatives(A, R.max_representatives)
        )
        worst = max(worst, gap)
    return CheckResult("relativize_well_defined", delta=worst, tol=tol, passed=worst <= tol)


def check_invariance(
    frame: Frame, rep_s: UnitaryRep, M: np.ndarray, tol: float = DEFAULT_TOL
) -> CheckResult:
    """Largest conjugation defect of M under the joint representation."""
    joint = product_rep(rep_s, frame.rep_r)
    M = as_operator(M)
    worst = 0.0
    for g in frame.group.elements():
        worst = max(worst, op_norm(joint.conj(g, M) - M))
    return CheckResult("relativize_invariance", delta=worst, tol=tol, passed=worst <= tol)


def check_cp(
    frame: Frame,
    rep_s: UnitaryRep,
    basepoint: int,
    n: int,
    trials: int,
    rng: np.random.Generator,
    tol: float = CP_TOL,
) -> CheckResult:
    """Complete positivity by Gram sampling at ampliation level n.

    Draws Y with blocks in the stabilizer-invariant subalgebra, forms the
    positive A = Y*Y, applies relativization blockwise and certifies the
    result positive.  The domain is a subalgebra rather than a full matrix
    algebra, so sampled Gram operators stand in for a Choi construction.
    """
    R = Relativizer(frame, rep_s, basepoint)
    basis = R.invariant_basis
    ds, dr = R.dim_s, R.dim_r
    worst = 0.0
    for _ in range(trials):
        Y = np.zeros((n * ds, n * ds), dtype=complex)
        for i in range(n):
            for j in range(n):
                Y[i * ds : (i + 1) * ds, j * ds : (j + 1) * ds] = sampling.random_combination(
                    rng, basis
                )
        A = adjoint(Y) @ Y
        out = np.zeros((n * ds * dr, n * ds * dr), dtype=complex)
        for i in range(n):
            for j in range(n):
                block = A[i * ds : (i + 1) * ds, j * ds : (j + 1) * ds]
                out[i * ds * dr : (i + 1) * ds * dr, j * ds * dr : (j + 1) * ds * dr] = R.apply(
                    block
                )
        w = np.linalg.eigvalsh((out + adjoint(out)) / 2)
        worst = max(worst, max(0.0, -float(w[0])))
    return CheckResult(
        f"relativize_cp_n{n}", delta=worst, tol=tol, passed=worst <= tol
    )


def check_relativize_properties(
    frame: Frame,
    rep_s: UnitaryRep,
    basepoint: int,
    rng: np.random.Generator,
    trials: int = 100,
    tol: float = DEFAULT_TOL,
    lin_tol: float = 1e-10,
    adj_tol: float = 1e-12,
    rec_tol: float = RECONSTRUCTION_TOL,
) -> list[CheckResult]:
    """Linearity, adjoints, contraction, unitality on random invariant draws,
    plus multiplicativity (asserted iff the frame is sharp) and reconstruction
    (asserted iff the frame is localizable)."""
    R = Relativizer(frame, rep_s, basepoint)
    basis = R.invariant_basis
    ds, dr = R.dim_s, R.dim_r

    lin_worst = adj_worst = contraction_excess = mult_worst = 0.0
    for _ in range(trials):
        A = sampling.random_combination(rng, basis)
        B = sampling.random_combination(rng, basis)
        a = sampling.random_unit_disk(rng)
        b = sampling.random_unit_disk(rng)
        lin_worst = max(
            lin_worst,
            op_norm(R.apply(a * A + b * B) - (a * R.apply(A) + b * R.apply(B))),
        )
        adj_worst = max(adj_worst, max_abs(R.apply(adjoint(A)) - adjoint(R.apply(A))))
        contraction_excess = max(
            contraction_excess, max(0.0, op_norm(R.apply(A)) - op_norm(A))
        )
        mult_worst = max(mult_worst, op_norm(R.apply(A @ B) - R.apply(A) @ R.apply(B)))

    unit_delta = op_norm(R.apply(np.eye(ds, dtype=complex)) - np.eye(ds * dr))

    results = [
        CheckResult("relativize_linearity", delta=lin_worst, tol=lin_tol,
                    passed=lin_worst <= lin_tol),
        CheckResult("relativize_adjoint", delta=adj_worst, tol=adj_tol,
                    passed=adj_worst <= adj_tol),
        CheckResult("relativize_contraction", delta=contraction_excess, tol=tol,
                    passed=contraction_excess <= tol),
        CheckResult("relativize_unitality", delta=unit_delta, tol=tol,
                    passed=unit_delta <= tol),
    ]

    if povm_mod.is_sharp(frame.povm, tol):
        results.append(
            CheckResult("relativize_multiplicative", delta=mult_worst, tol=tol,
                        passed=mult_worst <= tol)
        )
    else:
        results.append(
            CheckResult("relativize_multiplicative", delta=mult_worst, tol=tol,
                        passed=None, note="not asserted (non-sharp)")
        )

    coset_povm = R.coset_povm()
    if povm_mod.is_localizable(coset_povm, tol):
        residual = 0.0
        n_rec = min(trials, 20)
        for _ in range(n_rec):
            A = sampling.random_combination(rng, basis)
            f_A = R.orbit_function(A)
            rec = reconstruct_function(R.apply(A), coset_povm, ds, tol)
            point_gaps = [op_norm(u - v) for u, v in zip(rec.values, f_A.values)]
            residual = max(residual, max(point_gaps))
        results.append(
            CheckResult("relativize_injective", delta=residual, tol=rec_tol,
                        passed=residual <= rec_tol,
                        note=f"orbit function recovered at {len(coset_povm.effects)} cosets")
        )
    else:
        deficiency = 1.0 - min(op_norm(Ex) for Ex in coset_povm.effects)
        results.append(
            CheckResult("relativize_injective", delta=0.0, tol=rec_tol, passed=None,
                        lhs=deficiency, note="not asserted (not localizable)")
        )
    return results

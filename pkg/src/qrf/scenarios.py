"""Built-in verification scenarios and the scenario JSON format.

Each scenario bundles a frame (group, transitive action, reference unitaries,
covariant POVM), a system representation, and a basepoint.  The catalog spans
abelian and non-abelian groups, free actions and actions with nontrivial
stabilizers, and sharp, noisy, and norm-1-but-unsharp POVMs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .groups import (
    FiniteGroup,
    GroupAction,
    UnitaryRep,
    cyclic_group,
    cyclic_rep,
    dihedral_group,
    permutation_rep,
    regular_action,
    shift_action,
    trivial_rep,
)
from .linalg import matrix_from_json, matrix_to_json
from .povm import Povm, basis_pvm, noisy_basis_povm, povm_from_json, povm_to_json
from .relativize import Frame

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


@dataclass(frozen=True, eq=False)
class Scenario:
    """A named frame plus system representation, with run parameters."""

    name: str
    frame: Frame
    rep_s: UnitaryRep
    basepoint: int
    trials: int = 100
    seed: int = 0
    tol: float = 1e-9

    def validate(self) -> None:
        if self.trials < 1:
            raise ValidationError(f"trials must be a positive integer, got {self.trials}")
        if not self.tol > 0:
            raise ValidationError(f"tolerance must be positive, got {self.tol}")
        # structural validation never tightens below 1e-9: a strict run
        # tolerance should fail checks, not reject well-formed inputs
        self.frame.validate(max(self.tol, 1e-9))
        self.rep_s.validate(max(self.tol, 1e-9))
        if self.rep_s.group is not self.frame.group and not np.array_equal(
            self.rep_s.group.cayley, self.frame.group.cayley
        ):
            raise ValidationError("system representation belongs to a different group")
        if not 0 <= self.basepoint < self.frame.action.space_size:
            raise ValidationError(
                f"basepoint {self.basepoint} outside the sample space"
            )


def _rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _dihedral_planar_rep(group: FiniteGroup, n: int) -> UnitaryRep:
    """2-d reflection representation matching the dihedral element ordering."""
    R = _rotation(2.0 * np.pi / n)
    S = np.diag([1.0, -1.0]).astype(complex)
    mats = [np.linalg.matrix_power(R, k) for k in range(n)]
    mats += [np.linalg.matrix_power(R, k) @ S for k in range(n)]
    return UnitaryRep(group, tuple(mats))


def _z2_sharp() -> Scenario:
    g = cyclic_group(2)
    act = regular_action(g)
    frame = Frame(g, act, permutation_rep(act), basis_pvm(2))
    rep_s = UnitaryRep(g, (np.eye(2, dtype=complex), PAULI_X))
    return Scenario("z2-sharp", frame, rep_s, basepoint=0)


def _z2_noisy() -> Scenario:
    g = cyclic_group(2)
    act = regular_action(g)
    frame = Frame(g, act, permutation_rep(act), noisy_basis_povm(2, 0.2))
    rep_s = UnitaryRep(g, (np.eye(2, dtype=complex), PAULI_X))
    return Scenario("z2-noisy", frame, rep_s, basepoint=0)


def _z2_norm1() -> Scenario:
    g = cyclic_group(2)
    act = regular_action(g)
    # reference on C^3: swap unitary reverses the basis, effects overlap on e_1
    swap = np.zeros((3, 3), dtype=complex)
    swap[0, 2] = swap[1, 1] = swap[2, 0] = 1.0
    rep_r = UnitaryRep(g, (np.eye(3, dtype=complex), swap))
    povm = Povm((np.diag([1.0, 0.5, 0.0]).astype(complex), np.diag([0.0, 0.5, 1.0]).astype(complex)))
    frame = Frame(g, act, rep_r, povm)
    rep_s = UnitaryRep(g, (np.eye(2, dtype=complex), PAULI_X))
    return Scenario("z2-norm1", frame, rep_s, basepoint=0)


def _z4_parity() -> Scenario:
    g = cyclic_group(4)
    act = shift_action(g, 2)
    frame = Frame(g, act, permutation_rep(act), basis_pvm(2))
    rep_s = cyclic_rep(g, np.diag([1.0, 1.0j]))
    return Scenario("z4-parity", frame, rep_s, basepoint=0)


def _z6_regular() -> Scenario:
    g = cyclic_group(6)
    act = regular_action(g)
    frame = Frame(g, act, permutation_rep(act), basis_pvm(6))
    omega = np.exp(2j * np.pi / 6)
    rep_s = cyclic_rep(g, np.diag([omega, omega.conjugate()]))
    return Scenario("z6-regular", frame, rep_s, basepoint=0)


def _d4_regular() -> Scenario:
    g, _vertices = dihedral_group(4)
    act = regular_action(g)
    frame = Frame(g, act, permutation_rep(act), basis_pvm(8))
    rep_s = _dihedral_planar_rep(g, 4)
    return Scenario("d4-regular", frame, rep_s, basepoint=0)


def _d4_square() -> Scenario:
    g, vertices = dihedral_group(4)
    frame = Frame(g, vertices, permutation_rep(vertices), basis_pvm(4))
    rep_s = _dihedral_planar_rep(g, 4)
    return Scenario("d4-square", frame, rep_s, basepoint=0)


def _c3_on_triangle() -> Scenario:
    g = cyclic_group(3)
    act = shift_action(g, 3)
    frame = Frame(g, act, permutation_rep(act), basis_pvm(3))
    rep_s = cyclic_rep(g, _rotation(2.0 * np.pi / 3))
    return Scenario("c3-on-triangle", frame, rep_s, basepoint=0)


_CATALOG = {
    "z2-sharp": (_z2_sharp, "swap frame with the basis PVM; sharp and localizable"),
    "z2-noisy": (_z2_noisy, "swap frame smeared with 20% white noise; neither sharp nor norm-1"),
    "z2-norm1": (_z2_norm1, "swap frame on C^3 with overlapping norm-1 effects; localizable, not sharp"),
    "z4-parity": (_z4_parity, "Z4 acting on two parities; nontrivial stabilizer {0, 2}"),
    "z6-regular": (_z6_regular, "Z6 regular frame with a 2-d system representation"),
    "d4-regular": (_d4_regular, "dihedral D4 regular frame; non-abelian, free action"),
    "d4-square": (_d4_square, "D4 on the square vertices; non-abelian with reflection stabilizers"),
    "c3-on-triangle": (_c3_on_triangle, "C3 rotating the triangle vertices"),
}


def list_scenarios() -> list[tuple[str, str]]:
    """Built-in scenario names with one-line descriptions."""
    return [(name, desc) for name, (_, desc) in _CATALOG.items()]


def get_scenario(name: str, trials: int = 100, seed: int = 0, tol: float = 1e-9) -> Scenario:
    if name not in _CATALOG:
        known = ", ".join(_CATALOG)
        raise ValidationError(f"unknown scenario {name!r}; built-ins: {known}")
    factory, _ = _CATALOG[name]
    return replace(factory(), trials=trials, seed=seed, tol=tol)


def broken_covariance_scenario() -> Scenario:
    """Negative control: the swap frame with a trivial reference representation.

    The basis PVM cannot be covariant for a representation that does nothing,
    so frame certification must fail with defect |E_1 - E_0| = 1.
    """
    g = cyclic_group(2)
    act = regular_action(g)
    frame = Frame(g, act, trivial_rep(g, 2), basis_pvm(2))
    rep_s = UnitaryRep(g, (np.eye(2, dtype=complex), PAULI_X))
    return Scenario("broken-covariance", frame, rep_s, basepoint=0)


# -- JSON ------------------------------------------------------------------------


def scenario_to_json(sc: Scenario) -> dict:
    return {
        "name": sc.name,
        "group": {
            "order": sc.frame.group.order,
            "cayley": sc.frame.group.cayley.tolist(),
        },
        "action": sc.frame.action.table.tolist(),
        "rep_R": [matrix_to_json(U) for U in sc.frame.rep_r.matrices],
        "rep_S": [matrix_to_json(U) for U in sc.rep_s.matrices],
        "povm": povm_to_json(sc.frame.povm),
        "basepoint": sc.basepoint,
    }


def scenario_from_json(obj, trials: int = 100, seed: int = 0, tol: float = 1e-9) -> Scenario:
    if not isinstance(obj, dict):
        raise ValidationError("scenario must be a JSON object")
    required = {"group", "action", "rep_R", "rep_S", "povm", "basepoint"}
    missing = required - set(obj)
    if missing:
        raise ValidationError(f"scenario is missing keys: {sorted(missing)}")
    gobj = obj["group"]
    if not isinstance(gobj, dict) or not {"order", "cayley"} <= set(gobj):
        raise ValidationError("scenario group needs keys 'order' and 'cayley'")
    cayley = np.asarray(gobj["cayley"], dtype=np.intp)
    if cayley.shape != (int(gobj["order"]),) * 2:
        raise ValidationError("group order does not match the Cayley table shape")
    group = FiniteGroup(cayley, name=str(obj.get("name", "G")))
    action = GroupAction(group, np.asarray(obj["action"], dtype=np.intp))
    rep_r = UnitaryRep(group, tuple(matrix_from_json(U) for U in obj["rep_R"]))
    rep_s = UnitaryRep(group, tuple(matrix_from_json(U) for U in obj["rep_S"]))
    frame = Frame(group, action, rep_r, povm_from_json(obj["povm"]))
    sc = Scenario(
        name=str(obj.get("name", "scenario")),
        frame=frame,
        rep_s=rep_s,
        basepoint=int(obj["basepoint"]),
        trials=trials,
        seed=seed,
        tol=tol,
    )
    sc.validate()
    return sc


def load_scenario_file(path, trials: int = 100, seed: int = 0, tol: float = 1e-9) -> Scenario:
    """Parse and validate a scenario JSON file."""
    text = Path(path).read_text()
    obj = json.loads(text)
    return scenario_from_json(obj, trials=trials, seed=seed, tol=tol)

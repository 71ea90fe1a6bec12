"""Finite groups, unitary representations, transitive actions, cosets.

Groups are explicit Cayley tables with the identity conventionally stored at
index 0.  Actions and representations are tables indexed by element, so all
group-theoretic bookkeeping is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionError, ValidationError
from .linalg import DEFAULT_TOL, adjoint, as_operator, matrix_units, max_abs, op_norm


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its Cayley table: cayley[g, h] = g * h."""

    cayley: np.ndarray
    name: str = "G"

    def __post_init__(self):
        table = np.asarray(self.cayley, dtype=np.intp).copy()
        table.setflags(write=False)
        object.__setattr__(self, "cayley", table)

    @property
    def order(self) -> int:
        return self.cayley.shape[0]

    def elements(self) -> range:
        return range(self.order)

    def mul(self, g: int, h: int) -> int:
        return int(self.cayley[g, h])

    @cached_property
    def identity(self) -> int:
        n = self.order
        idx = np.arange(n)
        for e in range(n):
            if np.array_equal(self.cayley[e], idx) and np.array_equal(self.cayley[:, e], idx):
                return e
        raise ValidationError(f"group {self.name} has no identity element")

    @cached_property
    def inverse(self) -> np.ndarray:
        e = self.identity
        inv = np.full(self.order, -1, dtype=np.intp)
        rows, cols = np.nonzero(self.cayley == e)
        inv[rows] = cols
        if np.any(inv < 0):
            raise ValidationError(f"group {self.name} has elements without inverses")
        inv.setflags(write=False)
        return inv

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    def validate(self) -> None:
        """Check the full group axioms; raises ValidationError naming the failure."""
        C = self.cayley
        n = self.order
        if C.shape != (n, n):
            raise ValidationError(f"Cayley table must be square, got {C.shape}")
        if C.min() < 0 or C.max() >= n:
            raise ValidationError("Cayley table entries out of range")
        idx = np.arange(n)
        for g in range(n):
            if not np.array_equal(np.sort(C[g]), idx):
                raise ValidationError(f"Cayley row {g} is not a permutation")
            if not np.array_equal(np.sort(C[:, g]), idx):
                raise ValidationError(f"Cayley column {g} is not a permutation")
        # associativity on all triples: (g h) k == g (h k)
        if not np.array_equal(C[C], C[:, C]):
            raise ValidationError("Cayley table is not associative")
        self.identity
        self.inverse


def cyclic_group(n: int) -> FiniteGroup:
    """The cyclic group of order n, element k acting as addition by k mod n."""
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, name=f"Z{n}")


@dataclass(frozen=True, eq=False)
class GroupAction:
    """A left action table: table[g, x] = g.x on a finite space."""

    group: FiniteGroup
    table: np.ndarray

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.intp).copy()
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @property
    def space_size(self) -> int:
        return self.table.shape[1]

    def apply(self, g: int, x: int) -> int:
        return int(self.table[g, x])

    def validate(self) -> None:
        T = self.table
        n, m = self.group.order, self.space_size
        if T.shape != (n, m):
            raise ValidationError(f"action table must be {n} x {m}, got {T.shape}")
        idx = np.arange(m)
        for g in range(n):
            if not np.array_equal(np.sort(T[g]), idx):
                raise ValidationError(f"group element {g} does not act as a permutation")
        if not np.array_equal(T[self.group.identity], idx):
            raise ValidationError("identity does not act trivially")
        # compatibility (g h).x == g.(h.x) for all pairs
        C = self.group.cayley
        if not np.array_equal(T[C], T[:, T]):
            raise ValidationError("action is not compatible with the group product")


def regular_action(group: FiniteGroup) -> GroupAction:
    """The group acting on itself by left multiplication."""
    return GroupAction(group, group.cayley)


def shift_action(group: FiniteGroup, m: int) -> GroupAction:
    """Cyclic group element g acting on {0..m-1} by x -> (x + g) mod m.

    Only a group action when the group is cyclic of order divisible by m.
    """
    idx = np.arange(m)
    table = (idx[None, :] + np.arange(group.order)[:, None]) % m
    return GroupAction(group, table)


def trivial_action(group: FiniteGroup, m: int) -> GroupAction:
    return GroupAction(group, np.tile(np.arange(m), (group.order, 1)))


def group_from_permutations(perms, name: str = "G") -> tuple[FiniteGroup, GroupAction]:
    """Build a group and its defining action from a closed list of permutations.

    The first permutation must be the identity; element order follows the
    input list.  Composition convention: (p * q)(x) = p(q(x)).
    """
    perms = [tuple(int(v) for v in p) for p in perms]
    m = len(perms[0])
    if perms[0] != tuple(range(m)):
        raise ValidationError("first permutation must be the identity")
    index = {p: i for i, p in enumerate(perms)}
    if len(index) != len(perms):
        raise ValidationError("permutation list contains duplicates")
    n = len(perms)
    cayley = np.zeros((n, n), dtype=np.intp)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            comp = tuple(p[q[x]] for x in range(m))
            if comp not in index:
                raise ValidationError("permutation list is not closed under composition")
            cayley[i, j] = index[comp]
    group = FiniteGroup(cayley, name=name)
    action = GroupAction(group, np.asarray(perms, dtype=np.intp))
    return group, action


def dihedral_group(n: int) -> tuple[FiniteGroup, GroupAction]:
    """Dihedral group of order 2n acting on the n polygon vertices.

    Elements 0..n-1 are the rotations x -> x + k, elements n..2n-1 the
    reflections x -> k - x (all mod n).
    """
    perms = [tuple((x + k) % n for x in range(n)) for k in range(n)]
    perms += [tuple((k - x) % n for x in range(n)) for k in range(n)]
    return group_from_permutations(perms, name=f"D{n}")


# -- subgroups and cosets -------------------------------------------------------


def is_subgroup(group: FiniteGroup, elements) -> bool:
    """Closure under product and inverse, and containing the identity."""
    members = {int(g) for g in elements}
    if not members or group.identity not in members:
        return False
    if any(g < 0 or g >= group.order for g in members):
        return False
    for g in members:
        if group.inv(g) not in members:
            return False
        for h in members:
            if group.mul(g, h) not in members:
                return False
    return True


@dataclass(frozen=True, eq=False)
class CosetSpace:
    """Left cosets gH of a subgroup, with deterministic representatives."""

    subgroup: tuple[int, ...]
    representatives: tuple[int, ...]
    coset_of: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coset_of, dtype=np.intp).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coset_of", arr)

    @property
    def n_cosets(self) -> int:
        return len(self.representatives)

    def members(self, c: int) -> list[int]:
        return [int(g) for g in np.nonzero(self.coset_of == c)[0]]


def cosets(group: FiniteGroup, subgroup) -> CosetSpace:
    """Partition the group into left cosets of a subgroup.

    The identity coset comes first and is represented by the identity; every
    other coset is represented by its smallest element index.
    """
    sub = tuple(sorted({int(h) for h in subgroup}))
    if not is_subgroup(group, sub):
        raise ValidationError(f"{list(sub)} is not a subgroup of {group.name}")
    n = group.order
    coset_of = np.full(n, -1, dtype=np.intp)
    reps = [group.identity]
    for h in sub:
        coset_of[group.mul(group.identity, h)] = 0
    for g in range(n):
        if coset_of[g] >= 0:
            continue
        c = len(reps)
        reps.append(g)
        for h in sub:
            coset_of[group.mul(g, h)] = c
    if len(reps) * len(sub) != n:
        raise ValidationError("cosets do not partition the group")
    return CosetSpace(sub, tuple(reps), coset_of)


def stabilizer(action: GroupAction, x: int) -> list[int]:
    """All group elements fixing the point x."""
    if not 0 <= x < action.space_size:
        raise DimensionError(f"point {x} outside space of size {action.space_size}")
    return [g for g in action.group.elements() if action.apply(g, x) == x]


def is_transitive(action: GroupAction) -> bool:
    """True iff the orbit of point 0 is the whole space."""
    return len(set(action.table[:, 0].tolist())) == action.space_size


def orbit_bijection(action: GroupAction, x: int) -> tuple[CosetSpace, np.ndarray]:
    """Identify the space with the cosets of the stabilizer of x.

    Returns the coset space of stab(x) and the array point_of[c] = rep_c . x,
    which is a bijection from cosets to points for transitive actions.
    """
    if not is_transitive(action):
        raise ValidationError("action is not transitive; orbit map is not onto")
    stab = stabilizer(action, x)
    cs = cosets(action.group, stab)
    points = np.array([action.apply(g, x) for g in cs.representatives], dtype=np.intp)
    if cs.n_cosets != action.space_size or len(set(points.tolist())) != cs.n_cosets:
        raise ValidationError("coset-to-point map failed to be a bijection")
    points.setflags(write=False)
    return cs, points


# -- unitary representations ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    """A matrix-valued homomorphism g -> U(g) of a finite group."""

    group: FiniteGroup
    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = []
        for U in self.matrices:
            M = as_operator(U, "representation matrix").copy()
            M.setflags(write=False)
            mats.append(M)
        object.__setattr__(self, "matrices", tuple(mats))

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def conj(self, g: int, A: np.ndarray) -> np.ndarray:
        """The induced action g.A = U(g) A U(g)*."""
        U = self.matrices[g]
        return U @ A @ adjoint(U)

    def validate(self, tol: float = DEFAULT_TOL) -> None:
        n = self.group.order
        if len(self.matrices) != n:
            raise ValidationError(
                f"representation has {len(self.matrices)} matrices for order {n}"
            )
        d = self.dim
        eye = np.eye(d)
        for g, U in enumerate(self.matrices):
            if U.shape != (d, d):
                raise ValidationError("representation matrices have mixed dimensions")
            if max_abs(U @ adjoint(U) - eye) > tol:
                raise ValidationError(f"representation matrix {g} is not unitary")
        if max_abs(self.matrices[self.group.identity] - eye) > tol:
            raise ValidationError("representation does not map the identity to 1")
        for g in range(n):
            for h in range(n):
                prod = self.matrices[g] @ self.matrices[h]
                defect = max_abs(prod - self.matrices[self.group.mul(g, h)])
                if defect > tol:
                    raise ValidationError(
                        f"representation is not a homomorphism at ({g}, {h}): "
                        f"defect {defect:.3e}"
                    )


def trivial_rep(group: FiniteGroup, dim: int) -> UnitaryRep:
    eye = np.eye(dim, dtype=complex)
    return UnitaryRep(group, tuple(eye for _ in group.elements()))


def permutation_rep(action: GroupAction) -> UnitaryRep:
    """Permutation matrices U(g)|x> = |g.x> on the action space."""
    m = action.space_size
    mats = []
    for g in action.group.elements():
        P = np.zeros((m, m), dtype=complex)
        P[action.table[g], np.arange(m)] = 1.0
        mats.append(P)
    return UnitaryRep(action.group, tuple(mats))


def regular_rep(group: FiniteGroup) -> UnitaryRep:
    return permutation_rep(regular_action(group))


def cyclic_rep(group: FiniteGroup, generator: np.ndarray) -> UnitaryRep:
    """Representation of a cyclic group sending element k to generator**k."""
    V = as_operator(generator, "generator")
    mats = [np.eye(V.shape[0], dtype=complex)]
    for _ in range(1, group.order):
        mats.append(mats[-1] @ V)
    return UnitaryRep(group, tuple(mats))


def product_rep(rep_s: UnitaryRep, rep_r: UnitaryRep) -> UnitaryRep:
    """The tensor-product representation g -> U_S(g) (x) U_R(g)."""
    if rep_s.group is not rep_r.group and not np.array_equal(
        rep_s.group.cayley, rep_r.group.cayley
    ):
        raise DimensionError("representations belong to different groups")
    mats = tuple(
        np.kron(rep_s.matrices[g], rep_r.matrices[g]) for g in rep_s.group.elements()
    )
    return UnitaryRep(rep_s.group, mats)


# -- invariant subalgebras ------------------------------------------------------


def twirl(rep: UnitaryRep, subgroup, A: np.ndarray) -> np.ndarray:
    """Average of the subgroup action, P(A) = |H|^-1 sum_h U(h) A U(h)*.

    P projects onto the fixed-point space of the subgroup.
    """
    members = sorted({int(h) for h in subgroup})
    acc = np.zeros((rep.dim, rep.dim), dtype=complex)
    for h in members:
        acc += rep.conj(h, A)
    return acc / len(members)


def invariant_subalgebra_basis(
    rep: UnitaryRep, subgroup, rank_tol: float = 1e-8
) -> list[np.ndarray]:
    """Orthonormal Hilbert-Schmidt basis of {A : U(h) A U(h)* = A for h in H}.

    Computed by twirling the matrix units and Gram-Schmidt orthonormalizing;
    vectors with residual norm below rank_tol are dropped.
    """
    basis: list[np.ndarray] = []
    for unit in matrix_units(rep.dim):
        v = twirl(rep, subgroup, unit)
        for _ in range(2):  # second pass stabilizes near-dependent vectors
            for B in basis:
                v = v - np.trace(adjoint(B) @ v) * B
        nrm = float(np.sqrt(np.trace(adjoint(v) @ v).real))
        if nrm > rank_tol:
            basis.append(v / nrm)
    return basis


def invariance_defect(rep: UnitaryRep, subgroup, A: np.ndarray) -> float:
    """Largest deviation |U(h) A U(h)* - A| over the subgroup."""
    A = as_operator(A)
    return max(op_norm(rep.conj(int(h), A) - A) for h in subgroup)


# -- JSON ------------------------------------------------------------------------


def bundle_to_json(group: FiniteGroup, action: GroupAction, rep: UnitaryRep) -> dict:
    """Encode a group with one action and one representation in a single object."""
    from .linalg import matrix_to_json

    return {
        "order": group.order,
        "cayley": group.cayley.tolist(),
        "action": action.table.tolist(),
        "rep": [matrix_to_json(U) for U in rep.matrices],
    }


def bundle_from_json(obj) -> tuple[FiniteGroup, GroupAction, UnitaryRep]:
    from .linalg import matrix_from_json

    if not isinstance(obj, dict) or not {"order", "cayley", "action", "rep"} <= set(obj):
        raise ValidationError(
            "group bundle needs keys 'order', 'cayley', 'action', 'rep'"
        )
    cayley = np.asarray(obj["cayley"], dtype=np.intp)
    if cayley.shape != (int(obj["order"]),) * 2:
        raise ValidationError("group order does not match the Cayley table shape")
    group = FiniteGroup(cayley)
    action = GroupAction(group, np.asarray(obj["action"], dtype=np.intp))
    rep = UnitaryRep(group, tuple(matrix_from_json(U) for U in obj["rep"]))
    return group, action, rep

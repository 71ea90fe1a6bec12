"""Group structure, actions, cosets, and invariant subalgebras by direct
enumeration oracles (all integer arithmetic is exact)."""

import numpy as np
import pytest

from qrf.errors import DimensionError, ValidationError
from qrf.groups import (
    FiniteGroup,
    GroupAction,
    UnitaryRep,
    cosets,
    cyclic_group,
    cyclic_rep,
    dihedral_group,
    group_from_permutations,
    invariance_defect,
    invariant_subalgebra_basis,
    is_subgroup,
    is_transitive,
    orbit_bijection,
    permutation_rep,
    product_rep,
    regular_action,
    regular_rep,
    shift_action,
    stabilizer,
    trivial_action,
    trivial_rep,
    twirl,
)
from qrf.linalg import adjoint, max_abs
from qrf.sampling import random_hermitian


def test_cyclic_group_axioms():
    for n in (1, 2, 4, 6):
        g = cyclic_group(n)
        g.validate()
        assert g.identity == 0
        assert all(g.mul(k, g.inv(k)) == 0 for k in g.elements())


def test_dihedral_group_axioms_and_nonabelian():
    g, act = dihedral_group(4)
    g.validate()
    act.validate()
    assert g.order == 8
    # r * m0 != m0 * r
    assert g.mul(1, 4) != g.mul(4, 1)


def test_group_from_permutations_requires_closure():
    with pytest.raises(ValidationError):
        group_from_permutations([(0, 1, 2), (1, 2, 0), (1, 0, 2)])


def test_group_from_permutations_requires_identity_first():
    with pytest.raises(ValidationError):
        group_from_permutations([(1, 0), (0, 1)])


def test_bad_cayley_rejected():
    with pytest.raises(ValidationError):
        FiniteGroup(np.array([[0, 0], [1, 1]])).validate()


def test_action_validation_rejects_non_permutation():
    g = cyclic_group(2)
    with pytest.raises(ValidationError):
        GroupAction(g, np.array([[0, 1], [0, 0]])).validate()


def test_action_validation_rejects_incompatible_table():
    g = cyclic_group(4)
    # parity shift of Z4 on 3 points is not an action
    bad = GroupAction(g, (np.arange(3)[None, :] + np.arange(4)[:, None]) % 3)
    with pytest.raises(ValidationError):
        bad.validate()


def test_stabilizer_regular_action_is_trivial():
    g = cyclic_group(4)
    act = regular_action(g)
    for x in range(4):
        assert stabilizer(act, x) == [0]


def test_stabilizer_parity_action():
    g = cyclic_group(4)
    act = shift_action(g, 2)
    act.validate()
    # oracle: enumerate the four elements and keep those with g.0 == 0
    expected = [h for h in range(4) if (0 + h) % 2 == 0]
    assert stabilizer(act, 0) == expected == [0, 2]


def test_stabilizer_trivial_action_is_everything():
    g = cyclic_group(5)
    act = trivial_action(g, 1)
    assert stabilizer(act, 0) == list(range(5))


def test_is_subgroup():
    g = cyclic_group(4)
    assert is_subgroup(g, [0, 2])
    assert not is_subgroup(g, [0, 1])
    assert not is_subgroup(g, [1, 3])


def test_cosets_trivial_subgroups():
    g = cyclic_group(4)
    one = cosets(g, [0])
    assert one.n_cosets == 4 and one.representatives == (0, 1, 2, 3)
    full = cosets(g, range(4))
    assert full.n_cosets == 1 and full.representatives == (0,)


def test_cosets_z4_even_subgroup():
    g = cyclic_group(4)
    cs = cosets(g, [0, 2])
    assert cs.n_cosets == 2
    assert cs.members(0) == [0, 2]
    assert cs.members(1) == [1, 3]
    assert cs.representatives == (0, 1)


def test_cosets_partition_property():
    g, _ = dihedral_group(4)
    cs = cosets(g, [0, 4])
    seen = sorted(m for c in range(cs.n_cosets) for m in cs.members(c))
    assert seen == list(range(8))
    assert cs.n_cosets * len(cs.subgroup) == g.order
    # coset index is constant on g * H
    for g_el in range(8):
        for h in cs.subgroup:
            assert cs.coset_of[g.mul(g_el, h)] == cs.coset_of[g_el]


def test_cosets_rejects_non_subgroup():
    with pytest.raises(ValidationError):
        cosets(cyclic_group(4), [0, 1])


def test_transitivity():
    g = cyclic_group(4)
    assert is_transitive(regular_action(g))
    assert is_transitive(shift_action(g, 2))
    assert not is_transitive(trivial_action(g, 2))


def test_orbit_bijection_regular():
    g = cyclic_group(3)
    cs, points = orbit_bijection(regular_action(g), 0)
    assert list(points) == [0, 1, 2]


def test_orbit_bijection_parity():
    g = cyclic_group(4)
    cs, points = orbit_bijection(shift_action(g, 2), 0)
    # coset {0,2} -> point 0, coset {1,3} -> point 1
    assert cs.members(0) == [0, 2] and points[0] == 0
    assert cs.members(1) == [1, 3] and points[1] == 1


def test_orbit_bijection_equivariant():
    g, vertices = dihedral_group(4)
    cs, points = orbit_bijection(vertices, 0)
    # g.(point of c) == point of (coset of g * rep_c)
    for g_el in range(g.order):
        for c in range(cs.n_cosets):
            moved = vertices.apply(g_el, int(points[c]))
            target = cs.coset_of[g.mul(g_el, cs.representatives[c])]
            assert moved == int(points[target])


def test_orbit_stabilizer_counting():
    g, vertices = dihedral_group(4)
    for act in (vertices, regular_action(g)):
        stab = stabilizer(act, 0)
        cs = cosets(g, stab)
        assert len(stab) * cs.n_cosets == g.order
        assert cs.n_cosets == act.space_size


def test_orbit_bijection_needs_transitivity():
    g = cyclic_group(2)
    with pytest.raises(ValidationError):
        orbit_bijection(trivial_action(g, 2), 0)


def test_permutation_rep_is_homomorphism():
    g, vertices = dihedral_group(4)
    permutation_rep(vertices).validate()
    regular_rep(g).validate()


def test_cyclic_rep_validates():
    g = cyclic_group(4)
    cyclic_rep(g, np.diag([1.0, 1.0j])).validate()


def test_product_rep_homomorphism_and_mismatch():
    g = cyclic_group(2)
    X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    rep = UnitaryRep(g, (np.eye(2, dtype=complex), X))
    prod = product_rep(rep, rep)
    prod.validate()
    assert np.allclose(prod.matrix(1), np.kron(X, X))
    trivial = trivial_rep(g, 2)
    assert np.allclose(product_rep(trivial, trivial).matrix(1), np.eye(4))
    with pytest.raises(DimensionError):
        product_rep(rep, trivial_rep(cyclic_group(3), 2))


def test_invariant_subalgebra_trivial_subgroup_is_everything():
    g = cyclic_group(2)
    X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    rep = UnitaryRep(g, (np.eye(2, dtype=complex), X))
    basis = invariant_subalgebra_basis(rep, [0])
    assert len(basis) == 4


def test_invariant_subalgebra_diagonal_for_pauli_z():
    g = cyclic_group(2)
    Z = np.diag([1.0, -1.0]).astype(complex)
    rep = UnitaryRep(g, (np.eye(2, dtype=complex), Z))
    basis = invariant_subalgebra_basis(rep, [0, 1])
    assert len(basis) == 2
    for B in basis:
        # only diagonal entries survive the twirl
        assert max_abs(B - np.diag(np.diag(B))) <= 1e-12
        assert invariance_defect(rep, [0, 1], B) <= 1e-9


def test_invariant_subalgebra_irreducible_rep_is_scalars():
    # 2-d reflection representation of D4 is irreducible, so twirling over the
    # whole group must leave only multiples of the identity (dimension 1).
    g, _ = dihedral_group(4)
    R = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)
    S = np.diag([1.0, -1.0]).astype(complex)
    mats = [np.linalg.matrix_power(R, k) for k in range(4)]
    mats += [np.linalg.matrix_power(R, k) @ S for k in range(4)]
    rep = UnitaryRep(g, tuple(mats))
    rep.validate()
    basis = invariant_subalgebra_basis(rep, range(8))
    assert len(basis) == 1
    B = basis[0]
    assert max_abs(B - B[0, 0] * np.eye(2)) <= 1e-12


def test_invariant_basis_is_orthonormal_and_invariant():
    g = cyclic_group(4)
    rep = cyclic_rep(g, np.diag([1.0, 1.0j]))
    basis = invariant_subalgebra_basis(rep, [0, 2])
    for i, A in enumerate(basis):
        assert invariance_defect(rep, [0, 2], A) <= 1e-9
        for j, B in enumerate(basis):
            ip = complex(np.trace(adjoint(A) @ B))
            assert abs(ip - (1.0 if i == j else 0.0)) <= 1e-10


def test_twirl_is_idempotent():
    rng = np.random.default_rng(11)
    g, _ = dihedral_group(4)
    R = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)
    S = np.diag([1.0, -1.0]).astype(complex)
    mats = [np.linalg.matrix_power(R, k) for k in range(4)]
    mats += [np.linalg.matrix_power(R, k) @ S for k in range(4)]
    rep = UnitaryRep(g, tuple(mats))
    sub = [0, 4]
    A = random_hermitian(rng, 2)
    once = twirl(rep, sub, A)
    twice = twirl(rep, sub, once)
    assert max_abs(twice - once) <= 1e-12


def test_stabilizer_subgroup_axioms():
    g, vertices = dihedral_group(4)
    for x in range(4):
        stab = stabilizer(vertices, x)
        assert is_subgroup(g, stab)


def test_rep_validation_rejects_non_homomorphism():
    g = cyclic_group(2)
    bad = UnitaryRep(g, (np.eye(2, dtype=complex), np.diag([1.0, 1.0j])))
    with pytest.raises(ValidationError):
        bad.validate()


def test_rep_validation_rejects_non_unitary():
    g = cyclic_group(2)
    bad = UnitaryRep(g, (np.eye(2, dtype=complex), np.diag([1.0, 2.0]).astype(complex)))
    with pytest.raises(ValidationError):
        bad.validate()


def test_group_bundle_json_round_trip():
    from qrf.groups import bundle_from_json, bundle_to_json

    g, vertices = dihedral_group(4)
    rep = permutation_rep(vertices)
    back_g, back_act, back_rep = bundle_from_json(bundle_to_json(g, vertices, rep))
    assert np.array_equal(back_g.cayley, g.cayley)
    assert np.array_equal(back_act.table, vertices.table)
    for a, b in zip(back_rep.matrices, rep.matrices):
        assert np.array_equal(a, b)
    back_g.validate()
    back_act.validate()
    back_rep.validate()
    with pytest.raises(ValidationError):
        bundle_from_json({"order": 2, "cayley": [[0, 1], [1, 0]]})

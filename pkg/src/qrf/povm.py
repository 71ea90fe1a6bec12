"""Finite-sample-space POVMs: probability measures, classification, constructions.

Effects are stored per sample point; the effect of a subset is the sum of its
atoms.  Classification covers sharpness (all effects projections, disjoint
products vanish) and localizability, implemented through the norm-1
characterization: on a finite space the top eigenvalue of a norm-1 effect is
attained, so a single eigenstate realizes the point measure exactly and no
state sequence is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import channels
from .errors import DimensionError, NotLocalizableError, ValidationError
from .linalg import (
    DEFAULT_TOL,
    adjoint,
    assert_effect,
    assert_state,
    as_operator,
    basis_projector,
    hermitian_eigensystem,
    matrix_from_json,
    matrix_to_json,
    max_abs,
    op_norm,
    projector,
)


@dataclass(frozen=True, eq=False)
class Povm:
    """One effect per sample point, summing to the identity."""

    effects: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.effects:
            raise ValidationError("POVM needs at least one effect")
        mats = []
        dim = None
        for E in self.effects:
            M = as_operator(E, "effect").copy()
            if dim is None:
                dim = M.shape[0]
            elif M.shape[0] != dim:
                raise DimensionError("POVM effects have mixed dimensions")
            M.setflags(write=False)
            mats.append(M)
        object.__setattr__(self, "effects", tuple(mats))

    @property
    def space_size(self) -> int:
        return len(self.effects)

    @property
    def dim(self) -> int:
        return self.effects[0].shape[0]

    def total(self) -> np.ndarray:
        return np.sum(self.effects, axis=0)

    def validate(self, tol: float = DEFAULT_TOL) -> None:
        for x, E in enumerate(self.effects):
            assert_effect(E, tol, name=f"effect {x}")
        defect = max_abs(self.total() - np.eye(self.dim))
        if defect > tol:
            raise ValidationError(
                f"effects do not sum to the identity: defect {defect:.3e}"
            )


def basis_pvm(dim: int) -> Povm:
    """The computational-basis projective measurement."""
    return Povm(tuple(basis_projector(dim, k) for k in range(dim)))


def trivial_povm(dim: int) -> Povm:
    """Single-point POVM whose only effect is the identity."""
    return Povm((np.eye(dim, dtype=complex),))


def noisy_basis_povm(dim: int, eps: float) -> Povm:
    """Basis projectors smeared with white noise, (1-eps)|x><x| + eps/dim."""
    eye = np.eye(dim, dtype=complex)
    return Povm(
        tuple((1 - eps) * basis_projector(dim, k) + (eps / dim) * eye for k in range(dim))
    )


def spectral_pvm(A: np.ndarray, tol: float = DEFAULT_TOL) -> Povm:
    """The PVM of a Hermitian matrix: one eigenprojector per distinct eigenvalue."""
    w, V = hermitian_eigensystem(A, tol)
    effects = []
    k = 0
    while k < len(w):
        j = k
        while j + 1 < len(w) and abs(w[j + 1] - w[k]) <= max(tol, 1e-12):
            j += 1
        block = V[:, k : j + 1]
        effects.append(block @ adjoint(block))
        k = j + 1
    return Povm(tuple(effects))


def prob_measure(E: Povm, omega: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Outcome distribution weights[x] = tr[omega E_x] of a state."""
    omega = assert_state(omega, tol)
    if omega.shape[0] != E.dim:
        raise DimensionError(
            f"state dim {omega.shape[0]} does not match POVM dim {E.dim}"
        )
    return np.array([float(np.trace(omega @ Ex).real) for Ex in E.effects])


def is_sharp(E: Povm, tol: float = DEFAULT_TOL) -> bool:
    """Projection-valued within tol, with disjoint effects composing to zero."""
    for x, Ex in enumerate(E.effects):
        if op_norm(Ex @ Ex - Ex) > tol:
            return False
        for y in range(x + 1, E.space_size):
            if op_norm(Ex @ E.effects[y]) > tol:
                return False
    return True


def is_localizable(E: Povm, tol: float = DEFAULT_TOL) -> bool:
    """Norm-1 property: every effect has operator norm at least 1 - tol."""
    return all(op_norm(Ex) >= 1.0 - tol for Ex in E.effects)


def localizing_state(E: Povm, x: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """A state whose outcome distribution is the point measure at x.

    Returns the projector onto the top eigenvector of E_x; raises
    NotLocalizableError naming the norm defect when |E_x| < 1 - tol.
    """
    if not 0 <= x < E.space_size:
        raise DimensionError(f"point {x} outside sample space of size {E.space_size}")
    w, V = hermitian_eigensystem(E.effects[x], max(tol, 1e-8))
    defect = 1.0 - float(w[-1])
    if defect > tol:
        raise NotLocalizableError(x, defect)
    return projector(V[:, -1])


def pushforward(E: Povm, phi, target_size: int | None = None) -> Povm:
    """Image POVM under a point map: effect at y is the sum over phi^-1(y)."""
    phi = [int(v) for v in phi]
    if len(phi) != E.space_size:
        raise DimensionError(
            f"point map defined on {len(phi)} points, POVM has {E.space_size}"
        )
    m = max(phi) + 1 if target_size is None else int(target_size)
    if any(not 0 <= v < m for v in phi):
        raise ValidationError("point map leaves the target space")
    effects = [np.zeros((E.dim, E.dim), dtype=complex) for _ in range(m)]
    for x, y in enumerate(phi):
        effects[y] = effects[y] + E.effects[x]
    return Povm(tuple(effects))


def postcompose(E: Povm, psi: channels.Channel) -> Povm:
    """Apply a channel to every effect, yielding a POVM on the channel output."""
    if psi.dim_in != E.dim:
        raise DimensionError(
            f"channel input dim {psi.dim_in} does not match POVM dim {E.dim}"
        )
    return Povm(tuple(channels.apply(psi, Ex) for Ex in E.effects))


def product_povm(E: Povm, F: Povm, tol: float = DEFAULT_TOL) -> Povm:
    """Pointwise-product POVM on the product space, index (x, y) -> x * |F| + y.

    Products E_x F_y of non-commuting effects need not be effects; each one is
    validated and a failing pair is rejected.
    """
    if E.dim != F.dim:
        raise DimensionError("product POVM needs both factors on one space")
    effects = []
    for x, Ex in enumerate(E.effects):
        for y, Fy in enumerate(F.effects):
            prod = Ex @ Fy
            try:
                assert_effect(prod, tol, name=f"product effect ({x}, {y})")
            except ValidationError as err:
                raise ValidationError(
                    f"effects at ({x}, {y}) do not multiply to an effect: {err}"
                ) from err
            effects.append(prod)
    return Povm(tuple(effects))


def povm_to_json(E: Povm) -> dict:
    return {
        "space_size": E.space_size,
        "effects": [matrix_to_json(Ex) for Ex in E.effects],
    }


def povm_from_json(obj) -> Povm:
    if not isinstance(obj, dict) or not {"space_size", "effects"} <= set(obj):
        raise ValidationError("POVM object needs keys 'space_size' and 'effects'")
    effects = tuple(matrix_from_json(Ex) for Ex in obj["effects"])
    if len(effects) != int(obj["space_size"]):
        raise ValidationError("POVM space_size does not match its effect list")
    return Povm(effects)

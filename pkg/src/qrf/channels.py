"""Quantum channels in the Heisenberg picture, their preduals, and CP checks.

A channel is stored in Kraus form, which makes it completely positive by
construction; the Choi matrix is built on demand when certification of an
arbitrary linear map is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ValidationError
from .linalg import (
    DEFAULT_TOL,
    adjoint,
    assert_state,
    as_operator,
    kron,
    matrix_to_json,
    matrix_from_json,
    max_abs,
)


@dataclass(frozen=True, eq=False)
class Channel:
    """Kraus blocks K_k of shape (dim_in, dim_out).

    The Heisenberg action is apply(A) = sum_k K_k* A K_k for A of size dim_in;
    the predual acts on states of size dim_out as rho -> sum_k K_k rho K_k*.
    """

    kraus: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.kraus:
            raise ValidationError("channel needs at least one Kraus block")
        blocks = []
        shape = np.asarray(self.kraus[0]).shape
        for K in self.kraus:
            M = np.asarray(K, dtype=complex).copy()
            if M.ndim != 2 or M.shape != shape:
                raise DimensionError("Kraus blocks must share one 2-d shape")
            if not (np.all(np.isfinite(M.real)) and np.all(np.isfinite(M.imag))):
                raise ValidationError("Kraus block has non-finite entries")
            M.setflags(write=False)
            blocks.append(M)
        object.__setattr__(self, "kraus", tuple(blocks))

    @property
    def dim_in(self) -> int:
        return self.kraus[0].shape[0]

    @property
    def dim_out(self) -> int:
        return self.kraus[0].shape[1]

    def validate(self, tol: float = DEFAULT_TOL) -> None:
        defect = unitality_defect(self)
        if defect > tol:
            raise ValidationError(
                f"channel is not unital: |sum K*K - 1| = {defect:.3e}"
            )


def identity_channel(dim: int) -> Channel:
    return Channel((np.eye(dim, dtype=complex),))


def unitary_channel(V: np.ndarray) -> Channel:
    """Conjugation channel A -> V* A V."""
    return Channel((as_operator(V, "V"),))


def apply(ch: Channel, A: np.ndarray) -> np.ndarray:
    """Heisenberg action sum_k K_k* A K_k."""
    A = as_operator(A, "A")
    if A.shape[0] != ch.dim_in:
        raise DimensionError(
            f"operator of dim {A.shape[0]} fed to channel with input dim {ch.dim_in}"
        )
    out = np.zeros((ch.dim_out, ch.dim_out), dtype=complex)
    for K in ch.kraus:
        out += adjoint(K) @ A @ K
    return out


def predual_raw(ch: Channel, T: np.ndarray) -> np.ndarray:
    """Predual map on arbitrary trace-class input, T -> sum_k K_k T K_k*."""
    T = as_operator(T, "T")
    if T.shape[0] != ch.dim_out:
        raise DimensionError(
            f"state of dim {T.shape[0]} fed to predual with input dim {ch.dim_out}"
        )
    out = np.zeros((ch.dim_in, ch.dim_in), dtype=complex)
    for K in ch.kraus:
        out += K @ T @ adjoint(K)
    return out


def predual(ch: Channel, rho: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """State-space map fixed by tr[rho apply(A)] = tr[predual(rho) A]."""
    rho = assert_state(rho, tol)
    out = predual_raw(ch, rho)
    return assert_state(out, max(tol, 1e-8), name="predual output")


def compose(ch2: Channel, ch1: Channel) -> Channel:
    """Serial composition: ch1 first, then ch2, on states.

    In the Heisenberg picture the order reverses:
    ``apply(compose(ch2, ch1), A) == apply(ch1, apply(ch2, A))``.  Worked
    example: for unitary channels V then W the composite conjugates by W V,
    i.e. A -> V* W* A W V.
    """
    if ch2.dim_out != ch1.dim_in:
        raise DimensionError(
            f"cannot compose: inner output dim {ch2.dim_out} != outer input dim {ch1.dim_in}"
        )
    blocks = tuple(K2 @ K1 for K2 in ch2.kraus for K1 in ch1.kraus)
    return Channel(blocks)


def ampliate(ch: Channel, dim_left: int) -> Channel:
    """Tensor the identity on a dim_left system to the left: 1 (x) ch."""
    eye = np.eye(dim_left, dtype=complex)
    return Channel(tuple(kron(eye, K) for K in ch.kraus))


def unitality_defect(ch: Channel) -> float:
    acc = np.zeros((ch.dim_out, ch.dim_out), dtype=complex)
    for K in ch.kraus:
        acc += adjoint(K) @ K
    return max_abs(acc - np.eye(ch.dim_out))


def choi_of_map(fn, dim: int) -> np.ndarray:
    """Choi matrix sum_ij |i><j| (x) fn(|i><j|) of a linear map on B(C^dim)."""
    out_dim = np.asarray(fn(np.eye(dim, dtype=complex))).shape[0]
    C = np.zeros((dim * out_dim, dim * out_dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            unit = np.zeros((dim, dim), dtype=complex)
            unit[i, j] = 1.0
            block = np.asarray(fn(unit))
            C[i * out_dim : (i + 1) * out_dim, j * out_dim : (j + 1) * out_dim] = block
    return C


def choi_matrix(ch: Channel) -> np.ndarray:
    """Choi matrix of the predual map; PSD iff the channel is CP."""
    return choi_of_map(lambda T: predual_raw(ch, T), ch.dim_out)


def is_cp_unital(ch: Channel, tol: float = DEFAULT_TOL) -> bool:
    """Certify complete positivity (PSD Choi) and unitality within tol."""
    if unitality_defect(ch) > tol:
        return False
    C = choi_matrix(ch)
    w = np.linalg.eigvalsh((C + adjoint(C)) / 2)
    return bool(w[0] >= -tol) and max_abs(C - adjoint(C)) <= tol


def channel_to_json(ch: Channel) -> dict:
    return {"kraus": [matrix_to_json(K) for K in ch.kraus]}


def channel_from_json(obj) -> Channel:
    if not isinstance(obj, dict) or "kraus" not in obj:
        raise ValidationError("channel object needs key 'kraus'")
    return Channel(tuple(matrix_from_json(K) for K in obj["kraus"]))

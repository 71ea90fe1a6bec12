"""Seeded random draws used by checks and tests.

Every function takes an explicit ``numpy.random.Generator`` so runs are
reproducible and streams are never shared mutable state.
"""

from __future__ import annotations

import numpy as np

from .channels import Channel
from .linalg import adjoint


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Entries with independent standard-normal real and imaginary parts."""
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_matrix(rng: np.random.Generator, dim: int) -> np.ndarray:
    return complex_gaussian(rng, (dim, dim))


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    X = random_matrix(rng, dim)
    return (X + adjoint(X)) / 2


def random_psd(rng: np.random.Generator, dim: int) -> np.ndarray:
    X = random_matrix(rng, dim)
    return X @ adjoint(X)


def random_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    P = random_psd(rng, dim)
    return P / np.trace(P).real


def random_unit_disk(rng: np.random.Generator) -> complex:
    """Scalar uniform on the complex unit disk."""
    r = np.sqrt(rng.uniform())
    theta = rng.uniform(0.0, 2.0 * np.pi)
    return complex(r * np.cos(theta), r * np.sin(theta))


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    Q, R = np.linalg.qr(random_matrix(rng, dim))
    phases = np.diag(R).copy()
    phases /= np.abs(phases)
    return Q * phases


def random_kraus_channel(
    rng: np.random.Generator, dim_in: int, dim_out: int | None = None, n_kraus: int = 2
) -> Channel:
    """A random unital channel: Gaussian blocks normalized so sum K*K = 1."""
    dim_out = dim_in if dim_out is None else dim_out
    blocks = [complex_gaussian(rng, (dim_in, dim_out)) for _ in range(n_kraus)]
    S = np.zeros((dim_out, dim_out), dtype=complex)
    for G in blocks:
        S += adjoint(G) @ G
    w, V = np.linalg.eigh((S + adjoint(S)) / 2)
    inv_sqrt = V @ np.diag(1.0 / np.sqrt(np.clip(w, 1e-14, None))) @ adjoint(V)
    return Channel(tuple(G @ inv_sqrt for G in blocks))


def random_point_map(rng: np.random.Generator, source_size: int, target_size: int) -> list[int]:
    return [int(v) for v in rng.integers(0, target_size, size=source_size)]


def random_combination(
    rng: np.random.Generator, basis, hermitian: bool = False
) -> np.ndarray:
    """Random complex combination of the given matrices (Hermitianized on request)."""
    coeffs = complex_gaussian(rng, len(basis))
    A = np.zeros_like(np.asarray(basis[0], dtype=complex))
    for c, B in zip(coeffs, basis):
        A = A + c * B
    if hermitian:
        A = (A + adjoint(A)) / 2
    return A

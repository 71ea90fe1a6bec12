"""Dense complex-matrix kernel: norms, positivity predicates, pairings, tensor tools.

Operators, states and effects are plain ``numpy`` complex arrays; helpers
validate shape and finiteness at the boundary.  Norms and spectra go through
Hermitian eigendecompositions (the operator norm of a general matrix via the
spectrum of ``A* A``), which is robust at the small dimensions this package
targets.  Every function is pure, so values can be shared across threads.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, ValidationError

DEFAULT_TOL = 1e-9


def as_operator(A, name: str = "operator") -> np.ndarray:
    """Coerce to a square complex matrix with finite entries."""
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"{name} must be a square matrix, got shape {M.shape}")
    if not (np.all(np.isfinite(M.real)) and np.all(np.isfinite(M.imag))):
        raise ValidationError(f"{name} has non-finite entries")
    return M


def adjoint(A: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(A).conj().T


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product; tr[kron(A, B)] = tr[A] tr[B]."""
    return np.kron(np.asarray(A), np.asarray(B))


def max_abs(A) -> float:
    A = np.asarray(A)
    return float(np.max(np.abs(A))) if A.size else 0.0


def pairing(T, A) -> complex:
    """Trace pairing tr[T A] between a trace-class argument and an operator."""
    T = as_operator(T, "T")
    A = as_operator(A, "A")
    if T.shape != A.shape:
        raise DimensionError(
            f"pairing needs equal dimensions, got {T.shape[0]} and {A.shape[0]}"
        )
    return complex(np.trace(T @ A))


def is_hermitian(A, tol: float = DEFAULT_TOL) -> bool:
    A = as_operator(A)
    return max_abs(A - adjoint(A)) <= tol


def hermitian_eigensystem(A, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.

    Rejects non-Hermitian input instead of silently symmetrizing, so callers
    cannot misuse the Hermitian-only path.
    """
    A = as_operator(A)
    if not is_hermitian(A, tol):
        raise ValidationError(
            f"matrix is not Hermitian within {tol:g}: "
            f"max |A - A*| = {max_abs(A - adjoint(A)):.3e}"
        )
    w, V = np.linalg.eigh((A + adjoint(A)) / 2)
    return w, V


def op_norm(A) -> float:
    """Operator norm (largest singular value) via the spectrum of A*A."""
    A = as_operator(A)
    if A.shape[0] == 0:
        return 0.0
    w = np.linalg.eigvalsh(adjoint(A) @ A)
    return float(np.sqrt(max(float(w[-1]), 0.0)))


def trace_norm(T) -> float:
    """Sum of singular values; equals the trace on positive input."""
    T = as_operator(T)
    if T.shape[0] == 0:
        return 0.0
    w = np.linalg.eigvalsh(adjoint(T) @ T)
    return float(np.sum(np.sqrt(np.clip(w, 0.0, None))))


def is_psd(A, tol: float = DEFAULT_TOL) -> bool:
    """True iff A is Hermitian within tol and its spectrum is >= -tol."""
    A = as_operator(A)
    if not is_hermitian(A, tol):
        return False
    w = np.linalg.eigvalsh((A + adjoint(A)) / 2)
    return bool(w[0] >= -tol)


def partial_trace(M, dim_s: int, dim_r: int, keep: str = "S") -> np.ndarray:
    """Reduce an operator on the (S x R) product space to one factor.

    ``keep="S"`` traces out the R factor and returns the S-side operator;
    ``keep="R"`` the other way round.
    """
    M = as_operator(M)
    if M.shape[0] != dim_s * dim_r:
        raise DimensionError(
            f"operator of dim {M.shape[0]} does not factor as {dim_s} x {dim_r}"
        )
    T = M.reshape(dim_s, dim_r, dim_s, dim_r)
    if keep == "S":
        return np.einsum("irjr->ij", T)
    if keep == "R":
        return np.einsum("iris->rs", T)
    raise ValueError(f"keep must be 'S' or 'R', got {keep!r}")


def matrix_units(dim: int) -> list[np.ndarray]:
    """The standard basis |i><j| of the full matrix algebra."""
    units = []
    for i in range(dim):
        for j in range(dim):
            U = np.zeros((dim, dim), dtype=complex)
            U[i, j] = 1.0
            units.append(U)
    return units


def basis_projector(dim: int, k: int) -> np.ndarray:
    """Rank-one projector |k><k| in the computational basis."""
    P = np.zeros((dim, dim), dtype=complex)
    P[k, k] = 1.0
    return P


def projector(vec: np.ndarray) -> np.ndarray:
    """Rank-one projector onto a (normalized) vector."""
    v = np.asarray(vec, dtype=complex).reshape(-1)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


# -- states and effects -------------------------------------------------------


def assert_state(rho, tol: float = DEFAULT_TOL, name: str = "state") -> np.ndarray:
    """Validate Hermiticity, positivity and unit trace; return the array."""
    rho = as_operator(rho, name)
    if not is_hermitian(rho, tol):
        raise ValidationError(f"{name} is not Hermitian within {tol:g}")
    w = np.linalg.eigvalsh((rho + adjoint(rho)) / 2)
    if w[0] < -tol:
        raise ValidationError(f"{name} is not positive: min eigenvalue {w[0]:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > tol:
        raise ValidationError(f"{name} does not have unit trace: tr = {tr:.12g}")
    return rho


def is_state(rho, tol: float = DEFAULT_TOL) -> bool:
    try:
        assert_state(rho, tol)
    except (ValidationError, DimensionError):
        return False
    return True


def assert_effect(E, tol: float = DEFAULT_TOL, name: str = "effect") -> np.ndarray:
    """Validate Hermiticity and spectrum within [-tol, 1 + tol]; return the array."""
    E = as_operator(E, name)
    if not is_hermitian(E, tol):
        raise ValidationError(f"{name} is not Hermitian within {tol:g}")
    w = np.linalg.eigvalsh((E + adjoint(E)) / 2)
    if w[0] < -tol or w[-1] > 1.0 + tol:
        raise ValidationError(
            f"{name} spectrum [{w[0]:.3e}, {w[-1]:.6g}] leaves the unit interval"
        )
    return E


def is_effect(E, tol: float = DEFAULT_TOL) -> bool:
    try:
        assert_effect(E, tol)
    except (ValidationError, DimensionError):
        return False
    return True


# -- JSON encoding -------------------------------------------------------------


def matrix_to_json(A) -> dict:
    """Encode as {"dim": n, "re": [[...]], "im": [[...]]} (row-major)."""
    A = as_operator(A)
    return {"dim": int(A.shape[0]), "re": A.real.tolist(), "im": A.imag.tolist()}


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or not {"dim", "re", "im"} <= set(obj):
        raise ValidationError("matrix object needs keys 'dim', 're', 'im'")
    dim = int(obj["dim"])
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise ValidationError(
            f"matrix parts must be {dim} x {dim}, got {re.shape} and {im.shape}"
        )
    return as_operator(re + 1j * im)

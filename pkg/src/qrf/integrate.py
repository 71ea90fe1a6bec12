"""Operator-valued functions on a finite sample space and their POVM integrals.

The integral of a function f against a POVM E is the unique operator on the
joint system-reference space whose product-state expectations reproduce the
scalar sums

    tr[(rho (x) omega) . integral] = sum_x tr[rho f(x)] tr[omega E_x].

On a finite space that operator is the exact Kronecker sum
``sum_x f(x) (x) E_x``, so no quadrature error model is involved; the check
functions below certify the defining pairing identity and the structural
properties of integration (linearity, adjoints, positivity, unitality,
contraction, multiplicativity for sharp measures, injectivity for localizable
ones, and compatibility with point maps and channels).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import channels, povm as povm_mod, sampling
from .errors import DimensionError, ValidationError
from .linalg import (
    DEFAULT_TOL,
    adjoint,
    as_operator,
    kron,
    matrix_from_json,
    matrix_to_json,
    max_abs,
    op_norm,
    partial_trace,
)
from .reporting import CheckResult

PAIRING_TOL = 1e-10
LINEARITY_TOL = 1e-10
ADJOINT_TOL = 1e-12
POSITIVITY_TOL = 1e-9
UNITALITY_TOL = 1e-11
RECONSTRUCTION_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class OperatorFunction:
    """A map from sample points to system operators, one matrix per point."""

    values: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.values:
            raise ValidationError("operator function needs at least one value")
        mats = []
        dim = None
        for v in self.values:
            M = as_operator(v, "function value").copy()
            if dim is None:
                dim = M.shape[0]
            elif M.shape[0] != dim:
                raise DimensionError("function values have mixed dimensions")
            M.setflags(write=False)
            mats.append(M)
        object.__setattr__(self, "values", tuple(mats))

    @property
    def space_size(self) -> int:
        return len(self.values)

    @property
    def dim(self) -> int:
        return self.values[0].shape[0]


def constant_function(space_size: int, M: np.ndarray) -> OperatorFunction:
    M = as_operator(M)
    return OperatorFunction(tuple(M for _ in range(space_size)))


def identity_function(space_size: int, dim: int) -> OperatorFunction:
    """The unit of the function algebra, x -> 1."""
    return constant_function(space_size, np.eye(dim, dtype=complex))


def sup_norm(f: OperatorFunction) -> float:
    """Largest pointwise operator norm."""
    return max(op_norm(v) for v in f.values)


def _same_shape(f: OperatorFunction, g: OperatorFunction) -> None:
    if f.space_size != g.space_size or f.dim != g.dim:
        raise DimensionError(
            f"function shapes differ: ({f.space_size}, {f.dim}) vs ({g.space_size}, {g.dim})"
        )


def fn_mul(f: OperatorFunction, g: OperatorFunction) -> OperatorFunction:
    _same_shape(f, g)
    return OperatorFunction(tuple(a @ b for a, b in zip(f.values, g.values)))


def fn_add(f: OperatorFunction, g: OperatorFunction) -> OperatorFunction:
    _same_shape(f, g)
    return OperatorFunction(tuple(a + b for a, b in zip(f.values, g.values)))


def fn_scale(c: complex, f: OperatorFunction) -> OperatorFunction:
    return OperatorFunction(tuple(c * v for v in f.values))


def fn_adjoint(f: OperatorFunction) -> OperatorFunction:
    return OperatorFunction(tuple(adjoint(v) for v in f.values))


def fn_compose(f: OperatorFunction, point_map) -> OperatorFunction:
    """Pull back along a point map: (f . phi)(x) = f(phi(x))."""
    phi = [int(v) for v in point_map]
    if any(not 0 <= v < f.space_size for v in phi):
        raise DimensionError("point map leaves the domain of the function")
    return OperatorFunction(tuple(f.values[v] for v in phi))


def random_function(
    rng: np.random.Generator, space_size: int, dim: int, kind: str = "generic"
) -> OperatorFunction:
    """Seeded random function; kind is 'generic', 'hermitian' or 'psd'."""
    draw = {
        "generic": sampling.random_matrix,
        "hermitian": sampling.random_hermitian,
        "psd": sampling.random_psd,
    }[kind]
    return OperatorFunction(tuple(draw(rng, dim) for _ in range(space_size)))


# -- the integral ----------------------------------------------------------------


def integrate(f: OperatorFunction, E: povm_mod.Povm) -> np.ndarray:
    """The operator sum_x f(x) (x) E_x on the joint space."""
    if f.space_size != E.space_size:
        raise DimensionError(
            f"function on {f.space_size} points against POVM on {E.space_size}"
        )
    dim = f.dim * E.dim
    out = np.zeros((dim, dim), dtype=complex)
    for v, Ex in zip(f.values, E.effects):
        out += kron(v, Ex)
    return out


def product_expectation(M: np.ndarray, rho: np.ndarray, omega: np.ndarray) -> complex:
    """tr[(rho (x) omega) M]."""
    return complex(np.trace(kron(rho, omega) @ M))


def scalar_integral(
    f: OperatorFunction, E: povm_mod.Povm, rho: np.ndarray, omega: np.ndarray
) -> complex:
    """The scalar side of the pairing: sum_x tr[rho f(x)] tr[omega E_x]."""
    total = 0.0 + 0.0j
    for v, Ex in zip(f.values, E.effects):
        total += complex(np.trace(rho @ v)) * complex(np.trace(omega @ Ex))
    return total


def reconstruct_function(
    M: np.ndarray, E: povm_mod.Povm, dim_s: int, tol: float = DEFAULT_TOL
) -> OperatorFunction:
    """Read the integrand back out of an integral using localizing states.

    For a norm-1 POVM the state localized at x turns the pairing into an exact
    point evaluation, so tracing out the reference side against it recovers
    f(x).  Raises NotLocalizableError where the POVM is not norm-1.
    """
    M = as_operator(M)
    if M.shape[0] != dim_s * E.dim:
        raise DimensionError("integral dimension does not factor as system x reference")
    values = []
    for x in range(E.space_size):
        omega = povm_mod.localizing_state(E, x, tol)
        values.append(partial_trace(M @ kron(np.eye(dim_s), omega), dim_s, E.dim, "S"))
    return OperatorFunction(tuple(values))


# -- checks ----------------------------------------------------------------------


def check_pairing(
    f: OperatorFunction,
    E: povm_mod.Povm,
    rng: np.random.Generator,
    n_states: int = 200,
    tol: float = PAIRING_TOL,
) -> CheckResult:
    """Defining contract: the integral pairs with product states as the scalar sum."""
    M = integrate(f, E)
    worst = 0.0
    for _ in range(n_states):
        rho = sampling.random_state(rng, f.dim)
        omega = sampling.random_state(rng, E.dim)
        delta = abs(product_expectation(M, rho, omega) - scalar_integral(f, E, rho, omega))
        worst = max(worst, delta)
    return CheckResult("integral_pairing", delta=worst, tol=tol, passed=worst <= tol)


def check_unitality(E: povm_mod.Povm, dim_s: int, tol: float = UNITALITY_TOL) -> CheckResult:
    one = identity_function(E.space_size, dim_s)
    delta = op_norm(integrate(one, E) - np.eye(dim_s * E.dim))
    return CheckResult("integral_unitality", delta=delta, tol=tol, passed=delta <= tol)


def check_linear_pos_adjoint(
    E: povm_mod.Povm,
    dim_s: int,
    rng: np.random.Generator,
    trials: int = 100,
    lin_tol: float = LINEARITY_TOL,
    adj_tol: float = ADJOINT_TOL,
    pos_tol: float = POSITIVITY_TOL,
) -> list[CheckResult]:
    """Linearity, adjoint intertwining and positivity on random draws."""
    lin_worst = adj_worst = pos_worst = 0.0
    for _ in range(trials):
        f = random_function(rng, E.space_size, dim_s)
        g = random_function(rng, E.space_size, dim_s)
        a = sampling.random_unit_disk(rng)
        b = sampling.random_unit_disk(rng)
        combo = integrate(fn_add(fn_scale(a, f), fn_scale(b, g)), E)
        lin_worst = max(
            lin_worst, op_norm(combo - a * integrate(f, E) - b * integrate(g, E))
        )
        adj_worst = max(
            adj_worst, max_abs(integrate(fn_adjoint(f), E) - adjoint(integrate(f, E)))
        )
        p = random_function(rng, E.space_size, dim_s, kind="psd")
        w = np.linalg.eigvalsh(integrate(p, E))
        pos_worst = max(pos_worst, max(0.0, -float(w[0])))
    return [
        CheckResult("integral_linearity", delta=lin_worst, tol=lin_tol, passed=lin_worst <= lin_tol),
        CheckResult("integral_adjoint", delta=adj_worst, tol=adj_tol, passed=adj_worst <= adj_tol),
        CheckResult("integral_positivity", delta=pos_worst, tol=pos_tol, passed=pos_worst <= pos_tol),
    ]


def check_contraction(
    f: OperatorFunction, E: povm_mod.Povm, tol: float = DEFAULT_TOL
) -> CheckResult:
    """Certify |integral| <= |f|_sup (up to tol)."""
    lhs = op_norm(integrate(f, E))
    rhs = sup_norm(f)
    excess = max(0.0, lhs - rhs)
    return CheckResult(
        "integral_contraction", delta=excess, tol=tol, passed=excess <= tol, lhs=lhs, rhs=rhs
    )


def check_multiplicative(
    f: OperatorFunction,
    g: OperatorFunction,
    E: povm_mod.Povm,
    tol: float = DEFAULT_TOL,
    sharp_tol: float = DEFAULT_TOL,
) -> CheckResult:
    """Compare integral(f) integral(g) with integral(fg).

    Asserted only for sharp POVMs; otherwise the defect is reported as data,
    since multiplicativity is not claimed for general measures.
    """
    _same_shape(f, g)
    delta = op_norm(integrate(f, E) @ integrate(g, E) - integrate(fn_mul(f, g), E))
    if povm_mod.is_sharp(E, sharp_tol):
        return CheckResult(
            "integral_multiplicative", delta=delta, tol=tol, passed=delta <= tol
        )
    return CheckResult(
        "integral_multiplicative",
        delta=delta,
        tol=tol,
        passed=None,
        note="not asserted (non-sharp)",
    )


def check_injective(
    f: OperatorFunction,
    g: OperatorFunction,
    E: povm_mod.Povm,
    int_tol: float = DEFAULT_TOL,
    diff_tol: float = RECONSTRUCTION_TOL,
) -> CheckResult:
    """Injectivity via localizing states: equal integrals force equal functions.

    Requires a localizable POVM.  When the integrals agree within int_tol the
    check asserts that both the true difference |f - g|_sup and the difference
    of the reconstructions stay below diff_tol; when the integrals differ the
    reconstruction gap is reported as the detection margin.
    """
    _same_shape(f, g)
    if not povm_mod.is_localizable(E, int_tol):
        raise ValidationError("injectivity check needs a localizable (norm-1) POVM")
    Mf, Mg = integrate(f, E), integrate(g, E)
    int_delta = op_norm(Mf - Mg)
    rec_f = reconstruct_function(Mf, E, f.dim, int_tol)
    rec_g = reconstruct_function(Mg, E, g.dim, int_tol)
    rec_gap = sup_norm(fn_add(rec_f, fn_scale(-1.0, rec_g)))
    true_gap = sup_norm(fn_add(f, fn_scale(-1.0, g)))
    residual = max(
        sup_norm(fn_add(rec_f, fn_scale(-1.0, f))),
        sup_norm(fn_add(rec_g, fn_scale(-1.0, g))),
    )
    if int_delta <= int_tol:
        ok = true_gap <= diff_tol and residual <= diff_tol
        return CheckResult(
            "integral_injective",
            delta=rec_gap,
            tol=diff_tol,
            passed=ok,
            lhs=int_delta,
            rhs=true_gap,
            note=f"reconstruction residual {residual:.3e}",
        )
    return CheckResult(
        "integral_injective",
        delta=rec_gap,
        tol=diff_tol,
        passed=residual <= diff_tol,
        lhs=int_delta,
        rhs=true_gap,
        note=f"integrals differ; detection margin {rec_gap:.6e}",
    )


def check_transform(
    f: OperatorFunction,
    E: povm_mod.Povm,
    phi,
    psi: channels.Channel,
    tol: float = DEFAULT_TOL,
) -> CheckResult:
    """Transformation identity under a point map phi and a channel psi.

    Both sides are computed independently: the left integrates the pulled-back
    function against the channel-transformed POVM; the right pushes the POVM
    forward along phi, integrates, and applies the ampliated channel.
    """
    phi = [int(v) for v in phi]
    lhs = integrate(fn_compose(f, phi), povm_mod.postcompose(E, psi))
    pushed = povm_mod.pushforward(E, phi, target_size=f.space_size)
    rhs = channels.apply(channels.ampliate(psi, f.dim), integrate(f, pushed))
    delta = op_norm(lhs - rhs)
    return CheckResult("integral_transform", delta=delta, tol=tol, passed=delta <= tol)


# -- JSON ------------------------------------------------------------------------


def function_to_json(f: OperatorFunction) -> dict:
    return {"space_size": f.space_size, "values": [matrix_to_json(v) for v in f.values]}


def function_from_json(obj) -> OperatorFunction:
    if not isinstance(obj, dict) or not {"space_size", "values"} <= set(obj):
        raise ValidationError("function object needs keys 'space_size' and 'values'")
    values = tuple(matrix_from_json(v) for v in obj["values"])
    if len(values) != int(obj["space_size"]):
        raise ValidationError("function space_size does not match its value list")
    return OperatorFunction(values)

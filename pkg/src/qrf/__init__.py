"""Operator-valued integration against POVMs and frame relativization on
finite homogeneous spaces."""

from .channels import Channel, apply, choi_matrix, compose, identity_channel, is_cp_unital, predual, unitary_channel
from .errors import DimensionError, NotInvariantError, NotLocalizableError, QrfError, ValidationError
from .groups import (
    CosetSpace,
    FiniteGroup,
    GroupAction,
    UnitaryRep,
    cosets,
    cyclic_group,
    dihedral_group,
    invariant_subalgebra_basis,
    is_transitive,
    orbit_bijection,
    product_rep,
    regular_action,
    stabilizer,
    twirl,
)
from .integrate import OperatorFunction, fn_add, fn_adjoint, fn_mul, fn_scale, integrate, sup_norm
from .linalg import is_psd, kron, op_norm, pairing, partial_trace, trace_norm
from .povm import (
    Povm,
    basis_pvm,
    is_localizable,
    is_sharp,
    localizing_state,
    postcompose,
    prob_measure,
    product_povm,
    pushforward,
)
from .relativize import Frame, RelativizedOperator, Relativizer, check_frame, covariance_defect, relativize
from .reporting import CheckResult, Report, emit
from .runner import run_scenario
from .scenarios import Scenario, broken_covariance_scenario, get_scenario, list_scenarios

__version__ = "0.1.0"

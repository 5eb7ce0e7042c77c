"""Optimal entanglement witnesses and computable lower bounds on the
witness-based entanglement measure of bipartite states."""

from .bounds import (
    BoundReport,
    WitnessOperator,
    alpha_correlation,
    alpha_rank_one,
    alpha_variational,
    bound_mixed,
    bound_pure,
    bound_qubit,
    build_witness,
    construct_L_mixed,
    construct_L_pure,
    construct_L_qubit,
    evaluate,
    witness_expectation,
)
from .errors import WitnessError
from .linalg import (
    BlochForm,
    DensityMatrix,
    GellMannBasis,
    StateVector,
    bloch_compose,
    bloch_decompose,
    frobenius_norm,
    gell_mann_basis,
    partial_transpose,
    realign,
    schmidt_coefficients,
    spectral_norm,
    trace_norm,
)

__version__ = "0.1.0"

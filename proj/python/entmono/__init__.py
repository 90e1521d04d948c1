"""Entanglement monogamy diagnostics.

Matrices and state vectors are complex numpy arrays; ``dims`` lists the
subsystem dimensions in row-major order.
"""

from ._entmono import (
    NumericError,
    ckw_residual,
    concurrence_pure,
    concurrence_two_qubit,
    counterexample_row,
    fef_2xd,
    fef_monogamy_residual,
    fef_pure,
    fef_two_qubit,
    fidelity_from_fef,
    fidelity_monogamy_residual,
    gamma_sweep,
    haar_pure,
    kron,
    partial_trace,
    random_density,
    sigma_gamma_pair,
    sigma_gamma_state,
    teleport_exact_fidelity,
    teleport_mc_fidelity,
    two_param_state,
)

__all__ = [
    "NumericError",
    "ckw_residual",
    "concurrence_pure",
    "concurrence_two_qubit",
    "counterexample_row",
    "fef_2xd",
    "fef_monogamy_residual",
    "fef_pure",
    "fef_two_qubit",
    "fidelity_from_fef",
    "fidelity_monogamy_residual",
    "gamma_sweep",
    "haar_pure",
    "kron",
    "partial_trace",
    "random_density",
    "sigma_gamma_pair",
    "sigma_gamma_state",
    "teleport_exact_fidelity",
    "teleport_mc_fidelity",
    "two_param_state",
]

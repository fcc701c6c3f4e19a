"""qslip: dephasing-qubit semigroup, slippage channel, and entanglement diagnostics.

A verification-oriented toolkit for a single qubit whose equatorial Bloch
components are driven by a generator that may fail positivity.  Closed
forms (propagator, peak radii, two-qubit spectra, concurrence, creation
windows) live alongside an independent numerical oracle layer (cyclic
Jacobi eigensolver, fixed-step RK4, golden-section maximizer) that checks
them.
"""

from .bipartite import (
    WindowReport,
    can_create_entanglement,
    concurrence_closed_form,
    concurrence_rate_factor,
    concurrence_wootters,
    detect_windows,
    eigenvalues_closed_form,
    evolve_isotropic,
    isotropic,
    partial_transpose_spectrum_check,
    positivity_bound,
    r1_curve,
    r4_curve,
    r4_max,
    rate_factor_max,
    symmetric_projector,
    window_functions,
)
from .oracle import (
    IntegratorConfig,
    Trajectory,
    integrate_master_2x2,
    integrate_master_4x4,
    maximize_scalar,
)
from .semigroup import (
    BlochVector,
    Classification,
    DerivedRates,
    ModelParams,
    StochasticFieldParams,
    bloch_trajectory,
    classify,
    derive_params,
    exit_rate,
    generator,
    generator_split,
    norm_bound_curve,
    norm_bound_max,
    propagate,
    propagator_matrix,
)
from .slippage import (
    CPReport,
    SlippageChannel,
    apply_slippage,
    choi_matrix,
    compose_actions,
    identity_action,
    is_completely_positive,
    kraus_apply,
    kraus_operators,
    semigroup_action,
    slippage_action,
)

__version__ = "0.1.0"

__all__ = [
    "BlochVector",
    "CPReport",
    "Classification",
    "DerivedRates",
    "IntegratorConfig",
    "ModelParams",
    "SlippageChannel",
    "StochasticFieldParams",
    "Trajectory",
    "WindowReport",
    "apply_slippage",
    "bloch_trajectory",
    "can_create_entanglement",
    "choi_matrix",
    "classify",
    "compose_actions",
    "concurrence_closed_form",
    "concurrence_rate_factor",
    "concurrence_wootters",
    "derive_params",
    "detect_windows",
    "eigenvalues_closed_form",
    "evolve_isotropic",
    "exit_rate",
    "generator",
    "generator_split",
    "identity_action",
    "integrate_master_2x2",
    "integrate_master_4x4",
    "is_completely_positive",
    "isotropic",
    "kraus_apply",
    "kraus_operators",
    "maximize_scalar",
    "norm_bound_curve",
    "norm_bound_max",
    "partial_transpose_spectrum_check",
    "positivity_bound",
    "propagate",
    "propagator_matrix",
    "r1_curve",
    "r4_curve",
    "r4_max",
    "rate_factor_max",
    "semigroup_action",
    "slippage_action",
    "symmetric_projector",
    "window_functions",
]

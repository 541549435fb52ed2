"""specvar: eigenvalue perturbation bounds for arbitrary complex matrices.

Evaluates the classical spectral-variation bounds (Hoffman-Wielandt family,
Song, Li-Chen) and the sharper envelope-derived families UP1/UP2/UP3 on
Jordan-structured instances, and verifies every bound against the true
optimal matching distance D2 between the exact and perturbed spectra.
"""

from .blocks import (
    BlockDecomposition,
    commutant_basis,
    is_normal,
    offblock_residual,
    s_number,
)
from .bounds import (
    BoundId,
    BoundResult,
    baseline_bounds,
    is_violation,
    new_bounds_complex,
    new_bounds_real,
    normal_bounds,
    verify_instance,
)
from .exceptions import (
    AmbiguityError,
    ConfigError,
    DimensionError,
    DomainError,
    EigensolverError,
    NonFiniteError,
    NotApplicableError,
    ParseError,
    SingularMatrixError,
    SizeLimitError,
    SpecvarError,
)
from .fileio import read_jordan_spec, read_matrix, write_jordan_spec, write_matrix
from .generate import complex_gaussian, random_conditioned, random_unitary, rank_one
from .harness import (
    Report,
    SweepConfig,
    TrialRecord,
    eps_grid,
    evaluate_bounds,
    example_scalar_table,
    gen_instance,
    perturbed_spectrum,
    read_report,
    run_sweep,
    run_trial,
    s_values,
    write_report,
)
from .jordan import (
    JordanSpec,
    PerturbationInstance,
    assemble,
    envelope_margin,
    eq_norm_majorant,
    jordan_matrix,
    lambda_matrix,
    make_instance,
    make_jordan_spec,
    optimal_epsilon,
    phi,
    scalar_shift,
    scaling_inequalities,
    scaling_matrix,
    spec_from_matrix,
    superdiagonal_part,
)
from .linalg import (
    TriangularSplit,
    adjoint,
    as_matrix,
    delta,
    frobenius_norm,
    kappa2,
    matmul,
    solve,
    spectral_norm,
    split_dlu,
    trace,
)
from .spectrum import (
    Matching,
    Spectrum,
    brute_force_match,
    canonical_order,
    eigenvalues,
    optimal_match,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguityError",
    "BlockDecomposition",
    "BoundId",
    "BoundResult",
    "ConfigError",
    "DimensionError",
    "DomainError",
    "EigensolverError",
    "JordanSpec",
    "Matching",
    "NonFiniteError",
    "NotApplicableError",
    "ParseError",
    "PerturbationInstance",
    "Report",
    "SingularMatrixError",
    "SizeLimitError",
    "SpecvarError",
    "Spectrum",
    "SweepConfig",
    "TrialRecord",
    "TriangularSplit",
    "adjoint",
    "as_matrix",
    "assemble",
    "baseline_bounds",
    "brute_force_match",
    "canonical_order",
    "commutant_basis",
    "complex_gaussian",
    "delta",
    "eigenvalues",
    "envelope_margin",
    "eps_grid",
    "eq_norm_majorant",
    "evaluate_bounds",
    "example_scalar_table",
    "frobenius_norm",
    "gen_instance",
    "is_normal",
    "is_violation",
    "jordan_matrix",
    "kappa2",
    "lambda_matrix",
    "make_instance",
    "make_jordan_spec",
    "matmul",
    "new_bounds_complex",
    "new_bounds_real",
    "normal_bounds",
    "offblock_residual",
    "optimal_epsilon",
    "optimal_match",
    "perturbed_spectrum",
    "phi",
    "random_conditioned",
    "random_unitary",
    "rank_one",
    "read_jordan_spec",
    "read_matrix",
    "read_report",
    "run_sweep",
    "run_trial",
    "s_number",
    "s_values",
    "scalar_shift",
    "scaling_inequalities",
    "scaling_matrix",
    "solve",
    "spec_from_matrix",
    "spectral_norm",
    "split_dlu",
    "superdiagonal_part",
    "trace",
    "verify_instance",
    "write_jordan_spec",
    "write_matrix",
    "write_report",
]

"""Compressed-sensing purification of classifier inputs.

The heavy lifting lives in the compiled ``_rwkit`` extension; this package
re-exports it. Arrays of rank 1 are treated as 1D signals, rank 2 as
single-channel images and rank 3 as ``(channels, rows, cols)`` images.
"""

from ._rwkit import (
    ConfigError,
    EstimationError,
    InfeasibleError,
    IterationCapError,
    LinearClassifier,
    NumericError,
    ParameterError,
    RwkitError,
    ShapeError,
    analyze,
    brute_force_defect,
    certify_probabilistic,
    defect_budget,
    eval_report,
    gen_data,
    kappa,
    measure,
    measure_adjoint,
    normalize_config,
    partial_fourier_rip,
    partial_fourier_rwp,
    performance_bound,
    purify,
    robustness_gain,
    sensing_mask,
    soft_threshold,
    sparsity_defect,
    sparsity_norm,
    synthesize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

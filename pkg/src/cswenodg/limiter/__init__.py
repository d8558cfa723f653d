"""Compact subcell WENO limiter, parent WENO variant and positivity fix."""
from .core import (
    VARIANTS,
    Limiter,
    limit_1d,
    limit_2d,
    limit_cell,
    limit_cell_2d,
    reconstruct_points,
    subcell_average_matrix,
    subdivide_neighbors,
)
from .moments import recover_moments, recover_moments_2d, recover_moments_general
from .positivity import EPS_POSITIVITY, check_points, positivity_fix
from .weno import (
    EPSILON,
    ReconstructionOperator,
    nonlinear_weights,
    reconstruction_operator,
    reconstruction_points,
    smoothness_forms,
    smoothness_indicators,
    split_weights,
    stencil_operators,
    weno_combine,
    weno_point_value,
)

__all__ = [
    "EPSILON",
    "EPS_POSITIVITY",
    "Limiter",
    "ReconstructionOperator",
    "VARIANTS",
    "check_points",
    "limit_1d",
    "limit_2d",
    "limit_cell",
    "limit_cell_2d",
    "nonlinear_weights",
    "positivity_fix",
    "reconstruct_points",
    "reconstruction_operator",
    "reconstruction_points",
    "recover_moments",
    "recover_moments_2d",
    "recover_moments_general",
    "smoothness_forms",
    "smoothness_indicators",
    "split_weights",
    "stencil_operators",
    "subcell_average_matrix",
    "subdivide_neighbors",
    "weno_combine",
    "weno_point_value",
]

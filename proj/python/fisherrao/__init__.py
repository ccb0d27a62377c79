"""Fisher-Rao geometry of normal distributions."""

from ._core import (
    BivariateAngular,
    ClusterResult,
    GaussianUni,
    InvalidParameter,
    KarcherResult,
    NumericFailure,
    PathEstimate,
    bivariate_distance_estimate,
    bivariate_metric,
    cluster,
    convert,
    estimate_fisher_matrix,
    estimate_fisher_matrix_bivariate,
    fisher_circle,
    fisher_curvature,
    fisher_distance,
    fisher_distance_diag_u0,
    fisher_distance_diagonal,
    fisher_distance_fixed_mean,
    fisher_distance_in,
    fisher_distance_round,
    fisher_geodesic_points,
    fisher_interpolate,
    fisher_midpoint,
    gaussian_curvature,
    horizontal_bound_check,
    karcher_mean,
    kl_divergence,
    kl_from_fisher_vertical,
    kl_symmetrized,
)

__all__ = [
    "BivariateAngular",
    "ClusterResult",
    "GaussianUni",
    "InvalidParameter",
    "KarcherResult",
    "NumericFailure",
    "PathEstimate",
    "bivariate_distance_estimate",
    "bivariate_metric",
    "cluster",
    "convert",
    "estimate_fisher_matrix",
    "estimate_fisher_matrix_bivariate",
    "fisher_circle",
    "fisher_curvature",
    "fisher_distance",
    "fisher_distance_diag_u0",
    "fisher_distance_diagonal",
    "fisher_distance_fixed_mean",
    "fisher_distance_in",
    "fisher_distance_round",
    "fisher_geodesic_points",
    "fisher_interpolate",
    "fisher_midpoint",
    "gaussian_curvature",
    "horizontal_bound_check",
    "karcher_mean",
    "kl_divergence",
    "kl_from_fisher_vertical",
    "kl_symmetrized",
]

__version__ = "0.1.0"

"""Rényi information measures of grid densities."""

from repi.core.measures.joint import Joint2D, gaussian_joint, marginal_x, marginal_z, product_joint
from repi.core.measures.measures import (
    common_grid,
    concavity_profile,
    conditional_renyi,
    cross_entropy,
    cross_term,
    derivative_identities,
    entropy_power,
    gaussian_renyi_entropy,
    kl_divergence,
    log_norm,
    monotonicity_profile,
    relative_renyi,
    renyi_divergence,
    renyi_entropy,
    shannon_entropy,
    shannon_epi_gap,
    varentropy,
)

__all__ = [
    "Joint2D",
    "product_joint",
    "gaussian_joint",
    "marginal_x",
    "marginal_z",
    "log_norm",
    "shannon_entropy",
    "renyi_entropy",
    "gaussian_renyi_entropy",
    "entropy_power",
    "varentropy",
    "common_grid",
    "kl_divergence",
    "cross_entropy",
    "renyi_divergence",
    "cross_term",
    "relative_renyi",
    "conditional_renyi",
    "derivative_identities",
    "concavity_profile",
    "monotonicity_profile",
    "shannon_epi_gap",
]

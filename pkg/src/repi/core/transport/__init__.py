"""Monotone transports, escort pushforwards and normal rotations."""

from repi.core.transport.transport import (
    Transport1D,
    check_data_processing,
    check_preservation,
    escort_transport,
    fold_abs,
    jacobian_amgm,
    normal_rotation,
    parse_transport,
    pushforward,
    quantile_transport,
    rotation_covariance,
)

__all__ = [
    "Transport1D",
    "quantile_transport",
    "parse_transport",
    "pushforward",
    "fold_abs",
    "escort_transport",
    "check_preservation",
    "check_data_processing",
    "jacobian_amgm",
    "rotation_covariance",
    "normal_rotation",
]

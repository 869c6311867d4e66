"""Grid densities: analytic families, normalization, escorts and convolution."""

from repi.core.densities.densities import (
    LogConcavity,
    cdf,
    convolve,
    convolve_all,
    escort,
    inverse_escort,
    is_log_concave,
    log_power_integral,
    log_resample,
    normalize,
    read_density_csv,
    resample,
    scale_rv,
    sf,
    shift_rv,
    write_density_csv,
)
from repi.core.densities.families import AnalyticFamily, FamilyKind, make_analytic
from repi.core.densities.grid import GridDensity

__all__ = [
    "GridDensity",
    "AnalyticFamily",
    "FamilyKind",
    "make_analytic",
    "normalize",
    "log_power_integral",
    "escort",
    "inverse_escort",
    "scale_rv",
    "shift_rv",
    "resample",
    "log_resample",
    "convolve",
    "convolve_all",
    "LogConcavity",
    "is_log_concave",
    "cdf",
    "sf",
    "read_density_csv",
    "write_density_csv",
]

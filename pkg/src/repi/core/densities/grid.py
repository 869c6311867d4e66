"""GridDensity - a density sampled on a uniform 1-D grid.

The grid includes both endpoints; integrals are trapezoid sums. Values are
stored in a read-only numpy array so instances can be shared freely.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.integrate import trapezoid

from repi.core.exceptions import DegenerateDensityError, GridError

#: Densities below this value are treated as zero in every log-domain computation.
LOG_FLOOR = 1e-300

#: Smallest admissible grid.
MIN_GRID_LEN = 64


@dataclass(frozen=True, eq=False)
class GridDensity:
    """Non-negative samples of a density at ``len(values)`` equispaced points.

    Attributes:
        x_min: Left end of the support.
        x_max: Right end of the support.
        values: Density samples, endpoints included.
    """

    x_min: float
    x_max: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size < MIN_GRID_LEN:
            raise GridError(
                f"Grid needs at least {MIN_GRID_LEN} points, got shape {values.shape}",
                context={"shape": values.shape},
            )
        x_min, x_max = float(self.x_min), float(self.x_max)
        if not (np.isfinite(x_min) and np.isfinite(x_max)) or x_min >= x_max:
            raise GridError(
                f"Invalid support [{x_min}, {x_max}]", context={"x_min": x_min, "x_max": x_max}
            )
        if not np.all(np.isfinite(values)):
            raise DegenerateDensityError("Density values must be finite")
        if np.any(values < 0):
            raise DegenerateDensityError(
                "Density values must be non-negative", context={"min": float(values.min())}
            )
        values.flags.writeable = False
        object.__setattr__(self, "x_min", x_min)
        object.__setattr__(self, "x_max", x_max)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    @property
    def step(self) -> float:
        """Grid spacing."""
        return (self.x_max - self.x_min) / (self.values.size - 1)

    @cached_property
    def x(self) -> np.ndarray:
        """Grid abscissae."""
        x = np.linspace(self.x_min, self.x_max, self.values.size)
        x.flags.writeable = False
        return x

    @cached_property
    def mass(self) -> float:
        """Trapezoid integral of the values."""
        return float(trapezoid(self.values, dx=self.step))

    @cached_property
    def log_values(self) -> np.ndarray:
        """log f, with ``-inf`` wherever f is below ``LOG_FLOOR``."""
        out = np.full(self.values.size, -np.inf)
        positive = self.values > LOG_FLOOR
        out[positive] = np.log(self.values[positive])
        out.flags.writeable = False
        return out

    def integrate(self, integrand: np.ndarray) -> float:
        """Trapezoid integral of samples taken on this grid."""
        return float(trapezoid(integrand, dx=self.step))

    def expect(self, samples: np.ndarray) -> float:
        """E[samples(X)] for X with this density, restricted to points above the floor."""
        weights = np.where(self.values > LOG_FLOOR, self.values, 0.0)
        safe = np.where(self.values > LOG_FLOOR, samples, 0.0)
        return self.integrate(weights * safe)

    def __call__(self, x: np.ndarray | float) -> np.ndarray:
        """Piecewise-linear evaluation, zero outside the support."""
        return np.interp(x, self.x, self.values, left=0.0, right=0.0)


__all__ = ["GridDensity", "LOG_FLOOR", "MIN_GRID_LEN"]

"""Joint2D - a bivariate density of (X, Z) on a product grid.

Rows index x, columns index z.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import stats
from scipy.integrate import trapezoid

from repi.core.densities.grid import MIN_GRID_LEN, GridDensity
from repi.core.exceptions import DegenerateDensityError, GridError, ParameterError

MASS_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class Joint2D:
    """Samples of f(x, z) on a uniform product grid, endpoints included."""

    x_min: float
    x_max: float
    z_min: float
    z_max: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 2 or values.shape[0] < MIN_GRID_LEN or values.shape[1] < 3:
            raise GridError(f"Joint grid too small: {values.shape}", context={"shape": values.shape})
        if not (self.x_min < self.x_max and self.z_min < self.z_max):
            raise GridError("Joint grid bounds must be increasing")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise DegenerateDensityError("Joint density values must be finite and non-negative")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        mass = self.mass
        if abs(mass - 1.0) > MASS_TOL:
            raise DegenerateDensityError(
                f"Joint density has mass {mass:.9f}, expected 1", context={"mass": mass}
            )

    @property
    def step_x(self) -> float:
        return (self.x_max - self.x_min) / (self.values.shape[0] - 1)

    @property
    def step_z(self) -> float:
        return (self.z_max - self.z_min) / (self.values.shape[1] - 1)

    @cached_property
    def mass(self) -> float:
        return float(trapezoid(trapezoid(self.values, dx=self.step_z, axis=1), dx=self.step_x))

    @classmethod
    def normalized(cls, x_min, x_max, z_min, z_max, values) -> "Joint2D":
        """Build a joint after dividing the samples by their trapezoid mass."""
        values = np.asarray(values, dtype=float)
        step_x = (x_max - x_min) / (values.shape[0] - 1)
        step_z = (z_max - z_min) / (values.shape[1] - 1)
        mass = float(trapezoid(trapezoid(values, dx=step_z, axis=1), dx=step_x))
        if not np.isfinite(mass) or mass <= 0:
            raise DegenerateDensityError(f"Cannot normalize a joint density with mass {mass!r}")
        return cls(x_min, x_max, z_min, z_max, values / mass)


def product_joint(f: GridDensity, g: GridDensity) -> Joint2D:
    """Joint density f(x) g(z) of independent X ~ f and Z ~ g."""
    return Joint2D.normalized(f.x_min, f.x_max, g.x_min, g.x_max, np.outer(f.values, g.values))


def gaussian_joint(rho: float, grid_len: int = 512, half_width: float = 8.0) -> Joint2D:
    """Standard bivariate normal with correlation rho on [-w, w]^2."""
    if not -1.0 < rho < 1.0:
        raise ParameterError(f"Correlation must lie in (-1, 1), got {rho}")
    axis = np.linspace(-half_width, half_width, grid_len)
    xx, zz = np.meshgrid(axis, axis, indexing="ij")
    law = stats.multivariate_normal(mean=[0.0, 0.0], cov=[[1.0, rho], [rho, 1.0]])
    values = law.pdf(np.dstack((xx, zz)))
    return Joint2D.normalized(-half_width, half_width, -half_width, half_width, values)


def marginal_x(j: Joint2D) -> GridDensity:
    """Density of X."""
    return GridDensity(j.x_min, j.x_max, trapezoid(j.values, dx=j.step_z, axis=1))


def marginal_z(j: Joint2D) -> np.ndarray:
    """Samples of the density of Z on the z-grid."""
    return trapezoid(j.values, dx=j.step_x, axis=0)


__all__ = ["Joint2D", "product_joint", "gaussian_joint", "marginal_x", "marginal_z"]

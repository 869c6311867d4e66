"""Analytic density families used as the reference corpus.

A family is written ``name:p1,p2`` on the command line, e.g. ``gaussian:1``
or ``uniform:0,1``. Gaussian and Laplace laws are centered at zero; the
exponential lives on [0, inf) since Rényi entropies are translation invariant.
"""

import logging
import math
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from scipy import stats

from repi.core.densities.densities import normalize
from repi.core.densities.grid import MIN_GRID_LEN, GridDensity
from repi.core.exceptions import ParameterError

logger = logging.getLogger(__name__)

#: Heavy-tailed supports are capped at this many scale units. The cap ignores
#: ``min_order``: escorts of order below one keep a heavier tail than the
#: density and lose more than ``tail_mass`` beyond it.
HEAVY_TAIL_CAP = 200.0


class FamilyKind(StrEnum):
    GAUSSIAN = "gaussian"
    UNIFORM = "uniform"
    EXPONENTIAL = "exponential"
    LAPLACE = "laplace"
    STUDENT_T = "student_t"


_ARITY = {
    FamilyKind.GAUSSIAN: 1,
    FamilyKind.UNIFORM: 2,
    FamilyKind.EXPONENTIAL: 1,
    FamilyKind.LAPLACE: 1,
    FamilyKind.STUDENT_T: 1,
}


@dataclass(frozen=True, slots=True)
class AnalyticFamily:
    """A parametric law with a closed-form density.

    Attributes:
        kind: Family name.
        params: sigma, (a, b), rate, scale or dof depending on ``kind``.
    """

    kind: FamilyKind
    params: tuple[float, ...]

    def __post_init__(self):
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        expected = _ARITY[self.kind]
        if len(params) != expected:
            raise ParameterError(
                f"{self.kind} takes {expected} parameter(s), got {len(params)}",
                context={"family": str(self.kind), "params": params},
            )
        if not all(math.isfinite(p) for p in params):
            raise ParameterError(f"{self.kind} parameters must be finite: {params}")
        if self.kind is FamilyKind.UNIFORM:
            a, b = params
            if not a < b:
                raise ParameterError(f"uniform requires a < b, got a={a}, b={b}")
        elif params[0] <= 0:
            raise ParameterError(f"{self.kind} parameter must be > 0, got {params[0]}")

    @classmethod
    def parse(cls, spec: str) -> "AnalyticFamily":
        """Parse ``name:p1,p2,...``."""
        name, sep, raw = spec.strip().partition(":")
        try:
            kind = FamilyKind(name.strip().lower())
        except ValueError as e:
            known = ", ".join(k.value for k in FamilyKind)
            raise ParameterError(f"Unknown family {name!r}; expected one of: {known}") from e
        if not sep or not raw.strip():
            raise ParameterError(f"Family spec {spec!r} is missing parameters")
        try:
            params = tuple(float(p) for p in raw.split(","))
        except ValueError as e:
            raise ParameterError(f"Non-numeric parameter in {spec!r}") from e
        return cls(kind=kind, params=params)

    @classmethod
    def gaussian(cls, sigma: float = 1.0) -> "AnalyticFamily":
        return cls(FamilyKind.GAUSSIAN, (sigma,))

    @classmethod
    def uniform(cls, a: float = 0.0, b: float = 1.0) -> "AnalyticFamily":
        return cls(FamilyKind.UNIFORM, (a, b))

    @classmethod
    def exponential(cls, rate: float = 1.0) -> "AnalyticFamily":
        return cls(FamilyKind.EXPONENTIAL, (rate,))

    @classmethod
    def laplace(cls, scale: float = 1.0) -> "AnalyticFamily":
        return cls(FamilyKind.LAPLACE, (scale,))

    @classmethod
    def student_t(cls, dof: float = 1.0) -> "AnalyticFamily":
        return cls(FamilyKind.STUDENT_T, (dof,))

    @property
    def distribution(self):
        """Frozen scipy distribution for this family."""
        match self.kind:
            case FamilyKind.GAUSSIAN:
                return stats.norm(scale=self.params[0])
            case FamilyKind.UNIFORM:
                a, b = self.params
                return stats.uniform(loc=a, scale=b - a)
            case FamilyKind.EXPONENTIAL:
                return stats.expon(scale=1.0 / self.params[0])
            case FamilyKind.LAPLACE:
                return stats.laplace(scale=self.params[0])
            case FamilyKind.STUDENT_T:
                return stats.t(df=self.params[0])

    def support(self, tail_mass: float, min_order: float = 1.0) -> tuple[float, float]:
        """Truncated support omitting at most ``tail_mass`` per side.

        With ``min_order`` < 1 the support is widened so that the escort of
        that order is truncated at the same tail mass.

        Student-t supports are not widened; they stop at ``HEAVY_TAIL_CAP``.
        """
        s = min(1.0, min_order)
        p = self.params[0]
        match self.kind:
            case FamilyKind.GAUSSIAN:
                half = float(stats.norm.isf(tail_mass, scale=p / math.sqrt(s)))
                return -half, half
            case FamilyKind.UNIFORM:
                return self.params[0], self.params[1]
            case FamilyKind.EXPONENTIAL:
                return 0.0, -math.log(tail_mass) / (s * p)
            case FamilyKind.LAPLACE:
                half = (p / s) * -math.log(2.0 * tail_mass)
                return -half, half
            case FamilyKind.STUDENT_T:
                half = float(stats.t.isf(tail_mass, df=p))
                if half > HEAVY_TAIL_CAP:
                    omitted = 2.0 * float(stats.t.sf(HEAVY_TAIL_CAP, df=p))
                    logger.warning(
                        "student_t(%s) support capped at +/-%s; omitted mass %.3e",
                        p,
                        HEAVY_TAIL_CAP,
                        omitted,
                    )
                    half = HEAVY_TAIL_CAP
                if s < 1.0:
                    logger.debug(
                        "student_t(%s) support not widened for escorts of order %s",
                        p,
                        s,
                    )
                return -half, half

    def __str__(self) -> str:
        return f"{self.kind}:{','.join(f'{p:g}' for p in self.params)}"


def make_analytic(
    family: AnalyticFamily | str,
    grid_len: int = 8192,
    tail_mass: float = 1e-10,
    *,
    min_order: float = 1.0,
) -> GridDensity:
    """Sample an analytic family on a truncated uniform grid and normalize.

    Args:
        family: Family instance or ``name:params`` spec.
        grid_len: Number of grid points (at least 64).
        tail_mass: Omitted probability per side, in (0, 1e-6].
        min_order: Smallest escort order the grid must also resolve.

    Raises:
        ParameterError: On invalid family parameters, grid size or tail mass.
    """
    if isinstance(family, str):
        family = AnalyticFamily.parse(family)
    if int(grid_len) != grid_len or grid_len < MIN_GRID_LEN:
        raise ParameterError(f"grid_len must be an integer >= {MIN_GRID_LEN}, got {grid_len}")
    if not 0 < tail_mass <= 1e-6:
        raise ParameterError(f"tail_mass must be in (0, 1e-6], got {tail_mass}")
    if min_order <= 0:
        raise ParameterError(f"min_order must be > 0, got {min_order}")

    x_min, x_max = family.support(tail_mass, min_order)
    x = np.linspace(x_min, x_max, int(grid_len))
    if family.kind is FamilyKind.UNIFORM:
        values = np.full(x.size, 1.0 / (x_max - x_min))
    else:
        values = family.distribution.pdf(x)

    density = normalize(GridDensity(x_min, x_max, values))
    logger.debug("make_analytic %s: [%g, %g] with %d points", family, x_min, x_max, grid_len)
    return density


__all__ = ["AnalyticFamily", "FamilyKind", "make_analytic", "HEAVY_TAIL_CAP"]

"""Rényi information measures of grid densities.

Entropies are in nats. ``r = 1`` always takes the Shannon code path. Pairwise
measures first bring both densities onto a common grid by log-linear
resampling; infinite divergences are returned as ``math.inf``.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np

from repi.core.densities.densities import (
    convolve,
    escort,
    is_log_concave,
    log_power_integral,
    log_resample,
)
from repi.core.densities.grid import LOG_FLOOR, GridDensity
from repi.core.dto.measures_dto import (
    ConcavityProfile,
    DerivativeReport,
    MonotonicityProfile,
    ProfilePoint,
)
from repi.core.dto.result_dto import StatusCode, StatusDetail
from repi.core.exceptions import DegenerateDensityError, OrderError, ParameterError
from repi.core.measures.joint import Joint2D, marginal_z
from repi.core.orders import RenyiOrder, as_order

logger = logging.getLogger(__name__)

#: f-mass allowed where the other density vanishes before a divergence is declared infinite.
SUPPORT_MASS_TOL = 1e-10

#: Z-slices whose marginal is below this fraction of its maximum are skipped.
SLICE_FLOOR = 1e-12


# =============================================================================
# SINGLE-DENSITY MEASURES
# =============================================================================


def log_norm(f: GridDensity, r: RenyiOrder | float) -> float:
    """log ∫ f^r, i.e. (1 - r) h_r(f); exactly 0 at r = 1."""
    r = as_order(r)
    if r.is_limit_one:
        return 0.0
    return log_power_integral(f, r.r)


def shannon_entropy(f: GridDensity) -> float:
    """-∫ f log f over the points above the floor."""
    return -f.expect(f.log_values)


def renyi_entropy(f: GridDensity, r: RenyiOrder | float) -> float:
    """h_r(f) = log(∫ f^r) / (1 - r); Shannon entropy at r = 1."""
    r = as_order(r)
    if r.is_limit_one:
        return shannon_entropy(f)
    return log_power_integral(f, r.r) / (1.0 - r.r)


def gaussian_renyi_entropy(n: int, sigma2: float, r: RenyiOrder | float) -> float:
    """Closed-form h_r of an n-dimensional N(0, sigma2 I)."""
    if n < 1 or sigma2 <= 0:
        raise ParameterError(f"Need n >= 1 and sigma2 > 0, got n={n}, sigma2={sigma2}")
    r = as_order(r)
    base = 0.5 * n * math.log(2.0 * math.pi * sigma2)
    if r.is_limit_one:
        return base + 0.5 * n
    return base + 0.5 * n * r.conjugate * math.log(r.r) / r.r


def entropy_power(f: GridDensity, r: RenyiOrder | float) -> float:
    """N_r(f) = exp(2 h_r(f)) in dimension one."""
    return math.exp(2.0 * renyi_entropy(f, r))


def varentropy(f: GridDensity, r: RenyiOrder | float = 1.0) -> float:
    """Var log f(X_r) with X_r distributed as the escort of order r."""
    fr = escort(f, r)
    mean = fr.expect(f.log_values)
    centered = f.log_values - mean
    return max(0.0, fr.expect(centered * centered))


# =============================================================================
# PAIRWISE MEASURES
# =============================================================================


def common_grid(f: GridDensity, g: GridDensity) -> tuple[GridDensity, GridDensity]:
    """Resample f and g onto the union of their supports at the finer step.

    Densities already sharing a grid are returned untouched.
    """
    if f.x_min == g.x_min and f.x_max == g.x_max and len(f) == len(g):
        return f, g
    x_min, x_max = min(f.x_min, g.x_min), max(f.x_max, g.x_max)
    h = min(f.step, g.step)
    n = math.ceil((x_max - x_min) / h - 1e-9) + 1
    logger.debug("common_grid: [%g, %g] with %d points", x_min, x_max, n)
    return log_resample(f, x_min, x_max, n), log_resample(g, x_min, x_max, n)


def _stranded_mass(f: GridDensity, g: GridDensity) -> tuple[np.ndarray, float]:
    """Mask of points where f > 0 but g vanishes, and the f-mass carried there."""
    stranded = (f.values > LOG_FLOOR) & ~(g.values > LOG_FLOOR)
    return stranded, f.integrate(np.where(stranded, f.values, 0.0))


def _log_integral(grid: GridDensity, z: np.ndarray) -> float:
    """log of the trapezoid integral of exp(z), ``-inf`` entries contributing 0."""
    finite = np.isfinite(z)
    if not finite.any():
        return -math.inf
    shift = float(z[finite].max())
    w = np.zeros_like(z)
    w[finite] = np.exp(z[finite] - shift)
    integral = grid.integrate(w)
    return shift + math.log(integral) if integral > 0 else -math.inf


def kl_divergence(f: GridDensity, g: GridDensity) -> float:
    """∫ f log(f/g); +inf when f puts mass where g vanishes."""
    f, g = common_grid(f, g)
    stranded, mass = _stranded_mass(f, g)
    if mass > SUPPORT_MASS_TOL:
        return math.inf
    both = (f.values > LOG_FLOOR) & ~stranded
    diff = np.where(both, f.log_values - np.where(both, g.log_values, 0.0), 0.0)
    return f.integrate(np.where(both, f.values, 0.0) * diff)


def cross_entropy(f: GridDensity, g: GridDensity) -> float:
    """-∫ f log g; +inf when f puts mass where g vanishes."""
    f, g = common_grid(f, g)
    stranded, mass = _stranded_mass(f, g)
    if mass > SUPPORT_MASS_TOL:
        return math.inf
    both = (f.values > LOG_FLOOR) & ~stranded
    return -f.integrate(np.where(both, f.values * np.where(both, g.log_values, 0.0), 0.0))


def renyi_divergence(f: GridDensity, g: GridDensity, r: RenyiOrder | float) -> float:
    """D_r(f || g) = log(∫ f^r g^(1-r)) / (r - 1); Kullback-Leibler at r = 1.

    For r > 1, f-mass above ``SUPPORT_MASS_TOL`` where g vanishes gives +inf.
    """
    r = as_order(r)
    if r.is_limit_one:
        return kl_divergence(f, g)
    f, g = common_grid(f, g)
    _, mass = _stranded_mass(f, g)
    if r.r > 1 and mass > SUPPORT_MASS_TOL:
        return math.inf
    both = (f.values > LOG_FLOOR) & (g.values > LOG_FLOOR)
    with np.errstate(invalid="ignore"):
        z = np.where(both, r.r * f.log_values + (1.0 - r.r) * g.log_values, -np.inf)
    log_int = _log_integral(f, z)
    if log_int == -math.inf:
        return math.inf
    return log_int / (r.r - 1.0)


def cross_term(f: GridDensity, g: GridDensity, r: RenyiOrder | float) -> float:
    """-r' log ∫ f g_r^(1/r'), the r-entropy of f measured against g.

    At r = 1 this is the cross-entropy -∫ f log g.
    """
    r = as_order(r)
    if r.is_limit_one:
        return cross_entropy(f, g)
    f, g = common_grid(f, g)
    rc = r.conjugate
    _, mass = _stranded_mass(f, g)
    if r.r < 1 and mass > SUPPORT_MASS_TOL:
        return math.inf
    log_zg = log_power_integral(g, r.r)
    both = (f.values > LOG_FLOOR) & (g.values > LOG_FLOOR)
    with np.errstate(invalid="ignore"):
        z = np.where(both, f.log_values + (r.r * g.log_values - log_zg) / rc, -np.inf)
    log_int = _log_integral(f, z)
    if log_int == -math.inf:
        return math.inf
    return -rc * log_int


def relative_renyi(f: GridDensity, g: GridDensity, r: RenyiOrder | float) -> float:
    """Δ_r(f || g) = D_(1/r)(f_r || g_r) between the escorts of order r.

    Falls back to Kullback-Leibler at r = 1.
    """
    r = as_order(r)
    if r.is_limit_one:
        return kl_divergence(f, g)
    f, g = common_grid(f, g)
    return renyi_divergence(escort(f, r), escort(g, r), 1.0 / r.r)


# =============================================================================
# CONDITIONAL ENTROPY
# =============================================================================


def conditional_renyi(j: Joint2D, r: RenyiOrder | float) -> float:
    """Arimoto conditional entropy h_r(X|Z) = -r' log ∫ p(z) ||f(.|z)||_r dz.

    Raises:
        DegenerateDensityError: If the Z-marginal vanishes.
    """
    r = as_order(r)
    pz = marginal_z(j)
    top = float(pz.max()) if pz.size else 0.0
    if not math.isfinite(top) or top <= 0:
        raise DegenerateDensityError("Z-marginal of the joint density vanishes")
    keep = pz > SLICE_FLOOR * top
    dx, dz = j.step_x, j.step_z
    wx = np.full(j.values.shape[0], dx)
    wx[[0, -1]] *= 0.5
    wz = np.full(pz.size, dz)
    wz[[0, -1]] *= 0.5

    cond = j.values[:, keep] / pz[keep]
    positive = cond > LOG_FLOOR
    logs = np.full(cond.shape, -np.inf)
    logs[positive] = np.log(cond[positive])

    if r.is_limit_one:
        inner = -(wx[:, None] * np.where(positive, cond * np.where(positive, logs, 0.0), 0.0)).sum(
            axis=0
        )
        return float((wz[keep] * pz[keep] * inner).sum())

    # log ||f(.|z)||_r per slice, shifted per column.
    z = r.r * logs
    shift = np.max(np.where(positive, z, -np.inf), axis=0)
    sums = (wx[:, None] * np.where(positive, np.exp(z - shift), 0.0)).sum(axis=0)
    log_norms = (shift + np.log(sums)) / r.r
    outer = log_norms + np.log(pz[keep] * wz[keep])
    top_log = float(outer.max())
    log_int = top_log + math.log(float(np.exp(outer - top_log).sum()))
    return -r.conjugate * log_int


# =============================================================================
# DERIVATIVES IN r AND PROFILES
# =============================================================================


def derivative_identities(
    f: GridDensity, r: RenyiOrder | float, h_step: float = 1e-3
) -> tuple[DerivativeReport, DerivativeReport, DerivativeReport]:
    """Central differences in r against their escort-based closed forms.

    The three identities are, with L(r) = log ∫ f^r = (1 - r) h_r:

    - ``dL/dr = E_r[log f] = -h(X_r || X)``
    - ``dh_r/dr = -D(X_r || X) / (1 - r)^2``
    - ``d2L/dr2 = Var_r log f``

    Raises:
        OrderError: If the stencil would touch r = 1 or r <= 0.
    """
    r = as_order(r)
    if h_step <= 0:
        raise ParameterError(f"h_step must be > 0, got {h_step}")
    if r.is_limit_one or abs(r.r - 1.0) <= 2.0 * h_step or r.r - 2.0 * h_step <= 0:
        raise OrderError(
            f"Stencil [r - 2h, r + 2h] around r={r.r} must avoid 1 and stay positive",
            r=r.r,
            context={"h_step": h_step},
        )
    lo, mid, hi = (log_power_integral(f, s) for s in (r.r - h_step, r.r, r.r + h_step))

    fr = escort(f, r)
    cross = fr.expect(f.log_values)
    kl = fr.expect(fr.log_values - np.where(fr.values > LOG_FLOOR, f.log_values, 0.0))
    var = varentropy(f, r)

    h_lo = lo / (1.0 - (r.r - h_step))
    h_hi = hi / (1.0 - (r.r + h_step))
    return (
        DerivativeReport(
            identity="d_log_norm", r=r.r, lhs_fd=(hi - lo) / (2.0 * h_step), rhs_analytic=cross
        ),
        DerivativeReport(
            identity="d_entropy",
            r=r.r,
            lhs_fd=(h_hi - h_lo) / (2.0 * h_step),
            rhs_analytic=-kl / (1.0 - r.r) ** 2,
        ),
        DerivativeReport(
            identity="d2_log_norm",
            r=r.r,
            lhs_fd=(hi - 2.0 * mid + lo) / h_step**2,
            rhs_analytic=var,
        ),
    )


def _sorted_orders(r_grid: Sequence[float]) -> list[float]:
    orders = sorted(float(r) for r in r_grid)
    if not orders or orders[0] <= 0:
        raise ParameterError("Order grid must be non-empty with all orders > 0")
    if any(b <= a for a, b in zip(orders, orders[1:], strict=False)):
        raise ParameterError("Order grid must not repeat values")
    return orders


def concavity_profile(
    f: GridDensity,
    r_grid: Sequence[float],
    *,
    tol: float = 1e-7,
    logconcave_tol: float = 1e-6,
) -> ConcavityProfile:
    """Sample g(r) = (1 - r) h_r + log r and test its concavity.

    Non-log-concave inputs are returned as a ``NOT_APPLICABLE`` failure.
    Second differences on a non-uniform grid are 2 (chord - g), which
    reduces to the usual stencil on a uniform one.
    """
    verdict = is_log_concave(f, logconcave_tol)
    if not verdict:
        return ConcavityProfile.fail(
            StatusDetail(
                code=StatusCode.NOT_APPLICABLE,
                message="Concavity in r is only claimed for log-concave densities",
                context={"worst_violation": verdict.worst_violation},
            ),
            tol=tol,
        )
    orders = _sorted_orders(r_grid)
    values = [log_norm(f, r) + math.log(r) for r in orders]
    d2 = []
    for i in range(1, len(orders) - 1):
        r0, r1, r2 = orders[i - 1 : i + 2]
        g0, g1, g2 = values[i - 1 : i + 2]
        chord = g0 + (g2 - g0) * (r1 - r0) / (r2 - r0)
        d2.append(2.0 * (chord - g1))
    return ConcavityProfile.success(
        points=[ProfilePoint(r=r, value=v) for r, v in zip(orders, values, strict=True)],
        second_differences=d2,
        is_concave=all(d <= tol for d in d2),
        tol=tol,
    )


def monotonicity_profile(
    f: GridDensity, orders: Sequence[float], *, slack: float = 1e-9
) -> MonotonicityProfile:
    """h_r over increasing orders with non-increasing and strict verdicts."""
    grid = _sorted_orders(orders)
    h = [renyi_entropy(f, r) for r in grid]
    steps = [b - a for a, b in zip(h, h[1:], strict=False)]
    return MonotonicityProfile(
        points=[ProfilePoint(r=r, value=v) for r, v in zip(grid, h, strict=True)],
        non_increasing=all(s <= slack for s in steps),
        strictly_decreasing=all(s < 0 for s in steps),
        slack=slack,
    )


def shannon_epi_gap(f: GridDensity, g: GridDensity) -> float:
    """N(X + Y) - N(X) - N(Y) with Shannon entropy powers; >= 0."""
    return entropy_power(convolve(f, g), 1.0) - entropy_power(f, 1.0) - entropy_power(g, 1.0)


__all__ = [
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
    "SUPPORT_MASS_TOL",
]

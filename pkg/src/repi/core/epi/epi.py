"""Entropy power inequalities checked on grid densities.

Multiplicative form:   N_r^α(Σ X_i) >= c Σ N_r^α(X_i)
Linearized form:       h_r(Σ √λ_i X_i) - Σ λ_i h_r(X_i) >= ½ (log c / α + (1/α - 1) H(λ))
Gaussian-extremal form with orders r_i:
                       h_r(Σ √λ_i X_i) - Σ λ_i h_(r_i)(X_i) >= ½ r' (log r / r - Σ log r_i / r_i)
"""

import logging
import math
from collections.abc import Sequence

from repi.core.densities.densities import convolve_all, is_log_concave, scale_rv
from repi.core.densities.grid import GridDensity
from repi.core.dto.epi_dto import EpiConstants, EpiReport, InequalityId
from repi.core.dto.result_dto import StatusCode
from repi.core.epi.constants import alpha_li, c_new_repi, c_ram_sason, logconcave_constants
from repi.core.epi.weights import (
    LambdaWeights,
    as_weights,
    conjugate,
    lambda_from_orders,
    shannon_entropy_of_weights,
)
from repi.core.exceptions import HypothesisError, ParameterError
from repi.core.measures.measures import entropy_power, renyi_entropy
from repi.core.orders import as_order

logger = logging.getLogger(__name__)

#: Repeated convolution widens supports; pipelines stop at this many summands.
MAX_SUMMANDS = 8

TOL_ABS = 1e-4
TOL_REL = 1e-3

#: Default exponent of the unified (c, α) inequality.
UNIFIED_ALPHA = 0.5


def tolerance(rhs: float, tol_abs: float = TOL_ABS, tol_rel: float = TOL_REL) -> float:
    """max(tol_abs, tol_rel |rhs|)."""
    return max(tol_abs, tol_rel * abs(rhs)) if math.isfinite(rhs) else tol_abs


def _check_summands(densities: Sequence[GridDensity]) -> int:
    m = len(densities)
    if m < 2:
        raise ParameterError(f"Need at least two densities, got {m}")
    if m > MAX_SUMMANDS:
        raise ParameterError(f"At most {MAX_SUMMANDS} densities are supported, got {m}")
    return m


# =============================================================================
# LINEARIZATION
# =============================================================================


def linearized_gap(
    densities: Sequence[GridDensity],
    lam: LambdaWeights | Sequence[float],
    r: float,
    per_density_orders: Sequence[float] | None = None,
) -> float:
    """h_r(Σ √λ_i X_i) - Σ λ_i h_(r_i)(X_i), with r_i = r unless orders are given.

    Raises:
        HypothesisError: If the given orders do not produce the given weights.
    """
    lam = as_weights(lam)
    m = _check_summands(densities)
    if len(lam) != m:
        raise ParameterError(f"{len(lam)} weights for {m} densities")
    orders = [float(r)] * m
    if per_density_orders is not None:
        if len(per_density_orders) != m:
            raise ParameterError(f"{len(per_density_orders)} orders for {m} densities")
        implied = lambda_from_orders(r, per_density_orders)
        if max(abs(a - b) for a, b in zip(implied, lam, strict=True)) > 1e-9:
            raise HypothesisError(
                "Orders and weights are inconsistent",
                hypothesis="weights_from_orders",
                context={"lambda": list(lam), "implied": list(implied)},
            )
        orders = [float(o) for o in per_density_orders]

    total = convolve_all([scale_rv(f, math.sqrt(w)) for f, w in zip(densities, lam, strict=True)])
    mixed = math.fsum(
        w * renyi_entropy(f, ri) for f, w, ri in zip(densities, lam, orders, strict=True)
    )
    return renyi_entropy(total, r) - mixed


def linearized_bound(c: float, alpha: float, lam: LambdaWeights | Sequence[float]) -> float:
    """½ (log c / α + (1/α - 1) H(λ))."""
    if c <= 0 or alpha <= 0:
        raise ParameterError(f"Need c > 0 and alpha > 0, got c={c}, alpha={alpha}")
    return 0.5 * (math.log(c) / alpha + (1.0 / alpha - 1.0) * shannon_entropy_of_weights(lam))


def gaussian_extremal_bound(r: float, orders: Sequence[float]) -> float:
    """½ r' (log r / r - Σ log r_i / r_i), the value attained by i.i.d. Gaussians."""
    rc = conjugate(r)
    return 0.5 * rc * (math.log(r) / r - math.fsum(math.log(ri) / ri for ri in orders))


# =============================================================================
# CHECKS
# =============================================================================


def check_dct(
    densities: Sequence[GridDensity],
    r: float,
    orders: Sequence[float],
    *,
    label: str = "",
    tol_abs: float = TOL_ABS,
    tol_rel: float = TOL_REL,
) -> EpiReport:
    """Compare the mixed-order linearized gap against its Gaussian value.

    Raises:
        HypothesisError: On mixed conjugate signs or a violated constraint.
    """
    lam = lambda_from_orders(r, orders)
    lhs = linearized_gap(densities, lam, r, orders)
    rhs = gaussian_extremal_bound(r, orders)
    return EpiReport.compare(
        InequalityId.DCT,
        lhs,
        rhs,
        tolerance(rhs, tol_abs, tol_rel),
        EpiConstants(
            r=r,
            m=len(densities),
            lam=list(lam),
            orders=[float(o) for o in orders],
            source="gaussian_extremal_bound",
        ),
        label=label,
    )


def check_repig(
    densities: Sequence[GridDensity],
    r: float,
    c: float,
    alpha: float,
    *,
    inequality_id: InequalityId = InequalityId.REPIG,
    source: str = "user",
    label: str = "",
    tol_abs: float = TOL_ABS,
    tol_rel: float = TOL_REL,
) -> EpiReport:
    """N_r^α(Σ X_i) >= c Σ N_r^α(X_i)."""
    if c <= 0 or alpha <= 0:
        raise ParameterError(f"Need c > 0 and alpha > 0, got c={c}, alpha={alpha}")
    m = _check_summands(densities)
    powers = [entropy_power(f, r) ** alpha for f in densities]
    lhs = entropy_power(convolve_all(list(densities)), r) ** alpha
    rhs = c * math.fsum(powers)
    return EpiReport.compare(
        inequality_id,
        lhs,
        rhs,
        tolerance(rhs, tol_abs, tol_rel),
        EpiConstants(c=c, alpha=alpha, r=r, m=m, source=source),
        label=label,
        extra={"entropy_powers": [p ** (1.0 / alpha) for p in powers]},
    )


def check_linearized(
    densities: Sequence[GridDensity],
    r: float,
    c: float,
    alpha: float,
    *,
    source: str = "user",
    label: str = "",
    tol_abs: float = TOL_ABS,
    tol_rel: float = TOL_REL,
) -> EpiReport:
    """Linearized form at λ_i = N_r^α(X_i) / Σ N_r^α(X_j) on the rescaled X_i / √λ_i.

    With these weights, 2α (lhs - rhs) equals the log-ratio of the sides of
    the multiplicative inequality, so both verdicts coincide.
    """
    m = _check_summands(densities)
    powers = [entropy_power(f, r) ** alpha for f in densities]
    lam = LambdaWeights.normalized(powers)
    rescaled = [scale_rv(f, 1.0 / math.sqrt(w)) for f, w in zip(densities, lam, strict=True)]
    lhs = linearized_gap(rescaled, lam, r)
    rhs = linearized_bound(c, alpha, lam)
    return EpiReport.compare(
        InequalityId.LINEARIZED,
        lhs,
        rhs,
        tolerance(rhs, tol_abs, tol_rel),
        EpiConstants(c=c, alpha=alpha, r=r, m=m, lam=list(lam), source=source),
        label=label,
    )


def _constants(r: float, m: int, **kw) -> EpiConstants:
    return EpiConstants(r=r, m=m, **kw)


def logconcavity_gate(
    densities: Sequence[GridDensity],
    inequality_id: InequalityId,
    r: float,
    *,
    tol: float = 1e-6,
    label: str = "",
) -> EpiReport | None:
    """A NOT_APPLICABLE report if some input fails the log-concavity test, else None."""
    for i, f in enumerate(densities):
        verdict = is_log_concave(f, tol)
        if not verdict:
            logger.info("%s at r=%g skipped: density %d is not log-concave", inequality_id, r, i)
            return EpiReport.skipped(
                inequality_id,
                StatusCode.NOT_APPLICABLE,
                f"Density {i} is not log-concave; the r < 1 constants do not apply",
                _constants(r, len(densities), source="log_concave_constant"),
                label=label,
                context={"index": i, "worst_violation": verdict.worst_violation},
            )
    return None


def _order_one(inequality_id: InequalityId, r: float, m: int, label: str) -> EpiReport:
    return EpiReport.skipped(
        inequality_id,
        StatusCode.NOT_APPLICABLE,
        "Rényi power inequalities with these constants exclude r = 1",
        _constants(r, m),
        label=label,
    )


def check_repic(
    densities: Sequence[GridDensity],
    r: float,
    c: float | None = None,
    *,
    label: str = "",
    logconcave_tol: float = 1e-6,
    tol_abs: float = TOL_ABS,
    tol_rel: float = TOL_REL,
) -> EpiReport:
    """N_r(Σ X_i) >= c Σ N_r(X_i) with the optimal constant of the branch of r."""
    r = float(as_order(r))
    m = _check_summands(densities)
    if r == 1:
        return _order_one(InequalityId.REPIC, r, m, label)
    source = "user"
    if r < 1:
        gate = logconcavity_gate(densities, InequalityId.REPIC, r, tol=logconcave_tol, label=label)
        if gate is not None:
            return gate
    if c is None:
        if r > 1:
            c, source = c_ram_sason(r, m), "ram_sason_constant"
        else:
            c, source = logconcave_constants(r, m).c, "log_concave_constant"
    return check_repig(
        densities,
        r,
        c,
        1.0,
        inequality_id=InequalityId.REPIC,
        source=source,
        label=label,
        tol_abs=tol_abs,
        tol_rel=tol_rel,
    )


def check_repialpha(
    densities: Sequence[GridDensity],
    r: float,
    alpha: float | None = None,
    *,
    label: str = "",
    logconcave_tol: float = 1e-6,
    tol_abs: float = TOL_ABS,
    tol_rel: float = TOL_REL,
) -> EpiReport:
    """N_r^α(Σ X_i) >= Σ N_r^α(X_i) with the exponent of the branch of r.

    The log-concave exponent is only known for two summands.
    """
    r = float(as_order(r))
    m = _check_summands(densities)
    if r == 1:
        return _order_one(InequalityId.REPIALPHA, r, m, label)
    source = "user"
    if r < 1:
        if m > 2 and alpha is None:
            return EpiReport.skipped(
                InequalityId.REPIALPHA,
                StatusCode.UNSUPPORTED,
                "The log-concave exponent is established for two summands only",
                _constants(r, m, source="log_concave_exponent"),
                label=label,
            )
        gate = logconcavity_gate(
            densities, InequalityId.REPIALPHA, r, tol=logconcave_tol, label=label
        )
        if gate is not None:
            return gate
    if alpha is None:
        if r > 1:
            alpha, source = alpha_li(r), "li_exponent"
        else:
            alpha, source = logconcave_constants(r, m).alpha, "log_concave_exponent"
    return check_repig(
        densities,
        r,
        1.0,
        alpha,
        inequality_id=InequalityId.REPIALPHA,
        source=source,
        label=label,
        tol_abs=tol_abs,
        tol_rel=tol_rel,
    )


def check_unified(
    densities: Sequence[GridDensity],
    r: float,
    c: float | None = None,
    alpha: float = UNIFIED_ALPHA,
    *,
    label: str = "",
    logconcave_tol: float = 1e-6,
    tol_abs: float = TOL_ABS,
    tol_rel: float = TOL_REL,
) -> EpiReport:
    """check_repig with the constant c(r, m, α) of the branch of r for 0 < α < 1."""
    r = float(as_order(r))
    m = _check_summands(densities)
    if r == 1:
        return _order_one(InequalityId.REPIG, r, m, label)
    source = "user"
    if r < 1:
        gate = logconcavity_gate(densities, InequalityId.REPIG, r, tol=logconcave_tol, label=label)
        if gate is not None:
            return gate
    if c is None:
        if r > 1:
            c, source = c_new_repi(r, m, alpha), "unified_constant"
        else:
            c, source = logconcave_constants(r, m, alpha).c_alpha, "log_concave_unified_constant"
    return check_repig(
        densities,
        r,
        c,
        alpha,
        source=source,
        label=label,
        tol_abs=tol_abs,
        tol_rel=tol_rel,
    )


def linearized_companion(
    report: EpiReport,
    densities: Sequence[GridDensity],
    *,
    tol_abs: float = TOL_ABS,
    tol_rel: float = TOL_REL,
) -> EpiReport | None:
    """The linearized report matching a multiplicative one, None if it did not run."""
    if not report.is_ok() or report.constants.c is None or report.constants.alpha is None:
        return None
    k = report.constants
    return check_linearized(
        densities,
        k.r,
        k.c,
        k.alpha,
        source=k.source,
        label=report.label,
        tol_abs=tol_abs,
        tol_rel=tol_rel,
    )


__all__ = [
    "MAX_SUMMANDS",
    "tolerance",
    "linearized_gap",
    "linearized_bound",
    "gaussian_extremal_bound",
    "check_dct",
    "check_repig",
    "check_linearized",
    "check_repic",
    "check_repialpha",
    "check_unified",
    "logconcavity_gate",
    "linearized_companion",
]

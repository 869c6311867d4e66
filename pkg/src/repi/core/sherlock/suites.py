"""Built-in verification suites.

Each suite maps a ``SuiteRequest`` to a list of ``EpiReport`` in a stable
order. Checks whose hypotheses do not cover the inputs come back as skipped
reports, never as exceptions.
"""

import logging
import math

import numpy as np

from repi.core.densities.densities import is_log_concave
from repi.core.dto.epi_dto import EpiConstants, EpiReport, InequalityId
from repi.core.dto.result_dto import StatusCode
from repi.core.dto.suite_dto import SuiteRequest
from repi.core.epi.epi import (
    check_dct,
    check_repialpha,
    check_repic,
    check_unified,
    linearized_companion,
    logconcavity_gate,
    tolerance,
)
from repi.core.epi.weights import LambdaWeights, orders_from_lambda, snap_orders
from repi.core.exceptions import ParameterError
from repi.core.measures.measures import concavity_profile, varentropy
from repi.core.transport.transport import (
    check_data_processing,
    check_preservation,
    normal_rotation,
    parse_transport,
    rotation_covariance,
)

logger = logging.getLogger(__name__)

#: Orders swept by the concavity suite when the request names none.
DEFAULT_R_GRID = tuple(np.linspace(0.2, 5.0, 50).tolist())

PRESERVATION_TOL = 1e-3
DATA_PROCESSING_TOL = 1e-6
ROTATION_EXACT_TOL = 1e-12


def _not_applicable_at_one(request: SuiteRequest, inequality_id: InequalityId) -> EpiReport:
    return EpiReport.skipped(
        inequality_id,
        StatusCode.NOT_APPLICABLE,
        "This suite needs an order r != 1",
        EpiConstants(r=request.r, m=len(request.densities)),
        label=request.label,
    )


def _with_companion(report: EpiReport, request: SuiteRequest) -> list[EpiReport]:
    companion = linearized_companion(report, request.densities, **request.tolerances)
    return [report] if companion is None else [report, companion]


# =============================================================================
# INEQUALITY SUITES
# =============================================================================


def dct_suite(request: SuiteRequest) -> list[EpiReport]:
    """Mixed-order inequality with the Gaussian extremal right-hand side.

    Orders come from ``suborders`` (snapped onto the constraint) or from the
    weights, uniform by default. Orders below one are gated on log-concavity.
    """
    if request.r == 1:
        return [_not_applicable_at_one(request, InequalityId.DCT)]
    m = len(request.densities)
    if request.suborders is not None:
        orders = snap_orders(request.r, request.suborders)
    else:
        lam = LambdaWeights(request.lam) if request.lam else LambdaWeights.uniform(m)
        orders = orders_from_lambda(request.r, lam)
    if request.r < 1:
        gate = logconcavity_gate(
            request.densities,
            InequalityId.DCT,
            request.r,
            tol=request.settings.logconcave_tol,
            label=request.label,
        )
        if gate is not None:
            return [gate]
    return [check_dct(request.densities, request.r, orders, label=request.label, **request.tolerances)]


def repic_suite(request: SuiteRequest) -> list[EpiReport]:
    report = check_repic(
        request.densities,
        request.r,
        request.c,
        label=request.label,
        logconcave_tol=request.settings.logconcave_tol,
        **request.tolerances,
    )
    return _with_companion(report, request)


def repialpha_suite(request: SuiteRequest) -> list[EpiReport]:
    report = check_repialpha(
        request.densities,
        request.r,
        request.alpha,
        label=request.label,
        logconcave_tol=request.settings.logconcave_tol,
        **request.tolerances,
    )
    return _with_companion(report, request)


def repig_suite(request: SuiteRequest) -> list[EpiReport]:
    """Unified (c, α) inequality; α defaults to the configured exponent."""
    alpha = request.alpha if request.alpha is not None else request.settings.alpha_unified
    if not 0 < alpha < 1:
        raise ParameterError(f"The unified inequality needs 0 < alpha < 1, got {alpha}")
    report = check_unified(
        request.densities,
        request.r,
        request.c,
        alpha,
        label=request.label,
        logconcave_tol=request.settings.logconcave_tol,
        **request.tolerances,
    )
    return _with_companion(report, request)


def linearized_suite(request: SuiteRequest) -> list[EpiReport]:
    """Additive forms of the three multiplicative inequalities."""
    linearized, skipped = [], []
    for suite in (repic_suite, repialpha_suite, repig_suite):
        for report in suite(request):
            if report.inequality_id is InequalityId.LINEARIZED:
                linearized.append(report)
            elif not report.is_ok():
                skipped.append(report)
    return linearized or skipped


# =============================================================================
# SINGLE-DENSITY SUITES
# =============================================================================


def varentropy_suite(request: SuiteRequest) -> list[EpiReport]:
    """Var log f(X_r) <= 1/r² for each log-concave input."""
    reports = []
    bound = 1.0 / request.r**2
    for f, label in zip(request.densities, request.labels, strict=True):
        constants = EpiConstants(r=request.r, m=1, source="log_concave_varentropy_bound")
        verdict = is_log_concave(f, request.settings.logconcave_tol)
        if not verdict:
            reports.append(
                EpiReport.skipped(
                    InequalityId.VARENTROPY,
                    StatusCode.NOT_APPLICABLE,
                    "The varentropy bound holds for log-concave densities",
                    constants,
                    label=label,
                    context={"worst_violation": verdict.worst_violation},
                )
            )
            continue
        value = varentropy(f, request.r)
        reports.append(
            EpiReport.compare(
                InequalityId.VARENTROPY,
                bound,
                value,
                tolerance(value, **request.tolerances),
                constants,
                label=label,
            )
        )
    return reports


def concavity_suite(request: SuiteRequest) -> list[EpiReport]:
    """Second differences of (1 - r) h_r + log r stay below the tolerance."""
    r_grid = request.r_grid or DEFAULT_R_GRID
    tol = request.settings.concavity_tol
    reports = []
    for f, label in zip(request.densities, request.labels, strict=True):
        constants = EpiConstants(r=request.r, m=1, orders=list(r_grid), source="concavity_in_r")
        profile = concavity_profile(
            f, r_grid, tol=tol, logconcave_tol=request.settings.logconcave_tol
        )
        if not profile.is_ok():
            reports.append(
                EpiReport.skipped(
                    InequalityId.CONCAVITY,
                    profile.detail.code,
                    profile.detail.message,
                    constants,
                    label=label,
                    context=profile.detail.context,
                )
            )
            continue
        worst = max(profile.second_differences, default=0.0)
        reports.append(
            EpiReport.compare(
                InequalityId.CONCAVITY,
                0.0,
                worst,
                tol,
                constants,
                label=label,
                extra={"second_differences": profile.second_differences},
                equality_tol=0.0,
            )
        )
    return reports


# =============================================================================
# TRANSPORT SUITES
# =============================================================================


def preservation_suite(request: SuiteRequest) -> list[EpiReport]:
    """Equality under the requested transport and no increase under the fold u -> |u|."""
    if len(request.densities) != 2:
        raise ParameterError(
            f"The preservation suite needs exactly two densities, got {len(request.densities)}"
        )
    if request.r == 1:
        return [_not_applicable_at_one(request, InequalityId.PRESERVATION)]
    s = request.settings
    transport = parse_transport(
        request.transport,
        knots=s.transport_knots,
        u_range=s.transport_range,
        grid_len=s.grid_len,
        tail_mass=s.tail_mass,
        min_order=s.escort_min_order,
    )
    f, g = request.densities
    reports = []
    checks = (
        (transport.name, check_preservation(f, g, request.r, transport, tol=PRESERVATION_TOL)),
        ("fold_abs", check_data_processing(f, g, request.r, tol=DATA_PROCESSING_TOL)),
    )
    for name, result in checks:
        constants = EpiConstants(r=request.r, m=2, source=name)
        label = f"{request.label}:{name}"
        if not result.is_ok():
            reports.append(
                EpiReport.skipped(
                    InequalityId.PRESERVATION,
                    result.detail.code,
                    result.detail.message,
                    constants,
                    label=label,
                )
            )
            continue
        extra = {"delta_src": result.delta_src, "delta_dst": result.delta_dst}
        if name == "fold_abs":
            lhs, rhs = result.delta_src, result.delta_dst
        else:
            lhs, rhs = 0.0, result.abs_err
        reports.append(
            EpiReport.compare(
                InequalityId.PRESERVATION,
                lhs,
                rhs,
                result.tol,
                constants,
                label=label,
                extra=extra,
                equality_tol=0.0,
            )
        )
    return reports


def rotation_suite(request: SuiteRequest) -> list[EpiReport]:
    """Rotation of i.i.d. standard normals: exact moments, sampled moments, inverse."""
    lam = request.lam[0] if request.lam else 0.5
    samples = request.samples or request.settings.samples
    seed = request.seed if request.seed is not None else request.settings.seed
    constants = EpiConstants(r=request.r, m=2, lam=[lam, 1.0 - lam], source="normal_rotation")

    exact = float(np.max(np.abs(rotation_covariance(lam) - np.eye(2))))
    rng = np.random.default_rng(seed)
    x, y = rng.standard_normal(samples), rng.standard_normal(samples)
    xr, yr, sampled = normal_rotation(lam, x, y)
    xb, yb, _ = normal_rotation(lam, xr, yr, inverse=True)
    roundtrip = float(max(np.max(np.abs(xb - x)), np.max(np.abs(yb - y))))
    deviation = max(
        max(abs(m) for m in sampled.means),
        max(abs(v - 1.0) for v in sampled.variances) / math.sqrt(2.0),
        abs(sampled.correlation),
    )
    logger.debug("rotation lam=%g seed=%d: corr %.3e, tol %.3e", lam, seed, sampled.correlation, sampled.tol)
    return [
        EpiReport.compare(
            InequalityId.ROTATION, 0.0, exact, ROTATION_EXACT_TOL, constants, label="exact", equality_tol=0.0
        ),
        EpiReport.compare(
            InequalityId.ROTATION,
            sampled.tol,
            deviation,
            0.0,
            constants,
            label="sampled",
            extra={
                "samples": samples,
                "seed": seed,
                "means": sampled.means,
                "variances": sampled.variances,
                "correlation": sampled.correlation,
            },
            equality_tol=0.0,
        ),
        EpiReport.compare(
            InequalityId.ROTATION,
            0.0,
            roundtrip,
            ROTATION_EXACT_TOL,
            constants,
            label="inverse",
            equality_tol=0.0,
        ),
    ]


BUILTIN_SUITES = {
    "dct": dct_suite,
    "repic": repic_suite,
    "repialpha": repialpha_suite,
    "repig": repig_suite,
    "linearized": linearized_suite,
    "varentropy": varentropy_suite,
    "concavity": concavity_suite,
    "preservation": preservation_suite,
    "rotation": rotation_suite,
}


__all__ = [
    "BUILTIN_SUITES",
    "DEFAULT_R_GRID",
    "dct_suite",
    "repic_suite",
    "repialpha_suite",
    "repig_suite",
    "linearized_suite",
    "varentropy_suite",
    "concavity_suite",
    "preservation_suite",
    "rotation_suite",
]

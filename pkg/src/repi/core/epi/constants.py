"""Closed-form constants of Rényi entropy power inequalities.

All constants derive from the functional

    A(λ) = |r'| (log r / r - Σ log r_i / r_i),   r'_i = r'/λ_i,

which is convex and negative on the open simplex. ``r > 1`` uses the
general constants, ``0 < r < 1`` the constants for log-concave densities.
Logarithms are natural; base-2 forms are converted internally.
"""

import logging
import math
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from scipy.special import entr, xlogy

from repi.core.epi.weights import LambdaWeights, as_weights, conjugate, orders_from_lambda
from repi.core.exceptions import ConsistencyError, DomainError, ParameterError

logger = logging.getLogger(__name__)

A_FORMS_TOL = 1e-10


# =============================================================================
# A(λ)
# =============================================================================


def _a_first_form(r: float, lam: LambdaWeights) -> float:
    orders = orders_from_lambda(r, lam)
    return abs(conjugate(r)) * (math.log(r) / r - math.fsum(math.log(ri) / ri for ri in orders))


def _a_second_form(rc: float, lam: np.ndarray) -> np.ndarray:
    """|r'| (Σ t_i log t_i - t log t) with t_i = 1 - λ_i/r', t = 1 - 1/r'.

    ``lam`` may hold one weight vector per row.
    """
    t = 1.0 - np.asarray(lam) / rc
    t0 = 1.0 - 1.0 / rc
    return abs(rc) * (xlogy(t, t).sum(axis=-1) - t0 * math.log(t0))


def a_of_lambda(r: float, lam: "LambdaWeights | list[float]") -> float:
    """A(λ), evaluated through both of its expressions.

    Raises:
        ConsistencyError: If the two expressions differ by more than 1e-10.
    """
    lam = as_weights(lam)
    first = _a_first_form(r, lam)
    second = float(_a_second_form(conjugate(r), lam.as_array()))
    if abs(first - second) > A_FORMS_TOL * max(1.0, abs(first)):
        raise ConsistencyError(
            f"A(λ) forms disagree: {first!r} vs {second!r}",
            context={"r": r, "lambda": list(lam), "first": first, "second": second},
        )
    return second


# =============================================================================
# r > 1
# =============================================================================


def _require_above_one(name: str, r: float) -> float:
    if not math.isfinite(r) or r <= 1:
        raise DomainError(name, f"requires r > 1, got r={r!r}", context={"r": r})
    return conjugate(r)


def _require_m(name: str, m: int) -> None:
    if int(m) != m or m < 2:
        raise DomainError(name, f"requires an integer m >= 2, got m={m!r}", context={"m": m})


def _require_alpha(name: str, alpha: float) -> None:
    if not 0 < alpha < 1:
        raise DomainError(name, f"requires 0 < alpha < 1, got {alpha!r}", context={"alpha": alpha})


def c_ram_sason(r: float, m: int) -> float:
    """c = r^(r'/r) (1 - 1/(m r'))^(m r' - 1), the optimum of exp A over m summands."""
    rc = _require_above_one("c_ram_sason", r)
    _require_m("c_ram_sason", m)
    return r ** (rc / r) * (1.0 - 1.0 / (m * rc)) ** (m * rc - 1.0)


def c_bobkov_chistyakov(r: float) -> float:
    """c = r^(r'/r) / e, the infimum of c_ram_sason over m."""
    rc = _require_above_one("c_bobkov_chistyakov", r)
    return r ** (rc / r) / math.e


def alpha_li(r: float) -> float:
    """Exponent α with c = 1, from 1/α - 1 = A(1/2, 1/2) / log 2."""
    rc = _require_above_one("alpha_li", r)
    bracket = 1.0 + rc * math.log2(r) / r + (2.0 * rc - 1.0) * math.log2(1.0 - 1.0 / (2.0 * rc))
    return 1.0 / bracket


def alpha_bm(r: float) -> float:
    """The earlier exponent (r + 1)/2."""
    _require_above_one("alpha_bm", r)
    return (r + 1.0) / 2.0


def c_new_repi(r: float, m: int, alpha: float) -> float:
    """c = [m c_ram_sason(r, m)]^α / m for an exponent 0 < α < 1."""
    _require_alpha("c_new_repi", alpha)
    return (m * c_ram_sason(r, m)) ** alpha / m


# =============================================================================
# 0 < r < 1, log-concave densities
# =============================================================================


@dataclass(frozen=True, slots=True)
class LogConcaveConstants:
    """Constants for log-concave summands at an order 0 < r < 1.

    Attributes:
        c: Multiplicative constant with α = 1.
        alpha: Exponent with c = 1 (two summands).
        c_alpha: Constant for the requested α, if one was given.
    """

    c: float
    alpha: float
    c_alpha: float | None = None


def logconcave_constants(r: float, m: int, alpha: float | None = None) -> LogConcaveConstants:
    """Closed forms obtained from A(λ) with |r'| = -r'.

    Raises:
        DomainError: If r is not in (0, 1), m < 2, or alpha is not in (0, 1).
    """
    if not 0 < r < 1:
        raise DomainError("logconcave_constants", f"requires 0 < r < 1, got r={r!r}")
    _require_m("logconcave_constants", m)
    rc = conjugate(r)
    arc = -rc
    c = r ** (-rc / r) * (1.0 - 1.0 / (m * rc)) ** (1.0 - m * rc)
    bracket = (
        1.0 + arc * math.log2(r) / r + (2.0 * arc + 1.0) * math.log2(1.0 + 1.0 / (2.0 * arc))
    )
    c_alpha = None
    if alpha is not None:
        _require_alpha("logconcave_constants", alpha)
        c_alpha = (m * c) ** alpha / m
    return LogConcaveConstants(c=c, alpha=1.0 / bracket, c_alpha=c_alpha)


# =============================================================================
# SIMPLEX GRID SEARCH
# =============================================================================


class Objective(StrEnum):
    """Functionals minimized over the simplex."""

    A = "a"
    A_MINUS_H = "a_minus_h"
    A_OVER_H = "a_over_h"


def _simplex_grid(m: int, step: float) -> tuple[np.ndarray, float]:
    """Interior simplex nodes with spacing 1/K, K a multiple of m not coarser than ``step``."""
    k = math.ceil(1.0 / step - 1e-9)
    k += (-k) % m
    idx = np.arange(1, k)
    if m == 2:
        pts = np.column_stack((idx, k - idx))
    else:
        i, j = np.meshgrid(idx, idx, indexing="ij")
        rest = k - i - j
        keep = rest >= 1
        pts = np.column_stack((i[keep], j[keep], rest[keep]))
    return pts / k, 1.0 / k


def _closed_form_minimum(r: float, m: int, objective: Objective, alpha: float | None) -> float:
    if r > 1:
        match objective:
            case Objective.A:
                return math.log(c_ram_sason(r, m))
            case Objective.A_MINUS_H:
                return math.log(c_new_repi(r, m, alpha))
            case Objective.A_OVER_H:
                return 1.0 / alpha_li(r) - 1.0
    lc = logconcave_constants(r, m, alpha if objective is Objective.A_MINUS_H else None)
    match objective:
        case Objective.A:
            return math.log(lc.c)
        case Objective.A_MINUS_H:
            return math.log(lc.c_alpha)
        case Objective.A_OVER_H:
            return 1.0 / lc.alpha - 1.0


def lambda_minimize(
    r: float,
    m: int,
    objective: Objective | str = Objective.A,
    step: float = 1e-3,
    *,
    alpha: float | None = None,
) -> tuple[LambdaWeights, float]:
    """Exhaustive simplex grid search for the minimum of an objective.

    The objectives are A(λ), αA(λ) - (1 - α)H(λ) and A(λ)/H(λ) (m = 2).
    The grid is refined so that the barycenter is a node.

    Raises:
        ParameterError: On unsupported m, step or objective settings.
        ConsistencyError: If the minimizer is not the barycenter or the
            minimum disagrees with its closed form by more than 1e-6 relative.
    """
    objective = Objective(objective)
    if m not in (2, 3):
        raise ParameterError(f"Grid search supports m in {{2, 3}}, got {m}")
    if not 0 < step <= 1e-2:
        raise ParameterError(f"step must be in (0, 1e-2], got {step}")
    if objective is Objective.A_MINUS_H and (alpha is None or not 0 < alpha < 1):
        raise ParameterError(f"A_MINUS_H needs 0 < alpha < 1, got {alpha!r}")
    if objective is Objective.A_OVER_H and m != 2:
        raise ParameterError("A_OVER_H is only defined here for m = 2")

    rc = conjugate(r)
    pts, snapped = _simplex_grid(m, step)
    values = _a_second_form(rc, pts)
    if objective is not Objective.A:
        h = entr(pts).sum(axis=1)
        if objective is Objective.A_MINUS_H:
            values = alpha * values - (1.0 - alpha) * h
        else:
            values = values / h
    best = int(np.argmin(values))
    argmin = LambdaWeights.normalized(pts[best])
    minimum = float(values[best])
    logger.debug(
        "lambda_minimize r=%g m=%d %s: %d nodes, step %.2e, min %.12g",
        r,
        m,
        objective,
        len(pts),
        snapped,
        minimum,
    )

    distance = float(np.max(np.abs(argmin.as_array() - 1.0 / m)))
    expected = _closed_form_minimum(r, m, objective, alpha)
    if distance > step:
        raise ConsistencyError(
            f"Minimizer {list(argmin)} is not within {step:g} of the barycenter",
            context={"distance": distance},
        )
    if abs(minimum - expected) > 1e-6 * abs(expected):
        raise ConsistencyError(
            f"Grid minimum {minimum!r} disagrees with closed form {expected!r}",
            context={"grid": minimum, "closed_form": expected},
        )
    return argmin, minimum


__all__ = [
    "a_of_lambda",
    "c_ram_sason",
    "c_bobkov_chistyakov",
    "alpha_li",
    "alpha_bm",
    "c_new_repi",
    "LogConcaveConstants",
    "logconcave_constants",
    "Objective",
    "lambda_minimize",
]

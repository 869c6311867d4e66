"""Simplex weights linking per-summand orders r_i to a common order r.

With r' = r/(r - 1), the weights are λ_i = r'/r'_i and the orders satisfy
Σ 1/r'_i = 1/r'. All conjugates must share the sign of r - 1.
"""

import logging
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np
from scipy.special import entr

from repi.core.exceptions import HypothesisError, OrderError, SimplexError, UndefinedConjugateError

logger = logging.getLogger(__name__)

SIMPLEX_TOL = 1e-12
CONSTRAINT_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class LambdaWeights:
    """A point of the open probability simplex with at least two coordinates."""

    weights: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) < 2:
            raise SimplexError(f"Need at least two weights, got {len(w)}")
        if not all(0.0 < x < 1.0 for x in w):
            raise SimplexError(f"Weights must lie in (0, 1): {w}", context={"weights": w})
        total = math.fsum(w)
        if abs(total - 1.0) > SIMPLEX_TOL:
            raise SimplexError(f"Weights sum to {total!r}, not 1", context={"sum": total})

    @classmethod
    def normalized(cls, values: Sequence[float]) -> "LambdaWeights":
        """Divide positive values by their sum."""
        v = [float(x) for x in values]
        if any(x <= 0 or not math.isfinite(x) for x in v):
            raise SimplexError(f"Weights must be finite and > 0: {v}")
        total = math.fsum(v)
        return cls(tuple(x / total for x in v))

    @classmethod
    def uniform(cls, m: int) -> "LambdaWeights":
        return cls(tuple([1.0 / m] * m))

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self) -> Iterator[float]:
        return iter(self.weights)

    def __getitem__(self, i: int) -> float:
        return self.weights[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.weights)


def as_weights(lam: "LambdaWeights | Sequence[float]") -> LambdaWeights:
    if isinstance(lam, LambdaWeights):
        return lam
    return LambdaWeights(tuple(lam))


def conjugate(r: float) -> float:
    """r' = r/(r - 1).

    Raises:
        OrderError: If r <= 0.
        UndefinedConjugateError: If r == 1.
    """
    if not math.isfinite(r) or r <= 0:
        raise OrderError(f"Order must be finite and > 0, got {r!r}", r=r)
    if r == 1:
        raise UndefinedConjugateError()
    return r / (r - 1.0)


def _raw_weights(r: float, orders: Sequence[float]) -> tuple[float, list[float], float]:
    """Return (r', [r'/r'_i], Σ 1/r'_i - 1/r') after the same-sign check."""
    rc = conjugate(r)
    conj = [conjugate(float(ri)) for ri in orders]
    if len(conj) < 2:
        raise HypothesisError("Need at least two orders", hypothesis="m>=2")
    if any(math.copysign(1.0, c) != math.copysign(1.0, rc) for c in conj):
        raise HypothesisError(
            "All orders must lie on the same side of 1 as r",
            hypothesis="same_sign_conjugates",
            context={"r": r, "orders": list(orders)},
        )
    residual = math.fsum(1.0 / c for c in conj) - 1.0 / rc
    return rc, [rc / c for c in conj], residual


def lambda_from_orders(
    r: float, orders: Sequence[float], *, tol: float = CONSTRAINT_TOL
) -> LambdaWeights:
    """λ_i = r'/r'_i for orders satisfying Σ 1/r'_i = 1/r'.

    Raises:
        HypothesisError: On mixed signs or a violated constraint.
    """
    _, raw, residual = _raw_weights(r, orders)
    if abs(residual) > tol:
        raise HypothesisError(
            f"Orders violate the constraint sum(1/r'_i) = 1/r' by {residual:.3e}",
            hypothesis="conjugate_constraint",
            context={"r": r, "orders": list(orders), "residual": residual},
        )
    return LambdaWeights.normalized(raw)


def orders_from_lambda(r: float, lam: "LambdaWeights | Sequence[float]") -> list[float]:
    """Inverse of lambda_from_orders: r'_i = r'/λ_i, r_i = r'_i/(r'_i - 1)."""
    lam = as_weights(lam)
    rc = conjugate(r)
    out = []
    for w in lam:
        ci = rc / w
        out.append(ci / (ci - 1.0))
    return out


def snap_orders(r: float, orders: Sequence[float], *, rel_tol: float = 1e-3) -> list[float]:
    """Project rounded orders (e.g. 1.3333) onto the exact constraint surface.

    Orders whose constraint residual is within ``rel_tol`` of 1/|r'| are
    replaced by orders_from_lambda of their normalized weights.

    Raises:
        HypothesisError: If the residual is larger than ``rel_tol`` allows.
    """
    rc, raw, residual = _raw_weights(r, orders)
    if abs(residual) <= CONSTRAINT_TOL:
        return [float(x) for x in orders]
    if abs(residual) > rel_tol * abs(1.0 / rc):
        raise HypothesisError(
            f"Orders violate the constraint sum(1/r'_i) = 1/r' by {residual:.3e}",
            hypothesis="conjugate_constraint",
            context={"r": r, "orders": list(orders), "residual": residual},
        )
    snapped = orders_from_lambda(r, LambdaWeights.normalized(raw))
    logger.warning("Orders %s snapped to %s to satisfy the constraint", list(orders), snapped)
    return snapped


def shannon_entropy_of_weights(lam: "LambdaWeights | Sequence[float]") -> float:
    """H(λ) = -Σ λ_i log λ_i in nats."""
    return float(entr(as_weights(lam).as_array()).sum())


__all__ = [
    "LambdaWeights",
    "as_weights",
    "conjugate",
    "lambda_from_orders",
    "orders_from_lambda",
    "snap_orders",
    "shannon_entropy_of_weights",
]

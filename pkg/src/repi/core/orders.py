"""Rényi orders and their conjugate exponents."""

import math
from dataclasses import dataclass

from repi.core.exceptions import OrderError, UndefinedConjugateError


@dataclass(frozen=True, slots=True)
class RenyiOrder:
    """An order r > 0 of a Rényi quantity.

    ``is_limit_one`` marks the Shannon end of the family, which every
    measure evaluates on a dedicated code path.

    Attributes:
        r: The order.
        is_limit_one: True iff r is exactly 1.
    """

    r: float
    is_limit_one: bool = False

    def __post_init__(self):
        if not math.isfinite(self.r) or self.r <= 0:
            raise OrderError(f"Rényi order must be finite and > 0, got {self.r!r}", r=self.r)
        if (self.r == 1.0) != self.is_limit_one:
            raise OrderError("is_limit_one must be set iff r == 1", r=self.r)

    @classmethod
    def of(cls, r: float) -> "RenyiOrder":
        """Build an order, flagging r == 1 as the Shannon limit."""
        r = float(r)
        return cls(r=r, is_limit_one=r == 1.0)

    @property
    def conjugate(self) -> float:
        """r' = r/(r-1); negative for r < 1."""
        if self.is_limit_one:
            raise UndefinedConjugateError()
        return self.r / (self.r - 1.0)

    def __float__(self) -> float:
        return self.r


def as_order(r: "RenyiOrder | float") -> RenyiOrder:
    """Coerce a plain number to a RenyiOrder."""
    if isinstance(r, RenyiOrder):
        return r
    return RenyiOrder.of(r)


__all__ = ["RenyiOrder", "as_order"]

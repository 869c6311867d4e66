"""Result types for information measures."""

from pydantic import BaseModel, Field, model_validator

from repi.core.dto.result_dto import BaseResult


class DerivativeReport(BaseModel):
    """Finite difference in r against the analytic right-hand side.

    Attributes:
        identity: Which derivative identity was checked.
        r: Order at which the derivative is taken.
        lhs_fd: Central finite difference.
        rhs_analytic: Closed-form value computed from the escort.
        abs_err: |lhs_fd - rhs_analytic|.
    """

    identity: str
    r: float
    lhs_fd: float
    rhs_analytic: float
    abs_err: float = Field(default=0.0, ge=0.0)

    model_config = {"extra": "forbid"}

    @model_validator(mode="after")
    def _fill_abs_err(self):
        self.abs_err = abs(self.lhs_fd - self.rhs_analytic)
        return self


class ProfilePoint(BaseModel):
    """One (r, value) sample of a profile in r."""

    r: float
    value: float


class ConcavityProfile(BaseResult):
    """g(r) = (1 - r) h_r + log r sampled on an r-grid.

    Attributes:
        points: The sampled profile.
        second_differences: 2 (chord - g) at each interior node.
        is_concave: All second differences are <= ``tol``.
        tol: Absolute tolerance on the second differences.
    """

    points: list[ProfilePoint] = Field(default_factory=list)
    second_differences: list[float] = Field(default_factory=list)
    is_concave: bool = False
    tol: float = 1e-7


class MonotonicityProfile(BaseModel):
    """h_r across increasing orders.

    Attributes:
        points: (r, h_r) pairs sorted by r.
        non_increasing: h_r never increases beyond ``slack``.
        strictly_decreasing: h_r strictly decreases at every step.
    """

    points: list[ProfilePoint]
    non_increasing: bool
    strictly_decreasing: bool
    slack: float = 1e-9


__all__ = ["DerivativeReport", "ProfilePoint", "ConcavityProfile", "MonotonicityProfile"]

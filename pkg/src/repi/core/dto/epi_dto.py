"""EpiReport - structured verdict of an inequality check."""

import math
from enum import StrEnum
from typing import Any, Self

from pydantic import BaseModel, ConfigDict, Field

from repi.core.dto.result_dto import BaseResult, StatusCode, StatusDetail

#: |gap| below this is reported as equality within tolerance.
EQUALITY_TOL = 2e-4


class InequalityId(StrEnum):
    """Which comparison a report instantiates."""

    REPIC = "repic"
    REPIALPHA = "repialpha"
    REPIG = "repig"
    DCT = "dct"
    LINEARIZED = "linearized"
    VARENTROPY = "varentropy"
    CONCAVITY = "concavity"
    PRESERVATION = "preservation"
    ROTATION = "rotation"


class EpiConstants(BaseModel):
    """Constants and parameters a report was computed with.

    Attributes:
        c: Multiplicative constant, if any.
        alpha: Power exponent, if any.
        r: Rényi order.
        m: Number of summands.
        lam: Simplex weights, if any.
        orders: Per-summand orders, if any.
        source: Name of the closed form the constants come from.
    """

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    c: float | None = None
    alpha: float | None = None
    r: float
    m: int
    lam: list[float] | None = Field(default=None, alias="lambda")
    orders: list[float] | None = None
    source: str = "user"


class EpiReport(BaseResult):
    """Left side, right side and verdict of one comparison.

    ``passed`` (serialized as ``pass``) holds iff ``gap >= -tol``.
    """

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    inequality_id: InequalityId
    label: str = ""
    lhs: float = math.nan
    rhs: float = math.nan
    gap: float = math.nan
    tol: float = 0.0
    passed: bool = Field(default=False, alias="pass")
    near_equality: bool = False
    constants: EpiConstants
    extra: dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def compare(
        cls,
        inequality_id: InequalityId,
        lhs: float,
        rhs: float,
        tol: float,
        constants: EpiConstants,
        *,
        label: str = "",
        extra: dict[str, Any] | None = None,
        equality_tol: float = EQUALITY_TOL,
    ) -> Self:
        """Build a report for ``lhs >= rhs`` with tolerance ``tol``."""
        gap = lhs - rhs
        passed = not math.isnan(gap) and gap >= -tol
        near = math.isfinite(gap) and abs(gap) < equality_tol
        detail = None
        if not math.isfinite(gap):
            detail = StatusDetail(
                code=StatusCode.INFINITE,
                message="A side of the comparison is not finite",
                context={"lhs": str(lhs), "rhs": str(rhs)},
            )
        elif near:
            detail = StatusDetail(
                code=StatusCode.NEAR_EQUALITY,
                message=f"Sides agree within {equality_tol:g}",
            )
        return cls.success(
            detail=detail,
            inequality_id=inequality_id,
            label=label,
            lhs=lhs,
            rhs=rhs,
            gap=gap,
            tol=tol,
            passed=passed,
            near_equality=near,
            constants=constants,
            extra=extra or {},
        )

    @classmethod
    def skipped(
        cls,
        inequality_id: InequalityId,
        code: str,
        message: str,
        constants: EpiConstants,
        *,
        label: str = "",
        context: dict[str, Any] | None = None,
    ) -> Self:
        """Report for a check whose hypotheses do not cover the inputs."""
        return cls.fail(
            StatusDetail(code=code, message=message, context=context or {}),
            inequality_id=inequality_id,
            label=label,
            constants=constants,
        )

    @property
    def failed(self) -> bool:
        """True for a report that ran and did not pass."""
        return self.is_ok() and not self.passed


__all__ = ["EpiReport", "EpiConstants", "InequalityId", "EQUALITY_TOL"]

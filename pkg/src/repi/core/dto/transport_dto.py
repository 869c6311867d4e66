"""Result types for transport checks."""

from pydantic import Field

from repi.core.dto.result_dto import BaseResult


class PreservationReport(BaseResult):
    """Relative r-entropy before and after an escort-level transport.

    Attributes:
        r: Order of the relative entropy.
        delta_src: Relative r-entropy of the source pair.
        delta_dst: Relative r-entropy of the transported pair.
        abs_err: |delta_dst - delta_src|.
        tol: Tolerance used for the verdict.
        passed: Equality (invertible maps) or no increase (many-to-one maps) held.
    """

    r: float
    delta_src: float = float("nan")
    delta_dst: float = float("nan")
    abs_err: float = float("nan")
    tol: float
    passed: bool = False


class RotationReport(BaseResult):
    """Sample moments of a rotated pair of standard normal samples.

    Attributes:
        lam: Rotation weight.
        samples: Number of sample pairs.
        means: Means of the two rotated components.
        variances: Sample variances of the two rotated components.
        correlation: Sample correlation of the rotated components.
        tol: 4/√N.
        passed: All diagnostics within tolerance.
    """

    lam: float
    samples: int
    means: list[float] = Field(default_factory=list)
    variances: list[float] = Field(default_factory=list)
    correlation: float = float("nan")
    tol: float
    passed: bool = False


__all__ = ["PreservationReport", "RotationReport"]

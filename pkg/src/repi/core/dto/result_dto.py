"""Base result types for repi checks.

Expected outcomes (a suite that does not apply to its inputs, a divergence
that is infinite, an inequality met with equality) are returned as results
with a ``StatusDetail``; numerical breakdown raises exceptions from
``repi.core.exceptions``.
"""

from typing import Any, Final, Literal, Self

from pydantic import BaseModel, Field


class StatusDetail(BaseModel):
    """Structured status information for check results.

    Attributes:
        code: Machine-readable status code (see ``StatusCode``).
        message: Human-readable status description.
        context: Additional diagnostic data (safe to log/serialize).
    """

    code: str = Field(description="Status code: 'not_applicable', 'infinite', ...")
    message: str = Field(description="Human-readable status description")
    context: dict[str, Any] = Field(default_factory=dict, description="Diagnostic context")


class BaseResult(BaseModel):
    """Base class for all repi check results.

    Pattern:
    - status="success" → the check ran, specific fields populated
    - status="error" → the check could not run on these inputs, detail says why

    Example:
        >>> profile = concavity_profile(f, r_grid)
        >>> if profile.is_ok():
        ...     print(profile.is_concave)
        >>> else:
        ...     print(f"[{profile.detail.code}] {profile.detail.message}")
    """

    status: Literal["success", "error"] = Field(default="success", description="Check status")
    detail: StatusDetail | None = Field(
        default=None, description="Status details (present for error or flagged success)"
    )

    model_config = {"extra": "forbid"}

    def is_ok(self) -> bool:
        """Check if the check ran."""
        return self.status == "success"

    def is_error(self) -> bool:
        """Check if the check was skipped with an expected status."""
        return self.status == "error"

    @classmethod
    def success(cls, *, detail: StatusDetail | None = None, **kwargs: Any) -> Self:
        """Factory method for a result that ran.

        Args:
            detail: Optional informational status (e.g. near equality).
            **kwargs: Subclass-specific fields.
        """
        return cls(status="success", detail=detail, **kwargs)

    @classmethod
    def fail(cls, detail: StatusDetail, **kwargs: Any) -> Self:
        """Factory method for an expected non-result.

        Args:
            detail: Required status details describing why the check did not run.
            **kwargs: Subclass-specific fields (use defaults).
        """
        return cls(status="error", detail=detail, **kwargs)


# =============================================================================
# STATUS CODE REGISTRY
# =============================================================================


class StatusCode:
    """Centralized registry of status codes used across repi."""

    # -------------------------------------------------------------------------
    # Hypothesis gates
    # -------------------------------------------------------------------------
    NOT_APPLICABLE: Final = "not_applicable"
    """[Gate] Inputs or order outside the hypothesis class of the check."""

    UNSUPPORTED: Final = "unsupported"
    """[Gate] Known result only for a narrower setting (e.g. two variables)."""

    # -------------------------------------------------------------------------
    # Numerics
    # -------------------------------------------------------------------------
    INFINITE: Final = "infinite"
    """[Measures] A side of the comparison is +inf (support mismatch)."""

    NEAR_EQUALITY: Final = "near_equality"
    """[Epi] Both sides agree within the equality tolerance."""


__all__ = ["BaseResult", "StatusDetail", "StatusCode"]

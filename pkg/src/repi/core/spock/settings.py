"""Validated numeric defaults read from the ``repi`` configuration section."""

from pydantic import BaseModel, Field


class NumericSettings(BaseModel):
    """Numeric knobs shared by the densities, checks and suites.

    Attributes:
        grid_len: Points per analytic density grid.
        tail_mass: Mass omitted per side when truncating supports.
        escort_min_order: Supports are widened so escorts of this order also
            omit at most ``tail_mass`` per side.
        tol_abs: Absolute part of the inequality tolerance.
        tol_rel: Relative part of the inequality tolerance.
        logconcave_tol: Tolerance of the log-concavity gate.
        concavity_tol: Tolerance on second differences of the concavity profile.
        transport_range: Source range [-R, R] of transport knots.
        transport_knots: Number of transport knots.
        alpha_unified: Exponent of the unified inequality.
        samples: Sample pairs drawn by the rotation suite.
        seed: Seed for sampled checks.
    """

    grid_len: int = Field(default=8192, ge=64)
    tail_mass: float = Field(default=1e-10, gt=0.0, le=1e-6)
    escort_min_order: float = Field(default=0.5, gt=0.0)
    tol_abs: float = Field(default=1e-4, ge=0.0)
    tol_rel: float = Field(default=1e-3, ge=0.0)
    logconcave_tol: float = Field(default=1e-6, ge=0.0)
    concavity_tol: float = Field(default=1e-7, ge=0.0)
    transport_range: float = Field(default=8.0, gt=0.0)
    transport_knots: int = Field(default=8192, ge=16)
    alpha_unified: float = Field(default=0.5, gt=0.0, lt=1.0)
    samples: int = Field(default=100_000, ge=100)
    seed: int = Field(default=0, ge=0)

    model_config = {"extra": "forbid"}


__all__ = ["NumericSettings"]

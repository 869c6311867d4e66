"""SuiteRequest - inputs of a verification suite run."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from repi.core.densities.grid import GridDensity
from repi.core.spock.settings import NumericSettings


class SuiteRequest(BaseModel):
    """Densities, order and overrides handed to a suite.

    Attributes:
        densities: Input densities, in command-line order.
        labels: One label per density (defaults to ``x0``, ``x1``, ...).
        r: Rényi order.
        suborders: Per-density orders for the mixed-order suite.
        lam: Simplex weights (serialized as ``lambda``).
        c: Constant override.
        alpha: Exponent override.
        r_grid: Orders swept by profile suites.
        transport: Transport spec for the preservation suite.
        samples: Sample pairs for the rotation suite (settings default if None).
        seed: Seed for sampled suites (settings default if None).
        tol_abs: Absolute tolerance override.
        tol_rel: Relative tolerance override.
        settings: Numeric defaults the suite falls back on.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, populate_by_name=True, extra="forbid")

    densities: list[GridDensity] = Field(default_factory=list)
    labels: list[str] = Field(default_factory=list)
    r: float = Field(default=1.0, gt=0.0)
    suborders: list[float] | None = None
    lam: list[float] | None = Field(default=None, alias="lambda")
    c: float | None = Field(default=None, gt=0.0)
    alpha: float | None = Field(default=None, gt=0.0)
    r_grid: list[float] | None = None
    transport: str = "identity"
    samples: int | None = Field(default=None, ge=100)
    seed: int | None = Field(default=None, ge=0)
    tol_abs: float | None = Field(default=None, ge=0.0)
    tol_rel: float | None = Field(default=None, ge=0.0)
    settings: NumericSettings = Field(default_factory=NumericSettings)

    @model_validator(mode="after")
    def _fill_labels(self):
        if not self.labels:
            self.labels = [f"x{i}" for i in range(len(self.densities))]
        elif len(self.labels) != len(self.densities):
            raise ValueError(f"{len(self.labels)} labels for {len(self.densities)} densities")
        return self

    @property
    def label(self) -> str:
        """Joined density labels, used as the label of multi-density reports."""
        return "+".join(self.labels)

    @property
    def tolerances(self) -> dict[str, float]:
        """Effective ``tol_abs`` and ``tol_rel`` keyword arguments."""
        return {
            "tol_abs": self.settings.tol_abs if self.tol_abs is None else self.tol_abs,
            "tol_rel": self.settings.tol_rel if self.tol_rel is None else self.tol_rel,
        }


__all__ = ["SuiteRequest"]

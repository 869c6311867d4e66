"""RunConfig - validated command-line invocation."""

import hashlib
import json
from collections.abc import Mapping
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

#: Suites that need no input densities.
DENSITY_FREE_SUITES = frozenset({"rotation"})

#: Suites run once whatever the order grid: profiles sweep it, rotation ignores it.
SINGLE_RUN_SUITES = frozenset({"concavity", "rotation"})


class ConstantsOverride(BaseModel):
    """User-supplied constants replacing the closed forms."""

    model_config = ConfigDict(extra="forbid")

    c: float | None = Field(default=None, gt=0.0)
    alpha: float | None = Field(default=None, gt=0.0)


class RunConfig(BaseModel):
    """One invocation of the command line, after parsing.

    Attributes:
        command: Subcommand name.
        suite: Suite id for ``check``.
        density_specs: ``name:params`` family specs and CSV paths, in order.
        order_grid: Orders swept (``entropy``, ``constants``, ``concavity``) or the
            single order of a check.
        lam: Simplex weights (serialized as ``lambda``).
        suborders: Per-density orders of the mixed-order suite.
        m_values: Summand counts tabulated by ``constants``.
        alpha_values: Exponents tabulated by ``constants``.
        constants_override: Constants replacing the closed forms.
        transport: Transport spec of the preservation suite.
        samples: Sample pairs of the rotation suite.
        seed: Seed of the rotation suite.
        output: Report file; stdout when unset.
        format: Report format.
        grid_len: Grid length override.
        tol: Absolute tolerance override.
        config_path: JSON configuration file.
    """

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    command: Literal["entropy", "constants", "check"]
    suite: str | None = None
    density_specs: list[str] = Field(default_factory=list)
    order_grid: list[float] = Field(default_factory=list)
    lam: list[float] | None = Field(default=None, alias="lambda")
    suborders: list[float] | None = None
    m_values: list[int] = Field(default_factory=lambda: [2])
    alpha_values: list[float] = Field(default_factory=lambda: [0.5])
    constants_override: ConstantsOverride = Field(default_factory=ConstantsOverride)
    transport: str = "identity"
    samples: int | None = Field(default=None, ge=100)
    seed: int | None = Field(default=None, ge=0)
    output: Path | None = None
    format: Literal["json", "csv"] = "json"
    grid_len: int | None = Field(default=None, ge=64)
    tol: float | None = Field(default=None, ge=0.0)
    config_path: Path | None = None

    @field_validator("order_grid")
    @classmethod
    def _positive_orders(cls, v: list[float]) -> list[float]:
        if any(not r > 0 for r in v):
            raise ValueError(f"Orders must be > 0, got {v}")
        return v

    @model_validator(mode="after")
    def _needs_densities(self):
        if self.command == "entropy" and not self.density_specs:
            raise ValueError("entropy needs at least one density")
        if self.command == "check":
            if not self.suite:
                raise ValueError("check needs a suite")
            if self.suite not in DENSITY_FREE_SUITES and not self.density_specs:
                raise ValueError(f"check {self.suite} needs at least one density")
            if self.suborders is not None and len(self.order_grid) > 1:
                raise ValueError("suborders fix a single order; pass --order")
        if self.command in ("entropy", "constants") and not self.order_grid:
            raise ValueError(f"{self.command} needs at least one order")
        return self

    def config_hash(self, effective: Mapping[str, Any] | None = None) -> str:
        """sha256 prefix of the canonical JSON of every input that shapes the reports.

        CSV densities contribute the digest of their bytes, not only their path.

        Args:
            effective: Resolved configuration (file, environment and overrides
                merged). Hashed alongside the invocation when given.
        """
        data = self.model_dump(mode="json", by_alias=True, exclude={"output", "format"})
        data["effective"] = effective
        data["csv_digests"] = {
            spec: hashlib.sha256(Path(spec).read_bytes()).hexdigest()
            for spec in self.density_specs
            if spec.lower().endswith(".csv") and Path(spec).is_file()
        }
        canonical = json.dumps(data, sort_keys=True, separators=(",", ":"), default=str)
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]


__all__ = ["RunConfig", "ConstantsOverride", "DENSITY_FREE_SUITES", "SINGLE_RUN_SUITES"]

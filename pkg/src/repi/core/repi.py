"""Core REPI facade.

This module defines the main entry point used by the command line and tests.
"""

import logging
from pathlib import Path
from typing import Any

from dotenv import load_dotenv

from repi.core.densities.densities import read_density_csv
from repi.core.densities.families import make_analytic
from repi.core.densities.grid import GridDensity
from repi.core.dto.epi_dto import EpiReport
from repi.core.dto.suite_dto import SuiteRequest
from repi.core.sherlock.sherlock import Sherlock
from repi.core.spock.settings import NumericSettings
from repi.core.spock.spock import Spock

logger = logging.getLogger(__name__)
load_dotenv()


class REPI:
    """Core facade for the repi toolkit."""

    def __init__(self, *args, **kwargs):
        """Prevent direct construction; use `REPI.create(...)` instead."""
        raise RuntimeError("Use: instance = REPI.create(...)")

    def _initialize(self, *, config_path: str | Path | None = None):
        self.spock = Spock(config_path=config_path)
        self.sherlock = Sherlock(spock=self.spock)

        # Alias
        self.config_manager = self.spock
        self.suite_runner = self.sherlock
        logger.debug("REPI instance created.")

    @classmethod
    def create(
        cls,
        *,
        config_path: str | Path | None = None,
        config: dict[str, Any] | None = None,
    ) -> "REPI":
        """Factory method to create and initialize REPI.

        Args:
            config_path: Path to JSON configuration file
            config: Optional configuration dictionary
        """
        instance = cls.__new__(cls)  # bypass __init__
        instance._initialize(config_path=config_path)
        instance.spock.load(config=config)
        return instance

    @property
    def settings(self) -> NumericSettings:
        return self.spock.settings()

    def density(self, spec: str | Path) -> GridDensity:
        """Grid density from a ``name:params`` family spec or a CSV path."""
        if isinstance(spec, Path) or str(spec).lower().endswith(".csv"):
            return read_density_csv(spec)
        s = self.settings
        return make_analytic(spec, s.grid_len, s.tail_mass, min_order=s.escort_min_order)

    def check(self, suite: str, densities: list[GridDensity], **fields: Any) -> list[EpiReport]:
        """Run a suite on densities with the configured numeric settings."""
        request = SuiteRequest(densities=densities, settings=self.settings, **fields)
        return self.sherlock.run(suite, request)

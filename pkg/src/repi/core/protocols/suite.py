"""Suite protocol definitions.

This module defines the `Suite` protocol implemented by verification
suites registered with Sherlock.
"""

from typing import Protocol, runtime_checkable

from repi.core.dto.epi_dto import EpiReport
from repi.core.dto.suite_dto import SuiteRequest


@runtime_checkable
class Suite(Protocol):
    """Structural interface (duck typing) for verification suites."""

    def __call__(self, request: SuiteRequest) -> list[EpiReport]:
        """Run the suite and return its reports in a stable order."""
        ...

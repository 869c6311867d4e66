"""Sherlock - Verification Suite Registry for repi.

Sherlock manages the registry of verification suites, providing a
centralized interface for registering, retrieving and running suites
against a request of densities and orders.

Named after Sherlock Holmes, this class examines the evidence each suite
brings back.
"""

import logging
from typing import TYPE_CHECKING, Any, Optional

from repi.core.dto.epi_dto import EpiReport
from repi.core.dto.suite_dto import SuiteRequest
from repi.core.exceptions import ParameterError
from repi.core.protocols import Suite
from repi.core.sherlock.suites import BUILTIN_SUITES

logger = logging.getLogger(__name__)

if TYPE_CHECKING:
    from repi.core.spock.spock import Spock

#: Request fields a ``suites.<id>`` config section may fill in when left unset.
OVERRIDABLE = ("c", "alpha", "tol_abs", "tol_rel", "samples", "seed", "transport", "r_grid")


class Sherlock:
    """Suite registry manager for REPI instances.

    Each REPI instance has its own Sherlock instance to maintain
    isolated suite registry state.

    Famous quote from Sherlock Holmes:
    "When you have eliminated the impossible, whatever remains, however
    improbable, must be the truth."
    """

    def __init__(self, *, spock: Optional["Spock"] = None, builtins: bool = True):
        """Initialize Sherlock, registering the built-in suites unless told otherwise."""
        self._suite_registry: dict[str, Suite] = {}
        self._spock = spock
        if builtins:
            for key, suite in BUILTIN_SUITES.items():
                self.register(key, suite)
        logger.debug("Sherlock instance created with %d suites.", len(self._suite_registry))

    def register(self, key: str, suite: Suite) -> None:
        """Register a suite with the given key.

        Raises:
            ValueError: If key is invalid or already taken by another suite
            TypeError: If suite doesn't implement the Suite protocol
        """
        if not isinstance(key, str) or not key.strip():
            raise ValueError(f"Invalid suite key: {key!r}")

        if not isinstance(suite, Suite):
            raise TypeError(f"Suite '{key}' does not implement the Suite protocol")

        if key in self._suite_registry:
            if self._suite_registry[key] is suite:
                logger.warning("Suite '%s' already registered with the same callable. Skipping.", key)
                return
            raise ValueError(f"Override not allowed for already registered suite: {key!r}")

        self._suite_registry[key] = suite
        logger.debug("Suite '%s' registered successfully.", key)

    def get(self, key: str) -> Suite | None:
        """Get a suite by its key, None if unknown."""
        suite = self._suite_registry.get(key)
        if suite is None:
            logger.debug("Suite '%s' not found in registry.", key)
        return suite

    def has(self, key: str) -> bool:
        return key in self._suite_registry

    def list_keys(self) -> list[str]:
        return list(self._suite_registry.keys())

    def unregister(self, key: str) -> bool:
        """Unregister a suite by key.

        Returns True if the suite was removed, False if it was not found.
        """
        if key in self._suite_registry:
            del self._suite_registry[key]
            logger.debug("Suite '%s' unregistered.", key)
            return True
        return False

    def run(self, key: str, request: SuiteRequest) -> list[EpiReport]:
        """Run a registered suite, filling unset request fields from its config section.

        Raises:
            ParameterError: If no suite is registered under ``key``.
        """
        suite = self.get(key)
        if suite is None:
            available = ", ".join(sorted(self._suite_registry)) or "<none>"
            raise ParameterError(f"Unknown suite {key!r}. Available suites: {available}.")

        request = self._apply_overrides(key, request)
        logger.debug("Running suite '%s' on %d densities at r=%g", key, len(request.densities), request.r)
        reports = suite(request)
        failed = sum(1 for r in reports if r.failed)
        skipped = sum(1 for r in reports if not r.is_ok())
        logger.info(
            "Suite '%s': %d reports, %d failed, %d skipped", key, len(reports), failed, skipped
        )
        return reports

    def _apply_overrides(self, key: str, request: SuiteRequest) -> SuiteRequest:
        if self._spock is None:
            return request
        section: dict[str, Any] = self._spock.get_suite_config(key)
        update = {
            name: section[name]
            for name in OVERRIDABLE
            if name in section and getattr(request, name) in (None, "identity")
        }
        if not update:
            return request
        logger.debug("Suite '%s' overrides from config: %s", key, update)
        fields = {name: getattr(request, name) for name in SuiteRequest.model_fields}
        return SuiteRequest.model_validate({**fields, **update})

    @property
    def registry(self) -> dict[str, Suite]:
        """A shallow copy of the suite registry."""
        return dict(self._suite_registry)


SuiteRunner = Sherlock

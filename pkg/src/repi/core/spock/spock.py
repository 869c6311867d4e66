"""Spock - Configuration Manager for repi.

Spock manages configuration from JSON files and environment variables,
providing a unified interface for accessing numeric settings.

Configuration hierarchy:
- repi: Numeric defaults (grid_len, tail_mass, tolerances, ...)
- suites: Suite-specific overrides
  - <suite_id>: Overrides for one verification suite (tol_abs, alpha, ...)

Environment variables follow the naming convention:
REPI__<section>__<key> for nested values
Example: REPI__REPI__GRID_LEN=16384
         REPI__SUITES__REPIG__ALPHA=0.7
The shorthand REPI_GRID_LEN overrides repi.grid_len as well.
"""

import json
import logging
import os
from copy import deepcopy
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from repi.core.exceptions import ParameterError
from repi.core.spock.settings import NumericSettings

logger = logging.getLogger(__name__)

SECTIONS = ("repi", "suites")


class Spock:
    """Configuration manager for repi instances.

    Each REPI instance has its own Spock instance to maintain
    isolated configuration state.

    Famous quote from Spock in Star Trek:
    "Logic is the beginning of wisdom, not the end."
    """

    ENV_PREFIX = "REPI"
    ENV_SEPARATOR = "__"
    GRID_LEN_ENV = "REPI_GRID_LEN"

    def __init__(self, config_path: str | Path | None = None):
        """Initialize Spock configuration manager.

        Args:
            config_path: Path to JSON configuration file. If None, only
                        environment variables will be used.
        """
        self._config_path = str(config_path) if config_path is not None else None
        self._config = self.default_config()
        self._loaded = False
        logger.debug("Spock instance created with config_path=%s", config_path)

    @staticmethod
    def default_config() -> dict[str, Any]:
        """Return a new default config dict each time."""
        return {"repi": {}, "suites": {}}

    def load(self, config: dict[str, Any] | None = None) -> None:
        """Load configuration from JSON file, environment variables, or provided config.

        Args:
            config: Optional config dict to use as base.

        Priority (highest to lowest):
        1. Environment variables
        2. JSON file
        3. Provided config (if any)
        4. Default values
        """
        if self._loaded:
            logger.debug("Configuration already loaded, skipping reload")
            return

        self._config = self.default_config()

        if config is not None:
            self._merge_sections(config, "dict")

        if self._config_path:
            self._load_from_json()

        self._load_from_env()

        self._loaded = True
        logger.info("Configuration loaded successfully")
        logger.debug(
            "Final config structure: repi keys=%s, suites=%s",
            list(self._config["repi"].keys()),
            list(self._config["suites"].keys()),
        )

    def _merge_sections(self, source: Any, kind: str) -> None:
        """Validate the known sections of ``source`` and merge them key by key."""
        if not isinstance(source, dict):
            raise ValueError(f"Configuration must be a {kind} object")
        for section in SECTIONS:
            if section not in source:
                continue
            if not isinstance(source[section], dict):
                raise ValueError(f"'{section}' section must be an object")
            self._config[section].update(deepcopy(source[section]))

    def _load_from_json(self) -> None:
        """Load configuration from JSON file."""
        try:
            config_file = Path(self._config_path)
            if not config_file.exists():
                logger.warning("Config file not found: %s", self._config_path)
                return

            with open(config_file, encoding="utf-8") as f:
                json_config = json.load(f)

            self._merge_sections(json_config, "JSON")
            logger.info("Loaded configuration from JSON: %s", self._config_path)

        except json.JSONDecodeError as e:
            logger.error("Invalid JSON in config file %s: %s", self._config_path, e)
            raise ValueError(f"Invalid JSON configuration file: {e}") from e
        except Exception as e:
            logger.error("Error loading config file %s: %s", self._config_path, e)
            raise

    def _load_from_env(self) -> None:
        """Load configuration from environment variables.

        Environment variables follow the pattern:
        REPI__<SECTION>__<KEY>__<SUBKEY>...

        Examples:
        - REPI__REPI__TAIL_MASS=1e-12
        - REPI__SUITES__DCT__TOL_ABS=5e-5
        """
        prefix = f"{self.ENV_PREFIX}{self.ENV_SEPARATOR}"

        for env_key, env_value in os.environ.items():
            if not env_key.startswith(prefix):
                continue

            key_path = env_key[len(prefix) :].split(self.ENV_SEPARATOR)

            if len(key_path) < 2:
                logger.warning("Invalid env var format (too short): %s", env_key)
                continue

            section = key_path[0].lower()
            if section not in SECTIONS:
                logger.warning("Invalid section in env var %s: %s", env_key, section)
                continue

            try:
                parsed_value = self._parse_env_value(env_value)
                self._set_nested_value(section, key_path[1:], parsed_value)
                logger.debug("Set from env: %s = %s", env_key, parsed_value)
            except Exception as e:
                logger.error("Error processing env var %s: %s", env_key, e)

        if self.GRID_LEN_ENV in os.environ:
            value = self._parse_env_value(os.environ[self.GRID_LEN_ENV])
            self._config["repi"]["grid_len"] = value
            logger.debug("Set from env: %s = %s", self.GRID_LEN_ENV, value)

    def _parse_env_value(self, value: str) -> Any:
        """Parse environment variable value with type inference.

        Attempts to parse as JSON first, falls back to string.
        """
        try:
            return json.loads(value)
        except (json.JSONDecodeError, ValueError):
            return value

    def _set_nested_value(self, section: str, path: list[str], value: Any) -> None:
        """Set a value in nested configuration structure.

        Args:
            section: Top-level section ('repi' or 'suites')
            path: List of keys representing the path to the value
            value: Value to set
        """
        if section == "suites" and len(path) < 2:
            logger.warning("Suite env var too short: %s", path)
            return

        target = self._config[section]
        for key in path[:-1]:
            target = target.setdefault(key.lower(), {})
        target[path[-1].lower()] = value

    def get_repi_config(self, key: str | None = None, default: Any = None) -> Any:
        """Get repi numeric configuration.

        Args:
            key: Specific configuration key. If None, returns the entire section.
            default: Default value if key not found.
        """
        if not self._loaded:
            self.load()

        if key is None:
            return deepcopy(self._config["repi"])

        return self._config["repi"].get(key, default)

    def get_suite_config(self, suite_id: str, key: str | None = None, default: Any = None) -> Any:
        """Get suite-specific configuration.

        Args:
            suite_id: Suite identifier
            key: Specific configuration key. If None, returns entire suite config.
            default: Default value if key not found.
        """
        if not self._loaded:
            self.load()

        suite_config = self._config["suites"].get(suite_id, {})

        if key is None:
            return deepcopy(suite_config)

        return suite_config.get(key, default)

    def set_repi_config(self, key: str, value: Any) -> None:
        """Set repi configuration (runtime only, not persisted)."""
        if not self._loaded:
            self.load()

        self._config["repi"][key] = value
        logger.debug("Set repi config: %s = %s", key, value)

    def set_suite_config(self, suite_id: str, key: str, value: Any) -> None:
        """Set suite configuration (runtime only, not persisted)."""
        if not self._loaded:
            self.load()

        self._config["suites"].setdefault(suite_id, {})[key] = value
        logger.debug("Set suite config: %s.%s = %s", suite_id, key, value)

    def settings(self) -> NumericSettings:
        """Validated numeric settings from the ``repi`` section.

        Raises:
            ParameterError: If a value is missing its type or range.
        """
        try:
            return NumericSettings.model_validate(self.get_repi_config())
        except ValidationError as e:
            raise ParameterError(
                f"Invalid repi configuration: {e.error_count()} error(s)",
                context={"errors": [err["msg"] for err in e.errors()]},
            ) from e

    def get_all_config(self) -> dict[str, Any]:
        """Get complete configuration snapshot."""
        if not self._loaded:
            self.load()

        return deepcopy(self._config)

    def reload(self) -> None:
        """Reload configuration from sources."""
        self._loaded = False
        self.load()
        logger.info("Configuration reloaded")

    @property
    def config_path(self) -> str | None:
        """Get the configuration file path."""
        return self._config_path

    @property
    def is_loaded(self) -> bool:
        """Check if configuration has been loaded."""
        return self._loaded


ConfigManager = Spock

"""Spock configuration package."""

from repi.core.spock.settings import NumericSettings
from repi.core.spock.spock import ConfigManager, Spock

__all__ = ["Spock", "ConfigManager", "NumericSettings"]

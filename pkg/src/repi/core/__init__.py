"""Core package for repi."""

from .repi import REPI

__all__ = ["REPI"]

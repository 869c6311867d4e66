"""Protocol definitions for repi core components."""

from .suite import Suite

__all__ = ["Suite"]

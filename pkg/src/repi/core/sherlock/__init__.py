"""Sherlock module - Verification Suite Registry."""

from repi.core.sherlock.sherlock import Sherlock, SuiteRunner

__all__ = ["Sherlock", "SuiteRunner"]

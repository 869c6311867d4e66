"""Test package for repi.

This package contains unit and integration tests.
"""

"""Tests for repi core."""

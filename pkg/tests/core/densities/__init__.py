"""Tests for grid densities."""

"""Tests for monotone transport."""

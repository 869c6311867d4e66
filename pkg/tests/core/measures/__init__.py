"""Tests for information measures."""

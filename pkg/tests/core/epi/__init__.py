"""Tests for entropy power inequalities."""

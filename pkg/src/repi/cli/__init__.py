"""Command-line interface for repi."""

from repi.cli.cli import build_parser, main

__all__ = ["main", "build_parser"]

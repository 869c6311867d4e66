"""Pytest fixtures.

This file adjusts sys.path for src-layout imports and builds the density
corpus once per session.
"""

# ruff: noqa: E402

import os
import sys

# Ensure `src` is on sys.path so imports like `from repi.core...` resolve during tests
ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
SRC = os.path.join(ROOT, "src")
if os.path.isdir(SRC):
    sys.path.insert(0, SRC)
sys.path.insert(0, ROOT)

import pytest
from rich.traceback import install

from repi.core.densities.families import make_analytic
from repi.core.repi import REPI
from tests.utils import CORPUS_SPECS, MIN_ORDER

# Enable readable tracebacks in development / test environments.
# Can be disabled with PYTEST_RICH=0
if os.getenv("PYTEST_RICH", "1") == "1":
    install(
        show_locals=False,  # grids are large; locals would flood the output
        width=None,  # use terminal width
        word_wrap=True,  # wrap long lines
        extra_lines=1,  # some context around lines
        suppress=["/usr/lib/python3", "site-packages"],  # hide "noisy" third-party frames
    )


@pytest.fixture(scope="session")
def corpus():
    """The analytic corpus keyed by spec, supports widened for escorts of order 1/2."""
    return {spec: make_analytic(spec, min_order=MIN_ORDER) for spec in CORPUS_SPECS}


@pytest.fixture(scope="session")
def gaussian(corpus):
    return corpus["gaussian:1"]


@pytest.fixture(scope="session")
def uniform(corpus):
    return corpus["uniform:0,1"]


@pytest.fixture(scope="session")
def exponential(corpus):
    return corpus["exponential:1"]


@pytest.fixture(scope="session")
def laplace(corpus):
    return corpus["laplace:1"]


@pytest.fixture(scope="session")
def student_t(corpus):
    return corpus["student_t:1"]


@pytest.fixture(scope="session")
def repi():
    """Provide a session-scoped REPI instance for tests."""
    return REPI.create()

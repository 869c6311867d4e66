"""Tests for Rényi orders."""

import math

import pytest

from repi.core.exceptions import OrderError, UndefinedConjugateError
from repi.core.orders import RenyiOrder, as_order


class TestRenyiOrder:
    def test_shannon_flag(self):
        assert RenyiOrder.of(1).is_limit_one
        assert not RenyiOrder.of(2.0).is_limit_one

    def test_conjugate(self):
        assert RenyiOrder.of(2.0).conjugate == 2.0
        assert RenyiOrder.of(0.5).conjugate == -1.0
        with pytest.raises(UndefinedConjugateError):
            RenyiOrder.of(1.0).conjugate  # noqa: B018

    @pytest.mark.parametrize("r", [0.0, -1.0, math.inf, math.nan])
    def test_invalid(self, r):
        with pytest.raises(OrderError):
            RenyiOrder.of(r)

    def test_inconsistent_flag(self):
        with pytest.raises(OrderError):
            RenyiOrder(2.0, is_limit_one=True)

    def test_as_order(self):
        order = RenyiOrder.of(3.0)
        assert as_order(order) is order
        assert float(as_order(3)) == 3.0

"""Tests for joint densities and the conditional Rényi entropy."""

import math

import numpy as np
import pytest

from repi.core.densities.families import make_analytic
from repi.core.exceptions import DegenerateDensityError, GridError, ParameterError
from repi.core.measures.joint import Joint2D, gaussian_joint, marginal_x, marginal_z, product_joint
from repi.core.measures.measures import conditional_renyi, renyi_entropy


@pytest.fixture(scope="module")
def independent():
    f = make_analytic("gaussian:1", grid_len=256, min_order=0.5)
    g = make_analytic("laplace:1", grid_len=128)
    return product_joint(f, g)


@pytest.fixture(scope="module")
def correlated():
    return gaussian_joint(0.8)


class TestJoint2D:
    """Test construction and marginals."""

    def test_product_marginals(self, independent):
        assert independent.mass == pytest.approx(1.0, abs=1e-12)
        fx = marginal_x(independent)
        assert fx.mass == pytest.approx(1.0, abs=1e-9)
        pz = marginal_z(independent)
        assert pz.shape == (128,)

    def test_gaussian_joint_marginal(self, correlated):
        fx = marginal_x(correlated)
        assert fx.expect(fx.x**2) == pytest.approx(1.0, abs=1e-6)

    def test_unnormalized(self):
        with pytest.raises(DegenerateDensityError, match="mass"):
            Joint2D(0.0, 1.0, 0.0, 1.0, np.full((64, 8), 2.0))

    def test_normalized_constructor(self):
        j = Joint2D.normalized(0.0, 1.0, 0.0, 2.0, np.full((64, 8), 2.0))
        np.testing.assert_allclose(j.values, 0.5)

    @pytest.mark.parametrize("shape", [(10, 10), (64, 2), (64,)])
    def test_grid_too_small(self, shape):
        with pytest.raises(GridError):
            Joint2D(0.0, 1.0, 0.0, 1.0, np.ones(shape))

    def test_negative_values(self):
        values = np.ones((64, 8))
        values[0, 0] = -1.0
        with pytest.raises(DegenerateDensityError):
            Joint2D(0.0, 1.0, 0.0, 1.0, values)

    @pytest.mark.parametrize("rho", [1.0, -1.0, 1.5])
    def test_invalid_correlation(self, rho):
        with pytest.raises(ParameterError):
            gaussian_joint(rho)


class TestConditionalRenyi:
    """Test Arimoto's conditional entropy."""

    @pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
    def test_independence_equality(self, independent, r):
        expected = renyi_entropy(marginal_x(independent), r)
        assert conditional_renyi(independent, r) == pytest.approx(expected, abs=1e-9)

    def test_independent_gaussian_value(self, independent):
        assert conditional_renyi(independent, 2.0) == pytest.approx(0.5 * math.log(4 * math.pi), abs=1e-6)

    def test_correlated_gaussian(self, correlated):
        h = conditional_renyi(correlated, 2.0)
        assert h == pytest.approx(0.5 * math.log(4 * math.pi * (1 - 0.8**2)), abs=1e-3)
        assert h < renyi_entropy(marginal_x(correlated), 2.0)

    @pytest.mark.parametrize("r", [0.5, 1.0, 2.0, 4.0])
    def test_conditioning_reduces_entropy(self, correlated, r):
        assert conditional_renyi(correlated, r) <= renyi_entropy(marginal_x(correlated), r) + 1e-9

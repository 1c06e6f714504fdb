"""Gauss-Hermite rule construction, integration helpers, and convergence."""

import math

import numpy as np
import pytest

from cvent.quadrature import (
    ConvergenceError,
    QuadratureError,
    converge,
    gauss_hermite,
    integrate_1d,
    integrate_2d,
    integrate_rotated,
)


class TestRuleConstruction:
    def test_order_two_is_hand_computable(self):
        rule = gauss_hermite(2)
        assert np.allclose(np.abs(rule.nodes), 1.0 / math.sqrt(2.0), atol=1e-14)
        assert np.allclose(rule.gauss_weights, math.sqrt(math.pi) / 2.0, atol=1e-14)

    @pytest.mark.parametrize("order", [2, 3, 16, 64, 128])
    def test_matches_reference_rule(self, order):
        rule = gauss_hermite(order)
        nodes, weights = np.polynomial.hermite.hermgauss(order)
        assert np.allclose(rule.nodes, nodes, atol=1e-12)
        assert np.allclose(rule.gauss_weights, weights, atol=1e-12)

    def test_symmetric_nodes(self):
        rule = gauss_hermite(31)
        assert np.array_equal(rule.nodes, -rule.nodes[::-1])

    def test_high_order_weights_finite(self):
        rule = gauss_hermite(1024)
        assert np.all(np.isfinite(rule.weights))
        assert np.all(rule.weights > 0.0)

    @pytest.mark.parametrize("order", [0, 1, 1025, 2.0, True])
    def test_rejects_bad_order(self, order):
        with pytest.raises(ValueError):
            gauss_hermite(order)

    def test_cached_rule_is_immutable(self):
        rule = gauss_hermite(16)
        with pytest.raises(ValueError):
            rule.nodes[0] = 0.0


class TestScaledRules:
    def test_unit_gaussian_mass(self):
        rule = gauss_hermite(32).scaled(2.5, center=-1.0)
        total = integrate_1d(
            lambda x: np.exp(-((x + 1.0) ** 2) / (2.0 * 2.5**2))
            / math.sqrt(2.0 * math.pi * 2.5**2),
            rule,
        )
        assert total == pytest.approx(1.0, abs=1e-14)

    def test_moments_of_scaled_gaussian(self):
        rule = gauss_hermite(32).scaled(0.3, center=2.0)
        density = lambda x: np.exp(-((x - 2.0) ** 2) / (2.0 * 0.3**2)) / math.sqrt(
            2.0 * math.pi * 0.3**2
        )
        mean = integrate_1d(lambda x: x * density(x), rule)
        var = integrate_1d(lambda x: (x - 2.0) ** 2 * density(x), rule)
        assert mean == pytest.approx(2.0, abs=1e-13)
        assert var == pytest.approx(0.09, abs=1e-13)

    def test_rejects_bad_scale(self):
        with pytest.raises(ValueError):
            gauss_hermite(8).scaled(0.0)


class TestIntegration:
    def test_gaussian_weighted_monomials(self):
        rule = gauss_hermite(16)
        for k in (0, 2, 4, 6):
            value = integrate_1d(lambda t, k=k: np.exp(-t * t) * t**k, rule)
            assert value == pytest.approx(math.gamma((k + 1) / 2.0), abs=1e-12)

    def test_exact_for_low_degree(self):
        # an order-n rule integrates exp(-t^2) * p(t) exactly for deg p <= 2n-1
        rule = gauss_hermite(5)
        value = integrate_1d(lambda t: np.exp(-t * t) * (t**8 + t**3 - 2.0), rule)
        expected = math.gamma(4.5) - 2.0 * math.gamma(0.5)
        assert value == pytest.approx(expected, rel=1e-13)

    def test_2d_product(self):
        ra = gauss_hermite(24).scaled(1.0)
        rb = gauss_hermite(24).scaled(2.0)
        value = integrate_2d(
            lambda a, b: a**2
            * b**2
            * np.exp(-(a**2) / 2.0 - b**2 / 8.0)
            / (2.0 * math.pi * 2.0),
            ra,
            rb,
        )
        assert value == pytest.approx(4.0, abs=1e-12)

    def test_rotated_equals_cartesian_mass(self):
        value = integrate_rotated(
            lambda x1, x2: np.exp(-(x1 - x2) ** 2 / 4.0 - (x1 + x2) ** 2 / 16.0),
            1.0,
            2.0,
            order=32,
        )
        # separable in u, v: sqrt(2 pi) * sqrt(8 pi) / ... direct product of 1-D masses
        expected = math.sqrt(2.0 * math.pi) * math.sqrt(8.0 * math.pi)
        assert value == pytest.approx(expected, rel=1e-13)

    def test_non_finite_integrand_is_reported(self):
        rule = gauss_hermite(8)
        with pytest.raises(QuadratureError, match="non-finite"):
            integrate_1d(lambda t: np.where(t > 0.0, np.inf, 1.0), rule)


class TestConverge:
    def test_converges_and_reports_order(self):
        calls = []

        def fn(order):
            calls.append(order)
            return 1.0 + 2.0**-order

        result = converge(fn, start_order=16, tol=1e-9)
        assert result.value == pytest.approx(1.0, abs=1e-9)
        assert calls[0] == 16
        assert result.order_used == calls[-1]
        assert result.delta < 1e-9

    def test_vector_valued(self):
        result = converge(lambda order: np.array([1.0, 2.0]), start_order=16)
        assert np.array_equal(result.value, np.array([1.0, 2.0]))

    def test_raises_with_last_values(self):
        with pytest.raises(ConvergenceError) as excinfo:
            converge(lambda order: float(order), start_order=16, max_order=64)
        assert excinfo.value.last_value == 64.0
        assert excinfo.value.previous_value == 32.0

    def test_rejects_bad_start_order(self):
        with pytest.raises(ValueError):
            converge(lambda order: 0.0, start_order=8)
        with pytest.raises(ValueError):
            converge(lambda order: 0.0, start_order=64, max_order=64)

    def test_relative_tolerance_above_one(self):
        # magnitude ~1e9: an absolute 1e-9 would never trigger, relative does
        result = converge(lambda order: 1e9 * (1.0 + 2.0**-order), start_order=16)
        assert result.value == pytest.approx(1e9, rel=1e-6)

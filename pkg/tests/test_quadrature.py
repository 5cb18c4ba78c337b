import math

import numpy as np
import pytest

from convbound.function import AnalyticFunction, RationalOracle, oracle_mean_value
from convbound.quadrature import (
    Contour,
    EvaluationFailed,
    magnitude_average,
    mean_value_integral,
)

# (1/2pi) * int_0^2pi |1 / (1 + 2 e^{it})| dt, by scipy.integrate.quad and by a
# 2**20-point direct sum (both give the same digits)
MAGNITUDE_REFERENCE = 0.5365910035746823


def expr(text):
    return AnalyticFunction.from_expression(text)


class TestContour:
    @pytest.mark.parametrize("r", [0, -1, math.inf, math.nan])
    def test_invalid_radius(self, r):
        with pytest.raises(ValueError):
            Contour(0, r)

    def test_nodes_start_at_angle_zero(self):
        nodes = Contour(1 + 1j, 2).nodes(8)
        assert nodes[0] == 3 + 1j
        assert np.allclose(np.abs(nodes - (1 + 1j)), 2)


class TestMeanValueIntegral:
    def test_constant(self):
        res = mean_value_integral(expr("1"), Contour(0, 1), 0, 16)
        assert res.value == 1
        assert res.delta == pytest.approx(0, abs=1e-15)
        assert res.points_used == 16

    def test_pole_pair_matches_residue_sum(self):
        # 1/(z^2+1) on |z| = 2: g(0) = 1 plus -1/2 from each of +-i
        res = mean_value_integral(expr("1/(z^2+1)"), Contour(0, 2), 0, 4096)
        assert res.value == pytest.approx(0, abs=1e-12)

    def test_exactly_cancelling_pair(self):
        res = mean_value_integral(expr("z/(z^2+1)"), Contour(0, 2), 0, 4096)
        assert res.value == pytest.approx(0, abs=1e-12)

    def test_enclosed_pole_matches_residue_sum(self):
        res = mean_value_integral(expr("1/(1+z)"), Contour(0, 2), 0, 4096)
        expected = oracle_mean_value(RationalOracle.simple([-1], [1]), 0, 2, 0)
        assert abs(res.value - expected) <= max(10 * res.delta, 1e-14)

    def test_spectral_accuracy(self):
        res = mean_value_integral(expr("exp(z)"), Contour(0, 1), 0, 64)
        assert abs(res.value - 1) < 1e-12

    def test_geometric_convergence(self):
        # pole at distance 1 from a circle of radius 0.5 about 0
        f = expr("1/(1+z)")
        errors = [abs(mean_value_integral(f, Contour(0, 0.5), 0.7, n).value - 1) for n in (4, 8, 16)]
        assert errors[0] > errors[1] > errors[2]
        assert errors[1] / errors[0] < 0.2 and errors[2] / errors[1] < 0.2

    @pytest.mark.parametrize("n", [0, 2, 3, 7])
    def test_point_count_validation(self, n):
        with pytest.raises(ValueError):
            mean_value_integral(expr("z"), Contour(0, 1), 0, n)

    def test_node_failure_reports_index(self):
        f = AnalyticFunction(lambda z: np.where(z.real < -0.9, np.inf, 1.0))
        with pytest.raises(EvaluationFailed) as info:
            mean_value_integral(f, Contour(0, 1), 0, 4)
        assert info.value.index == 2

    def test_exact_pole_at_first_node(self):
        with pytest.raises(EvaluationFailed) as info:
            mean_value_integral(expr("1/(z-1)"), Contour(0, 1), 0, 8)
        assert info.value.index == 0

    def test_bit_reproducible(self):
        f = expr("exp(1/(1+z))")
        a = mean_value_integral(f, Contour(0.1j, 0.7), 0.3 - 0.2j, 1000)
        b = mean_value_integral(f, Contour(0.1j, 0.7), 0.3 - 0.2j, 1000)
        assert a == b


def _random_simple_oracle(rng):
    n = int(rng.integers(1, 5))
    poles = 2 * (rng.random(n) - 0.5) * 3 + 2j * (rng.random(n) - 0.5) * 3
    residues = rng.normal(size=n) + 1j * rng.normal(size=n)
    return RationalOracle.simple(poles, residues)


def test_delta_bounds_error_over_rational_corpus():
    rng = np.random.default_rng(2024)
    within = total = 0
    for _ in range(200):
        oracle = _random_simple_oracle(rng)
        r = float(rng.uniform(0.2, 4))
        gaps = [abs(abs(p.location) - r) / r for p in oracle.poles]
        if min(gaps) < 1e-3 or oracle.nearest_singularity(0) < 1e-3:
            continue
        k = complex(*rng.uniform(-1, 1, 2)) / r
        n = int(rng.choice([64, 256, 1000]))
        res = mean_value_integral(oracle.to_function(), Contour(0, r), k, n)
        exact = oracle_mean_value(oracle, 0, r, k)
        total += 1
        within += abs(res.value - exact) <= 10 * res.delta + 1e-13 * abs(exact)
    assert total > 150
    assert within / total >= 0.99


def test_doubling_points_does_not_grow_delta():
    rng = np.random.default_rng(7)
    ok = total = 0
    for _ in range(100):
        oracle = _random_simple_oracle(rng)
        r = float(rng.uniform(0.2, 4))
        if min(abs(abs(p.location) - r) for p in oracle.poles) < 0.05 * r:
            continue
        f = oracle.to_function()
        k = complex(*rng.uniform(-1, 1, 2)) / r
        for n in (32, 64, 128, 256):
            d1 = mean_value_integral(f, Contour(0, r), k, n).delta
            d2 = mean_value_integral(f, Contour(0, r), k, 2 * n).delta
            total += 1
            ok += d2 <= 2 * d1 + 1e-14
    assert ok / total >= 0.99


class TestMagnitudeAverage:
    def test_constant(self):
        assert magnitude_average(expr("3 - 4*i"), Contour(2, 0.1), 8) == pytest.approx(5)

    def test_identity_on_unit_circle(self):
        assert magnitude_average(expr("z"), Contour(0, 1), 16) == pytest.approx(1)

    def test_matches_dense_reference(self):
        value = magnitude_average(expr("1/(1+z)"), Contour(0, 2), 1000)
        assert value > 0
        assert abs(value - MAGNITUDE_REFERENCE) < 1e-6

import cmath

import numpy as np
import pytest

from convbound.function import AnalyticFunction, NonFinite, Pole, RationalOracle, oracle_mean_value


def reciprocal():
    return RationalOracle.simple([-1], [1])


def test_opposite_residues_do_not_cancel_in_mean_value():
    # 1/(z^2+1) = (i/2)/(z+i) - (i/2)/(z-i). The residues of g(z)/z at +-i are
    # both -1/2, so the mean value is g(0) - 1 = 0 rather than g(0).
    g = RationalOracle.simple([-1j, 1j], [0.5j, -0.5j])
    assert g(0) == pytest.approx(1)
    assert oracle_mean_value(g, 0, 2, 0) == pytest.approx(0, abs=1e-15)


def test_exactly_cancelling_pair_mean_value_is_centre_value():
    # z/(z^2+1) = (1/2)/(z-i) + (1/2)/(z+i): residues over location cancel
    g = RationalOracle.simple([1j, -1j], [0.5, 0.5])
    assert oracle_mean_value(g, 0, 2, 0) == pytest.approx(g(0), abs=1e-15)
    assert abs(oracle_mean_value(g, 0, 2, 0.4) - g(0)) > 0.1


def test_enclosed_simple_pole():
    # f(0) = 1 plus residue term 1 / (-1 - 0) = -1
    assert oracle_mean_value(reciprocal(), 0, 2, 0) == pytest.approx(0, abs=1e-15)


def test_no_enclosed_pole_gives_centre_value_exactly():
    assert oracle_mean_value(reciprocal(), 0, 0.5, 0) == 1


def test_probe_weighting():
    k = 0.3 + 0.2j
    expected = 1 + cmath.exp(1j * k * (-1)) / (-1)
    assert oracle_mean_value(reciprocal(), 0, 2, k) == pytest.approx(expected, rel=1e-15)


def test_rejects_pole_on_contour():
    with pytest.raises(ValueError, match="contour"):
        oracle_mean_value(reciprocal(), 0, 1 + 1e-12, 0)


def test_rejects_enclosed_higher_order_pole():
    f = RationalOracle((Pole(-1, 1, order=2),))
    with pytest.raises(ValueError, match="simple"):
        oracle_mean_value(f, 0, 2, 0)
    # outside the contour it is just part of f(z0)
    assert oracle_mean_value(f, 0, 0.5, 0) == 1


def test_rejects_duplicate_poles():
    with pytest.raises(ValueError):
        RationalOracle.simple([1, 1], [1, 2])


def test_simple_pole_divergence():
    f = reciprocal()
    for h in (1e-3, 1e-6, 1e-9):
        z = -1 + h
        assert f(z) * (z + 1) == pytest.approx(1, rel=1e-12)


def test_entire_part_ascending_coefficients():
    f = RationalOracle((), (1, 2, 3))
    assert f(2) == 1 + 2 * 2 + 3 * 4


def test_nearest_singularity():
    f = RationalOracle.simple([3, -1 + 1j], [1, 1])
    assert f.nearest_singularity(0) == pytest.approx(2**0.5)
    assert RationalOracle(()).nearest_singularity(0) == float("inf")


class TestAnalyticFunction:
    def test_scalar_callable(self):
        f = AnalyticFunction(lambda z: 1 / (1 + z), vectorized=False)
        assert f(1) == 0.5
        assert f(-1) is NonFinite

    def test_vectorized_callable(self):
        f = AnalyticFunction(lambda z: 1 / (1 + z))
        values, bad = f.sample(np.array([0, -1]))
        assert values[0] == 1 and bad.tolist() == [False, True]

    def test_constant_broadcast(self):
        f = AnalyticFunction(lambda z: 2.0)
        values, bad = f.sample(np.zeros(5))
        assert values.tolist() == [2] * 5 and not bad.any()

    def test_scaled(self):
        f = AnalyticFunction.from_expression("z + 1").scaled(2j)
        assert f(1) == 4j

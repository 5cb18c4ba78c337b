import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from convbound.errormodel import (
    CancellingPairFamily,
    EntireFamily,
    RateReport,
    measure_false_positive_rate,
    measure_rates,
    p_detect,
    p_false_negative,
)
from convbound.function import oracle_mean_value
from convbound.poletest import PoleTestConfig

eps = st.floats(1e-6, 0.999)


class TestClosedForms:
    def test_two_pole_special_case(self):
        assert p_detect(0.01, 2) == pytest.approx(0.998408450569081, rel=1e-15)

    def test_general_case(self):
        assert p_detect(0.01, 5) == pytest.approx(0.99493584614027, rel=1e-14)

    def test_vanishing_tolerance(self):
        assert p_detect(1e-300, 7) == 1.0

    def test_domain(self):
        with pytest.raises(ValueError):
            p_detect(0.01, 1)

    def test_clamped(self):
        assert p_detect(0.999, 3) == 0.0

    def test_false_negative(self):
        assert p_false_negative(0.01, 3) == pytest.approx(4.031441804149938e-09, rel=1e-14)
        assert p_false_negative(0.2, 1) == pytest.approx(0.2 / (2 * math.pi))

    @given(eps, eps, st.integers(3, 50))
    def test_detect_decreasing_in_epsilon(self, a, b, n):
        lo, hi = sorted((a, b))
        assert p_detect(hi, n) <= p_detect(lo, n)

    @given(eps, st.integers(3, 50))
    def test_detect_increasing_in_poles(self, e, n):
        assert p_detect(e, n + 1) >= p_detect(e, n)

    @given(eps, st.integers(1, 20))
    def test_more_samples_fewer_misses(self, e, m):
        assert p_false_negative(e, m + 1) < p_false_negative(e, m)


class TestRateReport:
    def test_empty(self):
        report = RateReport.from_counts(0.1, 0, 0)
        assert report.empty
        assert math.isnan(report.measured)

    def test_standard_error(self):
        report = RateReport.from_counts(0.1, 25, 100)
        assert report.measured == 0.25
        assert report.standard_error == pytest.approx(math.sqrt(0.25 * 0.75 / 100))


class TestFamilies:
    @pytest.mark.parametrize("exact", [False, True])
    def test_poles_enclosed_with_margin(self, exact):
        family = CancellingPairFamily(1 + 1j, 2.0, exact=exact)
        rng = np.random.default_rng(0)
        for _ in range(50):
            oracle = family.sample(rng)
            assert all(abs(p.location - family.center) <= 0.9 * family.radius for p in oracle.poles)

    def test_literal_family_has_opposite_residues(self):
        oracle = CancellingPairFamily().sample(np.random.default_rng(1))
        a, b = oracle.poles
        assert a.coefficient == -b.coefficient
        assert abs(a.coefficient) == pytest.approx(1)

    def test_exact_family_cancels_without_probe(self):
        family = CancellingPairFamily(0.5j, 1.5, exact=True)
        rng = np.random.default_rng(2)
        for _ in range(20):
            oracle = family.sample(rng)
            f0 = oracle(family.center)
            assert abs(oracle_mean_value(oracle, family.center, family.radius, 0) - f0) < 1e-12 * (1 + abs(f0))

    def test_entire_family_is_finite(self):
        family = EntireFamily()
        rng = np.random.default_rng(3)
        z = family.contour.nodes(64)
        for _ in range(20):
            values, bad = family.sample(rng).sample(z)
            assert not bad.any()


class TestMonteCarlo:
    def test_zero_trials(self):
        assert measure_rates(CancellingPairFamily(), PoleTestConfig(), 0).empty

    def test_deterministic(self):
        config = PoleTestConfig(samples=1, epsilon=0.05)
        family = CancellingPairFamily(exact=True)
        assert measure_rates(family, config, 200, seed=4) == measure_rates(family, config, 200, seed=4)

    @pytest.mark.parametrize("exact", [False, True])
    def test_single_probe_misses_within_loose_bound(self, exact):
        config = PoleTestConfig(samples=1, epsilon=0.05)
        report = measure_rates(CancellingPairFamily(exact=exact), config, 2000)
        assert report.predicted == pytest.approx(0.05 / (2 * math.pi))
        assert report.measured <= 10 * report.predicted + 3 * report.standard_error

    def test_three_probes_rarely_miss(self):
        report = measure_rates(CancellingPairFamily(exact=True), PoleTestConfig(), 2000)
        assert report.measured <= 1e-3

    def test_false_positive_rate(self):
        report = measure_false_positive_rate(EntireFamily(), PoleTestConfig(), 500)
        assert math.isnan(report.predicted)
        assert report.measured <= 0.01

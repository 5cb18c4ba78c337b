"""Predicted and measured error rates of the pole test."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .function import AnalyticFunction, RationalOracle
from .poletest import PoleTestConfig, Verdict, test_contour
from .quadrature import Contour

__all__ = [
    "CancellingPairFamily",
    "EntireFamily",
    "RateReport",
    "measure_false_positive_rate",
    "measure_rates",
    "p_detect",
    "p_false_negative",
]


def p_detect(epsilon: float, n_poles: int) -> float:
    """Rough chance that one random probe reveals ``n_poles`` enclosed poles.

    Models the residue vector and the probe vector as independent random
    directions; detection fails when they are orthogonal to within
    ``epsilon``. Two poles is the hardest case.
    """
    if n_poles < 2:
        raise ValueError("the estimate needs at least two poles")
    if n_poles == 2:
        p = 1 - epsilon / (2 * math.pi)
    else:
        p = 1 - 2 * math.sqrt(math.pi) * epsilon / (2 * n_poles - 3)
    return min(1.0, max(0.0, p))


def p_false_negative(epsilon: float, samples: int) -> float:
    """``(epsilon / 2 pi) ** samples``: all probes miss a cancelling pair."""
    return (epsilon / (2 * math.pi)) ** samples


@dataclass(frozen=True)
class RateReport:
    predicted: float
    measured: float
    trials: int
    standard_error: float
    inconclusive: int = 0

    @classmethod
    def from_counts(cls, predicted: float, hits: int, trials: int, inconclusive: int = 0):
        if trials == 0:
            return cls(predicted, math.nan, 0, math.nan, 0)
        p = hits / trials
        return cls(predicted, p, trials, math.sqrt(p * (1 - p) / trials), inconclusive)

    @property
    def empty(self) -> bool:
        return self.trials == 0


def _uniform_disk(rng: np.random.Generator, radius: float) -> complex:
    rho = radius * math.sqrt(rng.random())
    phi = 2 * math.pi * rng.random()
    return complex(rho * math.cos(phi), rho * math.sin(phi))


@dataclass(frozen=True)
class CancellingPairFamily:
    """Two enclosed simple poles whose residues sum to zero.

    The poles are uniform in the disk of radius ``spread * radius`` about
    the centre and the functions are ``R/(z - z1) - R/(z - z2)`` with
    ``|R| = 1``. That pair still shifts the plain mean-value integral by
    ``R/(z1 - z0) - R/(z2 - z0)``; with ``exact=True`` the residues become
    ``R (z1 - z0)`` and ``-R (z2 - z0)`` so the shift at ``k = 0`` is
    exactly zero and only the probe functions can reveal the poles.
    """

    center: complex = 0j
    radius: float = 1.0
    spread: float = 0.9
    exact: bool = False

    @property
    def contour(self) -> Contour:
        return Contour(self.center, self.radius)

    def sample(self, rng: np.random.Generator) -> RationalOracle:
        inner = self.spread * self.radius
        z1 = self.center + _uniform_disk(rng, inner)
        z2 = self.center + _uniform_disk(rng, inner)
        residue = complex(math.cos(phase := 2 * math.pi * rng.random()), math.sin(phase))
        if self.exact:
            return RationalOracle.simple(
                [z1, z2], [residue * (z1 - self.center), -residue * (z2 - self.center)]
            )
        return RationalOracle.simple([z1, z2], [residue, -residue])


@dataclass(frozen=True)
class EntireFamily:
    """Random polynomials of degree up to 8, or ``a * exp(b z)``."""

    center: complex = 0j
    radius: float = 1.0
    max_degree: int = 8

    @property
    def contour(self) -> Contour:
        return Contour(self.center, self.radius)

    def sample(self, rng: np.random.Generator):
        if rng.random() < 0.5:
            degree = int(rng.integers(0, self.max_degree + 1))
            coeffs = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
            return RationalOracle((), tuple(coeffs)).to_function()
        a = complex(rng.normal(), rng.normal())
        b = complex(rng.normal(), rng.normal())
        return AnalyticFunction(lambda z: a * np.exp(b * (z - self.center)), "a*exp(b z)")


def _trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def measure_rates(
    family: CancellingPairFamily,
    config: PoleTestConfig,
    trials: int,
    seed: int = 0,
) -> RateReport:
    """Fraction of cancelling pairs the test reports as pole-free.

    Inconclusive outcomes are counted separately and not as misses.
    """
    misses = inconclusive = 0
    for i in range(trials):
        rng = _trial_rng(seed, i)
        f = family.sample(rng).to_function()
        trial_config = dataclasses.replace(config, rng_seed=int(rng.integers(2**63)))
        verdict = test_contour(f, family.contour, trial_config).verdict
        misses += verdict is Verdict.NO_POLES_DETECTED
        inconclusive += verdict is Verdict.INCONCLUSIVE
    predicted = p_false_negative(config.epsilon, config.samples)
    return RateReport.from_counts(predicted, misses, trials, inconclusive)


def measure_false_positive_rate(
    family: EntireFamily, config: PoleTestConfig, trials: int, seed: int = 0
) -> RateReport:
    """Fraction of entire functions reported as having poles.

    No closed-form prediction exists, so ``predicted`` is NaN.
    """
    hits = inconclusive = 0
    for i in range(trials):
        rng = _trial_rng(seed, i)
        f = family.sample(rng)
        trial_config = dataclasses.replace(config, rng_seed=int(rng.integers(2**63)))
        verdict = test_contour(f, family.contour, trial_config).verdict
        hits += verdict is Verdict.POLES_DETECTED
        inconclusive += verdict is Verdict.INCONCLUSIVE
    return RateReport.from_counts(math.nan, hits, trials, inconclusive)

"""Randomized test for poles inside a circular contour.

For an f analytic inside the contour,
``(1/2 pi i) oint f(z) h(z) / (z - z0) dz = f(z0) h(z0)`` for every entire
``h``. Each enclosed pole z_j shifts the left side by
``exp(ik(z_j - z0)) R_j / (z_j - z0)`` when ``h(z) = exp(ik(z - z0))``.
Drawing several random ``k`` makes it unlikely that those shifts cancel.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .function import AnalyticFunction, NonFinite
from .quadrature import Contour, ContourSamples, EvaluationFailed

__all__ = [
    "CenterNotFinite",
    "PoleTestConfig",
    "PoleTestOutcome",
    "SampleRecord",
    "Verdict",
    "sample_wavenumber",
    "test_contour",
]

# Deviation allowed when the threshold degenerates to zero.
ZERO_THRESHOLD_TOLERANCE = 1e-30


class CenterNotFinite(ArithmeticError):
    def __init__(self, z0: complex):
        super().__init__(f"function is not finite at the centre z0 = {z0}")
        self.z0 = z0


class Verdict(enum.Enum):
    POLES_DETECTED = "poles"
    NO_POLES_DETECTED = "no-poles"
    INCONCLUSIVE = "inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PoleTestConfig:
    samples: int = 3
    n_points: int = 1000
    epsilon: float = 1e-2
    rng_seed: int = 0
    delta_factor: float = 0.1

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.n_points < 4 or self.n_points % 2:
            raise ValueError("n_points must be even and at least 4")
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if not self.delta_factor > 0:
            raise ValueError("delta_factor must be positive")


@dataclass(frozen=True)
class SampleRecord:
    k: complex
    deviation: float
    delta: float


@dataclass(frozen=True)
class PoleTestOutcome:
    verdict: Verdict
    max_deviation: float
    threshold: float
    per_sample: tuple[SampleRecord, ...] = field(default=())
    failed_node: int | None = None

    @property
    def max_delta(self) -> float:
        return max((s.delta for s in self.per_sample), default=0.0)


def sample_wavenumber(rng: np.random.Generator, contour: Contour) -> complex:
    """Draw ``k`` uniformly from the disk ``|k| <= 1/r``.

    Then ``|k (z - z0)| <= 1`` on the contour, which keeps
    ``exp(-1) <= |exp(ik(z - z0))| <= e``.
    """
    rho = math.sqrt(rng.random()) / contour.radius
    phi = 2 * math.pi * rng.random()
    return complex(rho * math.cos(phi), rho * math.sin(phi))


def test_contour(
    f: AnalyticFunction, contour: Contour, config: PoleTestConfig = PoleTestConfig()
) -> PoleTestOutcome:
    """Decide whether ``contour`` encloses singularities of ``f``.

    The threshold is ``epsilon`` times the average of ``|f|`` over the
    contour. A sample whose quadrature error estimate exceeds
    ``delta_factor`` times the threshold makes the test inconclusive; it is
    checked before the deviation, so a detection is never based on an
    unresolved integral.
    """
    f0 = f(contour.center)
    if f0 is NonFinite:
        raise CenterNotFinite(contour.center)

    try:
        samples = ContourSamples(f, contour, config.n_points)
    except EvaluationFailed as exc:
        return PoleTestOutcome(Verdict.INCONCLUSIVE, 0.0, math.nan, failed_node=exc.index)

    threshold = config.epsilon * samples.magnitude_average()
    if not math.isfinite(threshold):
        # |f| sums overflowed: the contour is too close to a singularity
        return PoleTestOutcome(Verdict.INCONCLUSIVE, 0.0, threshold)
    rng = np.random.default_rng(config.rng_seed)
    records = []
    verdict = Verdict.NO_POLES_DETECTED
    for _ in range(config.samples):
        k = sample_wavenumber(rng, contour)
        result = samples.mean_value(k)
        deviation = abs(result.value - f0)
        records.append(SampleRecord(k, deviation, result.delta))
        if threshold == 0:
            if not (deviation <= ZERO_THRESHOLD_TOLERANCE and result.delta <= ZERO_THRESHOLD_TOLERANCE):
                verdict = Verdict.INCONCLUSIVE
                break
            continue
        # written so that a NaN from overflow also lands here
        if not (result.delta <= config.delta_factor * threshold) or math.isnan(deviation):
            verdict = Verdict.INCONCLUSIVE
            break
        if deviation > threshold:
            verdict = Verdict.POLES_DETECTED
            break
    max_dev = max(r.deviation for r in records)
    return PoleTestOutcome(verdict, max_dev, threshold, tuple(records))


# keep pytest from collecting the imported name
test_contour.__test__ = False

"""Bracketing the radius of convergence by expansion and bisection."""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .function import AnalyticFunction, NonFinite
from .poletest import CenterNotFinite, PoleTestConfig, Verdict, test_contour
from .quadrature import Contour

__all__ = [
    "RadiusBounds",
    "SearchConfig",
    "SearchStatus",
    "TranscriptEntry",
    "search_radius",
]


class SearchStatus(enum.Enum):
    CONVERGED = "converged"
    HALTED_INCONCLUSIVE = "halted-inconclusive"
    NO_POLE_WITHIN_LIMIT = "no-pole-within-limit"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SearchConfig:
    limit: float = 1024.0
    tolerance: float = 0.0
    pole_test: PoleTestConfig = field(default_factory=PoleTestConfig)
    rng_seed: int = 0

    def __post_init__(self):
        if not self.limit > 0:
            raise ValueError("limit must be positive")
        if not self.tolerance >= 0:
            raise ValueError("tolerance must be non-negative")


@dataclass(frozen=True)
class TranscriptEntry:
    radius: float
    verdict: Verdict
    phase: str  # "expand" or "bisect"


@dataclass(frozen=True)
class RadiusBounds:
    lower: float
    upper: float
    status: SearchStatus
    iterations: int
    transcript: tuple[TranscriptEntry, ...] = ()

    @property
    def tightness(self) -> float:
        """``U/L - 1``; infinite when the lower bound is zero."""
        if self.lower == 0:
            return math.inf
        return self.upper / self.lower - 1

    def contains(self, r: float) -> bool:
        return self.lower < r < self.upper


def _test_seed(search_seed: int, pole_seed: int, index: int) -> int:
    seq = np.random.SeedSequence([search_seed, pole_seed, index])
    return int(seq.generate_state(1, np.uint64)[0])


def search_radius(
    f: AnalyticFunction, z0: complex, config: SearchConfig = SearchConfig()
) -> RadiusBounds:
    """Bracket the distance from ``z0`` to the nearest singularity of ``f``.

    The first trial radius is drawn from [0.5, 1.5] and doubled while the
    contour tests pole-free; each pole-free radius becomes the lower bound.
    An inconclusive test during this expansion leaves no verified upper
    bound, so the search returns ``(L, inf)``.
    Once a contour with poles is found, the bracket is bisected until the
    test turns inconclusive, the width drops to ``tolerance``, or the width
    reaches a few ulps of the upper bound.
    """
    z0 = complex(z0)
    if f(z0) is NonFinite:
        raise CenterNotFinite(z0)

    transcript: list[TranscriptEntry] = []

    def probe(radius: float, phase: str) -> Verdict:
        seed = _test_seed(config.rng_seed, config.pole_test.rng_seed, len(transcript))
        test_config = dataclasses.replace(config.pole_test, rng_seed=seed)
        verdict = test_contour(f, Contour(z0, radius), test_config).verdict
        transcript.append(TranscriptEntry(radius, verdict, phase))
        return verdict

    def result(lower, upper, status):
        return RadiusBounds(lower, upper, status, len(transcript), tuple(transcript))

    rng = np.random.default_rng(np.random.SeedSequence([config.rng_seed]))
    lower = 0.0
    upper = min(rng.uniform(0.5, 1.5), config.limit)

    while True:
        verdict = probe(upper, "expand")
        if verdict is Verdict.POLES_DETECTED:
            break
        if verdict is Verdict.INCONCLUSIVE:
            # this radius was never shown to enclose a pole
            return result(lower, math.inf, SearchStatus.HALTED_INCONCLUSIVE)
        lower, upper = upper, 2 * upper
        if upper > config.limit:
            return result(0.0, math.inf, SearchStatus.NO_POLE_WITHIN_LIMIT)

    while upper - lower > config.tolerance:
        if upper - lower < 4 * math.ulp(upper):
            break
        radius = lower + (upper - lower) / 2
        verdict = probe(radius, "bisect")
        if verdict is Verdict.NO_POLES_DETECTED:
            lower = radius
        elif verdict is Verdict.POLES_DETECTED:
            upper = radius
        else:
            return result(lower, upper, SearchStatus.HALTED_INCONCLUSIVE)
    return result(lower, upper, SearchStatus.CONVERGED)

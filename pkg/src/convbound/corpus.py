"""Benchmark functions with known singularity geometry.

``r_derived`` is the distance from ``z0`` to the nearest singularity worked
out from the closed form. ``r_reported`` is the radius printed alongside
the reference bounds; for two rows the two disagree and both are kept.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .function import AnalyticFunction

__all__ = ["CORPUS", "CorpusRow", "corpus_row"]


def _nearest(z0: complex, singularities) -> float:
    return float(min(abs(s - z0) for s in singularities))


_TWELFTH_ROOTS_OF_MINUS_ONE = [cmath.exp(1j * math.pi * (2 * m + 1) / 12) for m in range(12)]


@dataclass(frozen=True)
class CorpusRow:
    name: str
    expression: str
    z0: complex
    r_reported: float
    r_derived: float
    reported_lower: float
    reported_upper: float
    kind: str  # "simple", "cancelling", "offset", "essential", "multipole", "entire"

    def function(self) -> AnalyticFunction:
        return AnalyticFunction.from_expression(self.expression)


CORPUS: tuple[CorpusRow, ...] = (
    CorpusRow("1/(1+z) @ 0", "1/(1+z)", 0, 1.0, 1.0, 0.984, 1.023, "simple"),
    CorpusRow("1/(1+z) @ 2", "1/(1+z)", 2, 3.0, 3.0, 2.913, 3.059, "simple"),
    CorpusRow("1/(1+z) @ -1.1", "1/(1+z)", -1.1, 0.1, _nearest(-1.1, [-1]), 0.0959, 0.102, "simple"),
    CorpusRow("1/(1+z) @ i", "1/(1+z)", 1j, math.sqrt(2), math.sqrt(2), 1.394, 1.416, "simple"),
    CorpusRow("1/(1+z) + 1/(1-z) @ 0", "1/(1+z) + 1/(1-z)", 0, 1.0, 1.0, 0.806, 1.209, "cancelling"),
    CorpusRow("100 + 1/(1+z) @ 0", "100 + 1/(1+z)", 0, 1.0, 1.0, 0.923, 1.077, "offset"),
    CorpusRow(
        "1/(1+z) + 2/(1-z^2) @ 0",
        "1/(1+z) + 2/(1-z^2)",
        0,
        1 / math.sqrt(2),
        _nearest(0, [-1, 1]),
        0.683,
        0.716,
        "cancelling",
    ),
    CorpusRow("exp(1/(1+z)) @ 0", "exp(1/(1+z))", 0, 1.0, 1.0, 0.900, 1.050, "essential"),
    CorpusRow("z @ 0", "z", 0, math.inf, math.inf, 0.0, math.inf, "entire"),
    CorpusRow("cos(1/z) @ i", "cos(1/z)", 1j, 1.0, _nearest(1j, [0]), 0.659, 1.318, "essential"),
    CorpusRow(
        "z^8/(z^12+1) @ 4",
        "z^8/(z^12+1)",
        4,
        5.0,
        _nearest(4, _TWELFTH_ROOTS_OF_MINUS_ONE),
        2.877,
        5.755,
        "multipole",
    ),
)


def corpus_row(index: int) -> CorpusRow:
    """1-based lookup, matching the row numbering of the reference table."""
    return CORPUS[index - 1]

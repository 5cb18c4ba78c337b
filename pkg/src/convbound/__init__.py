"""Randomized contour-integral tests for poles and radius-of-convergence bounds."""

from .expression import NonFinite, evaluate, parse_expression, to_text
from .function import AnalyticFunction, Pole, RationalOracle, oracle_mean_value
from .poletest import (
    CenterNotFinite,
    PoleTestConfig,
    PoleTestOutcome,
    Verdict,
    sample_wavenumber,
    test_contour,
)
from .quadrature import (
    Contour,
    EvaluationFailed,
    IntegrationResult,
    magnitude_average,
    mean_value_integral,
)
from .search import RadiusBounds, SearchConfig, SearchStatus, search_radius

__version__ = "0.1.0"

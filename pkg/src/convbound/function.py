"""Black-box analytic functions and an exact rational-function oracle."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .expression import NonFinite, Node, evaluate_array, parse_expression, to_text

__all__ = [
    "AnalyticFunction",
    "NonFinite",
    "Pole",
    "RationalOracle",
    "oracle_mean_value",
]


class AnalyticFunction:
    """A deterministic map from complex numbers to complex numbers.

    ``func`` receives a 1-d complex array when ``vectorized`` is true and
    a single complex number otherwise. Points at which the result is not
    finite, or at which a scalar ``func`` raises an arithmetic error, are
    reported as non-finite rather than raising.
    """

    def __init__(self, func: Callable, name: str = "f", vectorized: bool = True):
        self.func = func
        self.name = name
        self.vectorized = vectorized

    def __repr__(self):
        return f"AnalyticFunction({self.name!r})"

    @classmethod
    def from_expression(cls, text_or_node) -> "AnalyticFunction":
        node = parse_expression(text_or_node) if isinstance(text_or_node, str) else text_or_node
        return ExpressionFunction(node)

    def sample(self, z) -> tuple[np.ndarray, np.ndarray]:
        """Evaluate at every point of ``z``; returns ``(values, nonfinite_mask)``."""
        z = np.asarray(z, dtype=complex)
        if self.vectorized:
            with np.errstate(all="ignore"):
                values = np.asarray(self.func(z), dtype=complex)
            values = np.broadcast_to(values, z.shape).copy()
        else:
            values = np.empty(z.shape, dtype=complex)
            for idx, zi in np.ndenumerate(z):
                try:
                    values[idx] = complex(self.func(complex(zi)))
                except (ZeroDivisionError, OverflowError, ValueError):
                    values[idx] = complex(np.nan, np.nan)
        return values, ~np.isfinite(values)

    def __call__(self, z: complex):
        values, bad = self.sample(np.array([z], dtype=complex))
        if bad[0]:
            return NonFinite
        return complex(values[0])

    def scaled(self, c: complex) -> "AnalyticFunction":
        """The function ``c * f``."""
        inner = self

        def func(z):
            values, _ = inner.sample(z)
            return c * values

        return AnalyticFunction(func, f"{c}*({self.name})")


class ExpressionFunction(AnalyticFunction):
    """An AnalyticFunction backed by a parsed expression tree.

    Intermediate infinities (e.g. ``exp(-1/z)`` at ``z = 0``) are reported
    as non-finite even when the final value happens to be finite.
    """

    def __init__(self, node: Node, name: str | None = None):
        super().__init__(None, name or to_text(node))
        self.node = node

    def __reduce__(self):
        return (ExpressionFunction, (self.node, self.name))

    def sample(self, z):
        values, bad = evaluate_array(self.node, z)
        return values, bad | ~np.isfinite(values)


@dataclass(frozen=True)
class Pole:
    """A principal-part term ``coefficient / (z - location)**order``.

    For ``order == 1`` the coefficient is the residue.
    """

    location: complex
    coefficient: complex
    order: int = 1

    def __post_init__(self):
        object.__setattr__(self, "location", complex(self.location))
        object.__setattr__(self, "coefficient", complex(self.coefficient))
        if self.order < 1:
            raise ValueError("pole order must be a positive integer")


@dataclass(frozen=True)
class RationalOracle:
    """``entire_part(z) + sum(pole terms)`` with every singularity known.

    ``entire_part`` holds polynomial coefficients in ascending powers.
    """

    poles: tuple[Pole, ...]
    entire_part: tuple[complex, ...] = field(default=())

    def __post_init__(self):
        poles = tuple(p if isinstance(p, Pole) else Pole(*p) for p in self.poles)
        locations = [p.location for p in poles]
        if len(set(locations)) != len(locations):
            raise ValueError("pole locations must be pairwise distinct")
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "entire_part", tuple(complex(c) for c in self.entire_part))

    @classmethod
    def simple(cls, locations: Sequence[complex], residues: Sequence[complex], entire_part=()):
        return cls(tuple(Pole(z, r) for z, r in zip(locations, residues)), tuple(entire_part))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(all="ignore"):
            out = np.zeros(z.shape, dtype=complex)
            for c in reversed(self.entire_part):
                out = out * z + c
            for p in self.poles:
                out = out + p.coefficient / (z - p.location) ** p.order
        return out[()] if out.ndim == 0 else out

    def nearest_singularity(self, z0: complex) -> float:
        """Distance from ``z0`` to the closest pole (inf if there is none)."""
        return min((abs(p.location - z0) for p in self.poles), default=float("inf"))

    def to_function(self) -> AnalyticFunction:
        return AnalyticFunction(self.__call__, "rational oracle")

    def to_text(self) -> str:
        """An expression string for the same function."""

        def num(c: complex) -> str:
            return f"({c.real!r} + {c.imag!r}*i)"

        terms = [f"{num(c)}*z^{n}" for n, c in enumerate(self.entire_part)]
        terms += [
            f"{num(p.coefficient)}/(z - {num(p.location)})^{p.order}" for p in self.poles
        ]
        return " + ".join(terms) or "0"


def oracle_mean_value(oracle: RationalOracle, z0: complex, r: float, k: complex) -> complex:
    """Exact value of ``(1/2 pi i) oint f(z) exp(ik(z-z0)) / (z-z0) dz`` on ``|z-z0| = r``.

    By residues: ``f(z0)`` plus ``R_j exp(ik(z_j-z0)) / (z_j-z0)`` for each
    enclosed pole. Only simple enclosed poles are supported, and poles closer
    than ``1e-9 * r`` to the circle are rejected as ill-conditioned.
    """
    z0 = complex(z0)
    if not r > 0:
        raise ValueError("radius must be positive")
    total = complex(oracle(z0))
    if not cmath.isfinite(total):
        raise ValueError("oracle is singular at the centre")
    for p in oracle.poles:
        d = p.location - z0
        if abs(abs(d) - r) < 1e-9 * r:
            raise ValueError(f"pole at {p.location} lies on the contour")
        if abs(d) < r:
            if p.order != 1:
                raise ValueError("oracle supports only simple enclosed poles")
            total += p.coefficient * cmath.exp(1j * k * d) / d
    return total

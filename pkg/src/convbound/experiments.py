"""Corpus runs and parameter sweeps, with CSV output."""

from __future__ import annotations

import csv
import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .corpus import CORPUS, CorpusRow
from .function import AnalyticFunction
from .search import RadiusBounds, SearchConfig, search_radius

__all__ = [
    "CORPUS_FIELDS",
    "SWEEP_N_FIELDS",
    "SWEEP_Z0_FIELDS",
    "CorpusResult",
    "derive_seed",
    "format_complex",
    "log_grid",
    "parse_complex",
    "run_corpus",
    "sweep_n",
    "sweep_z0",
    "write_csv",
]

CORPUS_FIELDS = ("name", "z0", "r_paper", "r_derived", "lower", "upper", "status")
SWEEP_Z0_FIELDS = ("z0_re", "z0_im", "lower", "upper", "status")
SWEEP_N_FIELDS = ("n_points", "lower", "upper", "tightness")


def derive_seed(seed: int, index: int) -> int:
    """Independent per-grid-point seed."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


def format_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "-" if z.imag < 0 or (z.imag == 0 and math.copysign(1, z.imag) < 0) else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` (``j`` accepted for ``i``)."""
    cleaned = text.strip().replace(" ", "").replace("I", "i").replace("j", "i")
    if not cleaned:
        raise ValueError("empty complex number")
    if cleaned.endswith("i"):
        body = cleaned[:-1]
        # bare "i", "+i", "-i" and "a+i" forms
        if body == "" or body[-1] in "+-":
            body += "1"
        cleaned = body + "j"
    try:
        return complex(cleaned)
    except ValueError:
        raise ValueError(f"not a complex number: {text!r}") from None


def log_grid(start: float, stop: float, count: int) -> list[int]:
    """Logarithmically spaced even point counts."""
    if count < 1 or not 0 < start <= stop:
        raise ValueError("invalid grid")
    values = np.geomspace(start, stop, count) if count > 1 else np.array([start])
    return [max(4, 2 * int(round(v / 2))) for v in values]


def _map(fn: Callable, items: Sequence, jobs: int) -> Iterator:
    """Ordered map, optionally over a process pool."""
    if jobs <= 1 or len(items) <= 1:
        return map(fn, items)
    pool = ProcessPoolExecutor(max_workers=jobs)
    results = pool.map(fn, items)

    def drain():
        try:
            yield from results
        finally:
            pool.shutdown(cancel_futures=True)

    return drain()


@dataclass(frozen=True)
class CorpusResult:
    row: CorpusRow
    seed: int
    bounds: RadiusBounds

    @property
    def contains_derived(self) -> bool:
        if math.isinf(self.row.r_derived):
            return self.bounds.lower == 0 and math.isinf(self.bounds.upper)
        return self.bounds.contains(self.row.r_derived)

    def csv_row(self) -> dict:
        return {
            "name": self.row.name,
            "z0": format_complex(self.row.z0),
            "r_paper": repr(self.row.r_reported),
            "r_derived": repr(self.row.r_derived),
            "lower": repr(self.bounds.lower),
            "upper": repr(self.bounds.upper),
            "status": str(self.bounds.status),
        }


def _corpus_task(args) -> CorpusResult:
    row, config = args
    return CorpusResult(row, config.rng_seed, search_radius(row.function(), row.z0, config))


def run_corpus(
    config: SearchConfig = SearchConfig(),
    rows: Iterable[CorpusRow] = CORPUS,
    jobs: int = 1,
) -> Iterator[CorpusResult]:
    tasks = [(row, config) for row in rows]
    return _map(_corpus_task, tasks, jobs)


def _search_task(args) -> RadiusBounds:
    f, z0, config = args
    return search_radius(f, z0, config)


def sweep_z0(
    f: AnalyticFunction,
    centers: Sequence[complex],
    config: SearchConfig = SearchConfig(),
    jobs: int = 1,
) -> Iterator[tuple[complex, RadiusBounds]]:
    """Bounds at each centre; grid point ``i`` uses ``derive_seed(seed, i)``."""
    tasks = [
        (f, complex(z0), dataclasses.replace(config, rng_seed=derive_seed(config.rng_seed, i)))
        for i, z0 in enumerate(centers)
    ]
    return zip(centers, _map(_search_task, tasks, jobs))


def sweep_n(
    f: AnalyticFunction,
    z0: complex,
    n_grid: Sequence[int],
    config: SearchConfig = SearchConfig(),
    seeds: int = 1,
    jobs: int = 1,
) -> Iterator[tuple[int, RadiusBounds]]:
    """Bounds for each point count.

    With ``seeds > 1`` every point count is searched with seeds
    ``seed, seed+1, ...`` and the run of median tightness is reported.
    """
    if seeds < 1:
        raise ValueError("seeds must be at least 1")
    tasks = [
        (
            f,
            complex(z0),
            dataclasses.replace(
                config,
                rng_seed=config.rng_seed + s,
                pole_test=dataclasses.replace(config.pole_test, n_points=n),
            ),
        )
        for n in n_grid
        for s in range(seeds)
    ]
    results = _map(_search_task, tasks, jobs)
    for n in n_grid:
        runs = [next(results) for _ in range(seeds)]
        runs.sort(key=lambda b: b.tightness)
        yield n, runs[(seeds - 1) // 2]


def sweep_z0_rows(items) -> Iterator[dict]:
    for z0, b in items:
        yield {
            "z0_re": repr(complex(z0).real),
            "z0_im": repr(complex(z0).imag),
            "lower": repr(b.lower),
            "upper": repr(b.upper),
            "status": str(b.status),
        }


def sweep_n_rows(items) -> Iterator[dict]:
    for n, b in items:
        yield {
            "n_points": str(n),
            "lower": repr(b.lower),
            "upper": repr(b.upper),
            "tightness": repr(b.tightness),
        }


def write_csv(stream, fields: Sequence[str], rows: Iterable[dict]) -> int:
    """Write header and rows, flushing after each row. Returns the row count."""
    writer = csv.DictWriter(stream, fieldnames=list(fields), lineterminator="\n")
    writer.writeheader()
    stream.flush()
    count = 0
    for row in rows:
        writer.writerow(row)
        stream.flush()
        count += 1
    return count

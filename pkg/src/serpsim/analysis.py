"""Batch analyses over collections of ranked lists.

Builds day-by-query similarity matrices for an engine pair, collapses
them into per-day consistency series and summary statistics, sweeps a
single penalty weight to gauge how much each factor moves the score,
and measures how far one engine's results drift between two crawl
periods.
"""

from __future__ import annotations

import datetime as dt
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .combined import PenaltyComponents, penalty_components, score_from_components
from .errors import ValidationError
from .model import DEFAULT_CONFIG, MetricConfig, RankedList, SimilarityMatrix

#: Key identifying one ranked list: (engine, query, date).
RecordKey = tuple[str, str, dt.date]

PairMetric = Callable[[RankedList, RankedList], float]

SWEEP_FACTORS = ("snippet", "title", "transposition")

DEFAULT_SWEEP_STEPS = tuple(round(0.1 * i, 1) for i in range(1, 11))


class SerpDataset:
    """An indexed collection of ranked lists, one per (engine, query, date).

    ``categories`` optionally maps a query to a topic label; it is carried
    along for reporting and never affects any score.
    """

    def __init__(
        self,
        records: Mapping[RecordKey, RankedList],
        categories: Mapping[str, str] | None = None,
    ):
        self._records = dict(records)
        self.categories = dict(categories or {})
        for key, ranked in self._records.items():
            if (ranked.engine, ranked.query, ranked.date) != key:
                raise ValidationError(
                    f"record key {key} does not match list identity "
                    f"({ranked.engine}, {ranked.query}, {ranked.date})"
                )

    @classmethod
    def from_lists(
        cls,
        lists: Iterable[RankedList],
        categories: Mapping[str, str] | None = None,
    ) -> "SerpDataset":
        records: dict[RecordKey, RankedList] = {}
        for ranked in lists:
            key = (ranked.engine, ranked.query, ranked.date)
            if key in records:
                raise ValidationError(f"duplicate record for {key}")
            records[key] = ranked
        return cls(records, categories)

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self):
        return iter(sorted(self._records))

    def engines(self) -> tuple[str, ...]:
        return tuple(sorted({k[0] for k in self._records}))

    def queries(self, engine: str | None = None) -> tuple[str, ...]:
        keys = self._records if engine is None else [k for k in self._records if k[0] == engine]
        return tuple(sorted({k[1] for k in keys}))

    def dates(self, engine: str | None = None, query: str | None = None) -> tuple[dt.date, ...]:
        keys = [
            k
            for k in self._records
            if (engine is None or k[0] == engine) and (query is None or k[1] == query)
        ]
        return tuple(sorted({k[2] for k in keys}))

    def get(self, engine: str, query: str, date: dt.date) -> RankedList | None:
        return self._records.get((engine, query, date))


def _require_engines(dataset: SerpDataset, *engines: str) -> None:
    known = set(dataset.engines())
    missing = [e for e in engines if e not in known]
    if missing:
        raise ValidationError(
            f"engine(s) not in dataset: {', '.join(sorted(missing))}; "
            f"available: {', '.join(dataset.engines())}"
        )


def similarity_matrix(
    dataset: SerpDataset,
    engine_a: str,
    engine_b: str,
    cfg: MetricConfig = DEFAULT_CONFIG,
    *,
    stopwords: frozenset[str] | None = None,
    metric_fn: PairMetric | None = None,
    max_workers: int | None = None,
) -> SimilarityMatrix:
    """Score one engine pair on every (date, query) cell.

    Rows are the union of dates, columns the union of queries (both
    sorted); a cell is None when either engine lacks that list. The
    default metric is the combined score; pass ``metric_fn`` to grade
    the same grid with a baseline metric instead. Results are identical
    with or without a thread pool.
    """
    _require_engines(dataset, engine_a, engine_b)
    days = tuple(sorted(set(dataset.dates(engine_a)) | set(dataset.dates(engine_b))))
    queries = tuple(sorted(set(dataset.queries(engine_a)) | set(dataset.queries(engine_b))))

    if metric_fn is None:
        def metric_fn(list_a: RankedList, list_b: RankedList) -> float:
            return score_from_components(
                penalty_components(list_a, list_b, stopwords), cfg
            ).score

    cells: list[tuple[int, int, RankedList, RankedList]] = []
    for i, day in enumerate(days):
        for j, query in enumerate(queries):
            list_a = dataset.get(engine_a, query, day)
            list_b = dataset.get(engine_b, query, day)
            if list_a is not None and list_b is not None:
                cells.append((i, j, list_a, list_b))

    grid: list[list[float | None]] = [[None] * len(queries) for _ in days]
    if max_workers and max_workers > 1 and cells:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            scores = list(pool.map(lambda c: metric_fn(c[2], c[3]), cells))
    else:
        scores = [metric_fn(list_a, list_b) for _, _, list_a, list_b in cells]
    for (i, j, _, _), value in zip(cells, scores):
        grid[i][j] = value

    return SimilarityMatrix(
        engine_pair=(engine_a, engine_b),
        days=days,
        queries=queries,
        values=tuple(tuple(row) for row in grid),
    )


def consistency_series(matrix: SimilarityMatrix) -> list[tuple[dt.date, float | None]]:
    """Per-day mean similarity across queries, in date order.

    A day with no scored cells yields None rather than a fabricated 0.
    """
    if not matrix.days:
        raise ValidationError("matrix has no rows to aggregate")
    series: list[tuple[dt.date, float | None]] = []
    for day, row in zip(matrix.days, matrix.values):
        present = [v for v in row if v is not None]
        series.append((day, statistics.fmean(present) if present else None))
    return series


def pair_summary(matrix: SimilarityMatrix) -> dict[str, float]:
    """Mean, median, min and max over all scored cells."""
    values = matrix.present_values()
    if not values:
        raise ValidationError("matrix has no scored cells to summarize")
    return {
        "mean": statistics.fmean(values),
        "median": statistics.median(values),
        "min": min(values),
        "max": max(values),
    }


@dataclass(frozen=True)
class ImpactReport:
    """How much turning up one penalty weight lowers the mean score.

    ``decrease_pct[k]`` is the percentage drop of the mean score at
    ``weight_steps[k]`` relative to the all-weights-zero baseline.
    Holding everything else fixed, a larger weight can only lower each
    cell's score, so the series is non-decreasing by construction.
    """

    factor: str
    weight_steps: tuple[float, ...]
    decrease_pct: tuple[float, ...]
    base_mean: float

    def __post_init__(self) -> None:
        if self.factor not in SWEEP_FACTORS:
            raise ValidationError(f"unknown factor {self.factor!r}")
        if len(self.weight_steps) != len(self.decrease_pct):
            raise ValidationError("one decrease value is required per weight step")
        for pct in self.decrease_pct:
            if pct < -1e-9:
                raise ValidationError(f"negative decrease {pct}")
        for prev, cur in zip(self.decrease_pct, self.decrease_pct[1:]):
            if cur < prev - 1e-9:
                raise ValidationError("decrease percentages must be non-decreasing")


def impact_sweep(
    dataset: SerpDataset,
    engine_a: str,
    engine_b: str,
    factor: str,
    steps: tuple[float, ...] = DEFAULT_SWEEP_STEPS,
    *,
    cfg: MetricConfig = DEFAULT_CONFIG,
    stopwords: frozenset[str] | None = None,
) -> ImpactReport:
    """Sweep one penalty weight over ``steps``, zeroing the other two.

    The baseline sets all three penalty weights to zero (boost weights
    are kept, so positional agreement still counts). Each step re-scores
    every cell from cached penalties, then reports the mean's percentage
    decrease. Raises if the baseline mean is zero, since a percentage
    decrease is undefined there.
    """
    if factor not in SWEEP_FACTORS:
        raise ValidationError(
            f"factor must be one of {', '.join(SWEEP_FACTORS)}, got {factor!r}"
        )
    if not steps:
        raise ValidationError("at least one weight step is required")
    for step in steps:
        if not 0.0 < step <= 1.0:
            raise ValidationError(f"weight steps must lie in (0, 1], got {step}")
    for prev, cur in zip(steps, steps[1:]):
        if cur <= prev:
            raise ValidationError(f"weight steps must be strictly increasing, got {steps}")

    _require_engines(dataset, engine_a, engine_b)
    components: list[PenaltyComponents] = []
    for query in sorted(set(dataset.queries(engine_a)) | set(dataset.queries(engine_b))):
        for day in sorted(set(dataset.dates(engine_a)) | set(dataset.dates(engine_b))):
            list_a = dataset.get(engine_a, query, day)
            list_b = dataset.get(engine_b, query, day)
            if list_a is not None and list_b is not None:
                components.append(penalty_components(list_a, list_b, stopwords))
    if not components:
        raise ValidationError(
            f"no overlapping (query, date) cells for {engine_a} vs {engine_b}"
        )

    def mean_score(weights: dict[str, float]) -> float:
        step_cfg = MetricConfig(
            a=weights.get("snippet", 0.0),
            b=weights.get("title", 0.0),
            c=weights.get("transposition", 0.0),
            boost_weights=cfg.boost_weights,
        )
        return statistics.fmean(
            score_from_components(comp, step_cfg).score for comp in components
        )

    base_mean = mean_score({})
    if base_mean <= 0.0:
        raise ValidationError(
            "baseline mean score is zero; the engines share nothing to attenuate"
        )
    decreases = []
    for step in steps:
        drop = 100.0 * (base_mean - mean_score({factor: step})) / base_mean
        decreases.append(0.0 if -1e-9 <= drop < 0.0 else drop)
    return ImpactReport(
        factor=factor,
        weight_steps=tuple(steps),
        decrease_pct=tuple(decreases),
        base_mean=base_mean,
    )


def cross_period_drift(
    dataset_old: SerpDataset,
    dataset_new: SerpDataset,
    engine: str,
    cfg: MetricConfig = DEFAULT_CONFIG,
    *,
    stopwords: frozenset[str] | None = None,
    date_old: dt.date | None = None,
    date_new: dt.date | None = None,
) -> dict[str, float]:
    """Self-similarity of one engine between two crawl periods, per query.

    For every query present in both datasets for this engine, compares
    the old list against the new one with the combined score. Unless
    pinned, each side uses its earliest available date for that query.
    """
    _require_engines(dataset_old, engine)
    _require_engines(dataset_new, engine)
    shared = sorted(
        set(dataset_old.queries(engine)) & set(dataset_new.queries(engine))
    )
    if not shared:
        raise ValidationError(
            f"datasets share no queries for engine {engine!r}"
        )
    scores: dict[str, float] = {}
    for query in shared:
        old_date = date_old or dataset_old.dates(engine, query)[0]
        new_date = date_new or dataset_new.dates(engine, query)[0]
        list_old = dataset_old.get(engine, query, old_date)
        list_new = dataset_new.get(engine, query, new_date)
        if list_old is None or list_new is None:
            raise ValidationError(
                f"no record for {engine}/{query} on the requested date"
            )
        scores[query] = score_from_components(
            penalty_components(list_old, list_new, stopwords), cfg
        ).score
    return scores

"""Exponential literature growth: fitting, projection and doubling times."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from ._util import csv_text
from .errors import DomainError, InsufficientDataError, NoGrowthError
from .records import Corpus


class YearCount(NamedTuple):
    year: int
    count: float  # integral for observed series; real values allowed for model curves


@dataclass(frozen=True)
class GrowthModel:
    """``count(year) = base_count * 2 ** ((year - base_year) / doubling_time_years)``."""

    base_year: int
    base_count: float
    doubling_time_years: float
    fitted_points: int = 0
    excluded_years: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not self.base_count > 0:
            raise DomainError("base_count must be positive")
        if not self.doubling_time_years > 0:
            raise DomainError("doubling_time_years must be positive")

    @property
    def annual_growth_factor(self) -> float:
        return 2.0 ** (1.0 / self.doubling_time_years)

    @property
    def annual_growth_rate(self) -> float:
        return self.annual_growth_factor - 1.0

    def to_dict(self) -> dict:
        return {
            "base_year": self.base_year,
            "base_count": self.base_count,
            "doubling_time_years": self.doubling_time_years,
            "annual_growth_rate": self.annual_growth_rate,
            "fitted_points": self.fitted_points,
            "excluded_years": list(self.excluded_years),
        }


def year_counts(corpus: Corpus, first: int | None = None, last: int | None = None) -> tuple[list[YearCount], int]:
    """Papers per year, gaps filled with zeros.

    Returns the series and the number of records left out for lack of a year.
    """
    years = [y for y in corpus.years if y is not None]
    excluded = len(corpus) - len(years)
    if not years:
        return [], excluded
    lo = min(years) if first is None else first
    hi = max(years) if last is None else last
    counts = dict.fromkeys(range(lo, hi + 1), 0)
    for y in years:
        if y in counts:
            counts[y] += 1
    return [YearCount(y, n) for y, n in counts.items()], excluded


def fit_exponential(series: Sequence[YearCount] | Iterable[tuple[int, float]]) -> GrowthModel:
    """Least-squares line through ``log2(count)`` against year.

    Zero-count years are left out of the fit and listed in
    ``excluded_years``. The model is anchored at the last year in the series.
    """
    series = [YearCount(int(y), c) for y, c in series]
    if not series:
        raise InsufficientDataError("empty growth series")
    if len({p.year for p in series}) != len(series):
        raise DomainError("years must be unique within a growth series")
    if any(p.count < 0 for p in series):
        raise DomainError("counts must be non-negative")
    points = [p for p in series if p.count > 0]
    excluded = tuple(p.year for p in series if p.count <= 0)
    if len(points) < 3:
        raise InsufficientDataError(f"need at least 3 positive yearly counts, got {len(points)}")

    xs = [float(p.year) for p in points]
    ys = [math.log2(p.count) for p in points]
    xm = math.fsum(xs) / len(xs)
    ym = math.fsum(ys) / len(ys)
    sxx = math.fsum((x - xm) ** 2 for x in xs)
    sxy = math.fsum((x - xm) * (y - ym) for x, y in zip(xs, ys))
    if sxx == 0:
        raise InsufficientDataError("growth fit needs more than one distinct year")
    slope = sxy / sxx
    if slope <= 0:
        raise NoGrowthError(f"fitted slope {slope:.6g} is not positive; the series does not grow")

    base_year = max(p.year for p in series)
    base_count = 2.0 ** (ym + slope * (base_year - xm))
    return GrowthModel(base_year, base_count, 1.0 / slope, len(points), excluded)


def project(model: GrowthModel, year: float) -> float:
    """Expected count in ``year`` (past years lie on the same curve)."""
    if year == model.base_year:
        return float(model.base_count)
    return model.base_count * 2.0 ** ((year - model.base_year) / model.doubling_time_years)


def doubling_time_from_rate(annual_rate: float) -> float:
    """``ln 2 / ln(1 + rate)``; 0.07 gives 10.24 years."""
    if not annual_rate > 0:
        raise DomainError("annual growth rate must be positive")
    return math.log(2.0) / math.log1p(annual_rate)


def rate_from_doubling_time(doubling_time_years: float) -> float:
    """Inverse of :func:`doubling_time_from_rate`."""
    if not doubling_time_years > 0:
        raise DomainError("doubling time must be positive")
    return math.expm1(math.log(2.0) / doubling_time_years)


def growth_csv(series: Sequence[YearCount], model: GrowthModel | None) -> str:
    """``year,observed,fitted`` rows; ``fitted`` is blank when no model is given."""
    rows = []
    for p in series:
        fitted = "" if model is None else repr(project(model, p.year))
        rows.append((p.year, p.count, fitted))
    return csv_text(["year", "observed", "fitted"], rows)

"""From single-database counts to world literature output.

Three routes are provided:

* coverage correction -- divide by the database's recall ratio;
* power-law tail      -- fit the rank-count curve and sum it over the whole
  journal population;
* zone reconstruction -- stack idealized Bradford zones until they cover
  the journal population.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from ._util import csv_text, round_half_away
from .bradford import (MIN_FIT_JOURNALS, BradfordZones, PowerLawFit, zone_journal_count,
                       fit_power_law, idealized_table)
from .errors import DomainError, InsufficientDataError
from .growth import GrowthModel, project
from .records import JournalYield

DEFAULT_WORLD_JOURNALS = 100_000
DEFAULT_RECALL_RATIO = 0.4

_SUM_CHUNK = 1 << 20


class Method(str, Enum):
    POWER_LAW_TAIL = "POWER_LAW_TAIL"
    COVERAGE_FACTOR = "COVERAGE_FACTOR"
    ZONE_RECONSTRUCTION = "ZONE_RECONSTRUCTION"


@dataclass(frozen=True)
class CoverageConfig:
    """Share of the world literature a single database indexes."""

    recall_ratio: float = DEFAULT_RECALL_RATIO

    def __post_init__(self) -> None:
        if not 0 < self.recall_ratio <= 1:
            raise DomainError("recall_ratio must lie in (0, 1]")

    @classmethod
    def from_factor(cls, factor: float) -> CoverageConfig:
        if not factor >= 1:
            raise DomainError("coverage factor must be >= 1")
        return cls(1.0 / factor)

    @property
    def factor(self) -> float:
        return 1.0 / self.recall_ratio


@dataclass(frozen=True)
class WorldEstimate:
    year: int | None
    observed_in_db: int
    world_journal_count: int
    estimated_world_papers: float
    method: Method
    fit: PowerLawFit | None = None
    zones: BradfordZones | None = None
    excluded_journals: tuple[str, ...] = ()
    excluded_added_back: bool = False

    @property
    def zone_count(self) -> int | None:
        return None if self.zones is None else len(self.zones.zones)

    def to_dict(self) -> dict:
        return {
            "year": self.year,
            "observed_in_db": self.observed_in_db,
            "world_journal_count": self.world_journal_count,
            "estimated_world_papers": self.estimated_world_papers,
            "estimated_world_papers_display": round_half_away(self.estimated_world_papers),
            "method": self.method.value,
            "fit": None if self.fit is None else self.fit.to_dict(),
            "zone_count": self.zone_count,
            "zones": None if self.zones is None else self.zones.to_dict(),
            "excluded_journals": list(self.excluded_journals),
            "excluded_added_back": self.excluded_added_back,
        }


def apply_coverage(count: float, config: CoverageConfig) -> float:
    return count * config.factor


def estimate_from_coverage(observed_in_db: int, config: CoverageConfig, *, year: int | None = None,
                           world_journal_count: int = DEFAULT_WORLD_JOURNALS) -> WorldEstimate:
    return WorldEstimate(year, observed_in_db, world_journal_count,
                         apply_coverage(observed_in_db, config), Method.COVERAGE_FACTOR)


def sum_power_law(fit: PowerLawFit, last_rank: int, first_rank: int = 1) -> float:
    """Discrete sum of the fitted curve over integer ranks ``first_rank..last_rank``."""
    partials = []
    for lo in range(first_rank, last_rank + 1, _SUM_CHUNK):
        hi = min(lo + _SUM_CHUNK, last_rank + 1)
        partials.append(float(np.sum(fit.predict(np.arange(lo, hi)))))
    return math.fsum(partials)


def extrapolate_world_output(
    yields: Sequence[JournalYield],
    world_journal_count: int = DEFAULT_WORLD_JOURNALS,
    exclude_top: int = 0,
    *,
    add_back_excluded: bool = False,
    year: int | None = None,
) -> WorldEstimate:
    """Sum the fitted rank-count power law over ``world_journal_count`` journals.

    The top ``exclude_top`` journals are dropped, the rest re-ranked from 1
    and fitted. Excluded journals' observed counts are added to the total
    only with ``add_back_excluded``.
    """
    if world_journal_count < 1:
        raise DomainError("world_journal_count must be >= 1")
    if exclude_top < 0:
        raise DomainError("exclude_top must be non-negative")
    head, rest = yields[:exclude_top], yields[exclude_top:]
    if len(rest) < MIN_FIT_JOURNALS:
        raise InsufficientDataError(
            f"need at least {MIN_FIT_JOURNALS} journals beyond the top {exclude_top}, got {len(rest)}")
    fit = fit_power_law(range(1, len(rest) + 1), [y.count for y in rest])
    total = sum_power_law(fit, world_journal_count)
    observed = sum(y.count for y in rest)
    if add_back_excluded:
        extra = sum(y.count for y in head)
        total += extra
        observed += extra
    return WorldEstimate(year, observed, world_journal_count, total, Method.POWER_LAW_TAIL,
                         fit=fit, excluded_journals=tuple(y.journal for y in head),
                         excluded_added_back=add_back_excluded)


def world_curve_csv(estimate: WorldEstimate, yields: Sequence[JournalYield] = ()) -> str:
    """``rank,observed,fitted_count,cumulative`` over the whole journal population.

    ``yields`` are the journals that were fitted (after exclusion); their
    counts fill the ``observed`` column.
    """
    if estimate.fit is None:
        raise DomainError("world curve needs a power-law estimate")
    ranks = np.arange(1, estimate.world_journal_count + 1)
    fitted = estimate.fit.predict(ranks)
    cumulative = np.cumsum(fitted)
    observed = [y.count for y in yields]
    rows = (
        (int(r), observed[i] if i < len(observed) else "", repr(float(f)), repr(float(c)))
        for i, (r, f, c) in enumerate(zip(ranks, fitted, cumulative))
    )
    return csv_text(["rank", "observed", "fitted_count", "cumulative"], rows)


def zone_reconstruction(per_zone_yield: float, multiplier_k: float, world_journal_count: int) -> WorldEstimate:
    """Smallest idealized zone stack whose journals cover the world population."""
    if world_journal_count < 1:
        raise DomainError("world_journal_count must be >= 1")
    if multiplier_k < 1:
        raise DomainError("multiplier_k must be >= 1")
    zone_count = 0
    journals = 0
    while journals < world_journal_count:
        zone_count += 1
        journals += zone_journal_count(multiplier_k, zone_count)
    zones = idealized_table(per_zone_yield, multiplier_k, zone_count)
    return WorldEstimate(None, 0, world_journal_count, zone_count * per_zone_yield,
                         Method.ZONE_RECONSTRUCTION, zones=zones)


class ProjectionRow(NamedTuple):
    year: int
    projected_raw: float
    projected: int
    corrected_raw: float
    corrected: int

    def to_dict(self) -> dict:
        return self._asdict()


def projection_table(model: GrowthModel, config: CoverageConfig, first_year: int, last_year: int) -> list[ProjectionRow]:
    """Projected database counts and coverage-corrected world counts per year."""
    if last_year < first_year:
        raise DomainError("year range is empty")
    rows = []
    for year in range(first_year, last_year + 1):
        raw = project(model, year)
        corrected = apply_coverage(raw, config)
        rows.append(ProjectionRow(year, raw, round_half_away(raw), corrected, round_half_away(corrected)))
    return rows


def projection_csv(rows: Sequence[ProjectionRow]) -> str:
    return csv_text(ProjectionRow._fields,
                    ((r.year, repr(r.projected_raw), r.projected, repr(r.corrected_raw), r.corrected)
                     for r in rows))

"""Bradford's law of scattering.

Journals ranked by yield are cut into zones of near-equal article count;
under Bradford's law the number of journals per zone grows geometrically
by a multiplier ``k``. The rank-count curve is modelled as a pure power
law ``count = amplitude * rank ** exponent`` fitted by least squares in
log-log space; the same fit is used to spot over-productive core journals
and, in :mod:`informetrics.extrapolate`, to sum the tail of the journal
population.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._util import csv_text, round_half_away
from .errors import DomainError, InsufficientDataError
from .records import Corpus, JournalYield, Record, identity_key

DEFAULT_ZONE_COUNT = 3
MIN_FIT_JOURNALS = 5

__all__ = [
    "JournalYield", "Zone", "BradfordZones", "OutlierReport", "PowerLawFit",
    "bradfordize", "partition_zones", "estimate_multiplier", "idealized_table",
    "fit_power_law", "detect_core_outliers", "rank_curve_rows", "rank_curve_csv",
    "zone_journal_count",
]


@dataclass(frozen=True)
class Zone:
    zone_index: int
    journal_count: int
    article_count: int
    journals: tuple[str, ...] = ()


@dataclass(frozen=True)
class BradfordZones:
    """A zone partition plus its scattering multiplier and per-zone target yield."""

    zones: tuple[Zone, ...]
    multiplier_k: float
    target_yield_per_zone: float

    @property
    def journal_counts(self) -> tuple[int, ...]:
        return tuple(z.journal_count for z in self.zones)

    @property
    def article_counts(self) -> tuple[int, ...]:
        return tuple(z.article_count for z in self.zones)

    @property
    def total_journals(self) -> int:
        return sum(self.journal_counts)

    @property
    def total_articles(self) -> int:
        return sum(self.article_counts)

    def rows(self) -> list[dict]:
        """Zone rows with running totals, as written to the zone CSV."""
        out = []
        cum_j = cum_a = 0
        for z in self.zones:
            cum_j += z.journal_count
            cum_a += z.article_count
            out.append({
                "zone_index": z.zone_index,
                "journal_count": z.journal_count,
                "article_count": z.article_count,
                "cumulative_journals": cum_j,
                "cumulative_articles": cum_a,
            })
        return out

    def to_dict(self) -> dict:
        return {
            "zones": self.rows(),
            "multiplier_k": self.multiplier_k,
            "target_yield_per_zone": self.target_yield_per_zone,
            "total_journals": self.total_journals,
            "total_articles": self.total_articles,
        }

    def to_csv(self) -> str:
        cols = ["zone_index", "journal_count", "article_count",
                "cumulative_journals", "cumulative_articles"]
        return csv_text(cols, ([row[c] for c in cols] for row in self.rows()))


@dataclass(frozen=True)
class OutlierReport:
    journal: str
    rank: int
    observed: int
    expected: float

    @property
    def ratio(self) -> float:
        return self.observed / self.expected

    def to_dict(self) -> dict:
        return {
            "journal": self.journal,
            "rank": self.rank,
            "observed": self.observed,
            "expected": self.expected,
            "expected_display": round_half_away(self.expected),
            "ratio": self.ratio,
        }


@dataclass(frozen=True)
class PowerLawFit:
    """``count(rank) = amplitude * rank ** exponent``."""

    amplitude: float
    exponent: float
    n_points: int

    def predict(self, rank):
        return self.amplitude * np.power(np.asarray(rank, dtype=float), self.exponent)

    def to_dict(self) -> dict:
        return {"amplitude": self.amplitude, "exponent": self.exponent, "n_points": self.n_points}


def fit_power_law(ranks: Sequence[float], counts: Sequence[float]) -> PowerLawFit:
    """Ordinary least squares of log(count) on log(rank)."""
    x = np.log(np.asarray(ranks, dtype=float))
    y = np.log(np.asarray(counts, dtype=float))
    if x.size < 2 or np.ptp(x) == 0:
        raise InsufficientDataError("power-law fit needs at least two distinct ranks")
    xm, ym = x.mean(), y.mean()
    slope = float(np.dot(x - xm, y - ym) / np.dot(x - xm, x - xm))
    intercept = float(ym - slope * xm)
    return PowerLawFit(math.exp(intercept), slope, int(x.size))


def bradfordize(corpus: Corpus) -> list[Record]:
    """Reorder records so the most productive journals come first.

    Groups are ordered by yield (descending, ties by normalized name), and
    records within a group by year then id. Records without a journal go
    last, so the output is always a permutation of the input.
    """
    groups: dict[str, list[Record]] = defaultdict(list)
    orphans = []
    for record in corpus:
        if record.journal:
            groups[identity_key(record.journal)].append(record)
        else:
            orphans.append(record)

    def within(r: Record):
        return (r.year is None, r.year or 0, r.id)

    out: list[Record] = []
    for key in sorted(groups, key=lambda k: (-len(groups[k]), k)):
        out.extend(sorted(groups[key], key=within))
    out.extend(sorted(orphans, key=within))
    return out


def _check_ranked(yields: Sequence[JournalYield]) -> None:
    for prev, cur in zip(yields, yields[1:]):
        if cur.count > prev.count:
            raise DomainError("journal yields must be sorted by count, descending")


def partition_zones(yields: Sequence[JournalYield], zone_count: int = DEFAULT_ZONE_COUNT) -> BradfordZones:
    """Cut ranked journals into ``zone_count`` zones of near-equal article yield.

    Walking in rank order, journal ``j`` joins the open zone when that brings
    the zone's running count at least as close to the per-zone target as
    leaving it out; otherwise the zone closes before ``j``. A zone also
    closes early when the journals left are only just enough to give every
    remaining zone one journal. The last zone takes whatever remains.
    """
    if not yields:
        raise DomainError("cannot partition an empty journal list")
    if zone_count < 1:
        raise DomainError("zone_count must be >= 1")
    if zone_count > len(yields):
        raise DomainError(f"zone_count {zone_count} exceeds the {len(yields)} journals available")
    _check_ranked(yields)

    counts = [y.count for y in yields]
    n = len(counts)
    target = sum(counts) / zone_count

    bounds = [0]
    running = 0
    for j, c in enumerate(counts):
        if len(bounds) == zone_count:
            break
        if j > bounds[-1]:
            zones_after = zone_count - len(bounds)
            if n - j == zones_after or abs(running + c - target) > abs(running - target):
                bounds.append(j)
                running = 0
                if len(bounds) == zone_count:
                    break
        running += c
    bounds.append(n)

    zones = tuple(
        Zone(i, hi - lo, sum(counts[lo:hi]), tuple(y.journal for y in yields[lo:hi]))
        for i, (lo, hi) in enumerate(zip(bounds, bounds[1:]), start=1)
    )
    k = estimate_multiplier(zones) if zone_count >= 2 else 1.0
    return BradfordZones(zones, k, target)


def estimate_multiplier(zones: BradfordZones | Iterable[Zone] | Iterable[int]) -> float:
    """Geometric mean of successive zone journal-count ratios."""
    if isinstance(zones, BradfordZones):
        counts = list(zones.journal_counts)
    else:
        counts = [z.journal_count if isinstance(z, Zone) else int(z) for z in zones]
    if len(counts) < 2:
        raise DomainError("estimating the multiplier needs at least two zones")
    if min(counts) < 1:
        raise DomainError("zone journal counts must be positive")
    # the product of successive ratios telescopes to last / first
    return (counts[-1] / counts[0]) ** (1.0 / (len(counts) - 1))


def zone_journal_count(multiplier_k: float, i: int) -> int:
    if float(multiplier_k).is_integer():
        return int(multiplier_k) ** (i - 1)
    return round_half_away(multiplier_k ** (i - 1))


def idealized_table(per_zone_yield: float, multiplier_k: float, zone_count: int) -> BradfordZones:
    """Idealized Bradford table: zone ``i`` holds ``round(k**(i-1))`` journals."""
    if zone_count < 1:
        raise DomainError("zone_count must be >= 1")
    if multiplier_k < 1:
        raise DomainError("multiplier_k must be >= 1")
    articles = round_half_away(per_zone_yield)
    if articles < 1:
        raise DomainError("per_zone_yield must round to at least one article")
    zones = tuple(Zone(i, zone_journal_count(multiplier_k, i), articles) for i in range(1, zone_count + 1))
    return BradfordZones(zones, float(multiplier_k), float(per_zone_yield))


def detect_core_outliers(yields: Sequence[JournalYield], exclude_top: int = 1) -> list[OutlierReport]:
    """Compare each of the top ``exclude_top`` journals with the power law fitted to the rest."""
    if exclude_top < 0:
        raise DomainError("exclude_top must be non-negative")
    rest = yields[exclude_top:]
    if len(rest) < MIN_FIT_JOURNALS:
        raise InsufficientDataError(
            f"need at least {MIN_FIT_JOURNALS} journals beyond the top {exclude_top}, got {len(rest)}")
    fit = fit_power_law([y.rank for y in rest], [y.count for y in rest])
    return [
        OutlierReport(y.journal, y.rank, y.count, float(fit.predict(y.rank)))
        for y in yields[:exclude_top]
    ]


def rank_curve_rows(yields: Sequence[JournalYield]) -> list[tuple[int, str, int, int]]:
    """(rank, journal, count, cumulative_articles) rows for a Bradford curve plot."""
    rows = []
    cum = 0
    for y in yields:
        cum += y.count
        rows.append((y.rank, y.journal, y.count, cum))
    return rows


def rank_curve_csv(yields: Sequence[JournalYield]) -> str:
    return csv_text(["rank", "journal", "count", "cumulative_articles"], rank_curve_rows(yields))

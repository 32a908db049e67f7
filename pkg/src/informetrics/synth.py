"""Deterministic synthetic corpora used as oracles for the analyses.

All randomness comes from SplitMix64 (Steele, Lea & Flood 2014), spelled
out below so any implementation reproduces the same streams:

    state  = (state + 0x9E3779B97F4A7C15)            mod 2**64
    z      = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9  mod 2**64
    z      = (z ^ (z >> 27)) * 0x94D049BB133111EB         mod 2**64
    output = z ^ (z >> 31)

A uniform double in [0, 1) is ``(output >> 11) * 2**-53``. A noise level
``eps`` turns each draw ``u`` into the multiplicative factor
``1 + eps * (2u - 1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import chain, repeat
from typing import Sequence

from ._util import round_half_away
from .bradford import BradfordZones, Zone, zone_journal_count
from .errors import DegenerateSpecError, DomainError
from .growth import YearCount
from .records import Corpus, JournalYield

_MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def noise_factor(self, level: float) -> float:
        return 1.0 + level * (2.0 * self.next_float() - 1.0)


@dataclass(frozen=True)
class SynthSpec:
    seed: int
    multiplier_k: float
    zone_count: int
    per_zone_yield: int
    noise_level: float = 0.0

    def __post_init__(self) -> None:
        if not 0 <= self.seed <= _MASK64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        if not self.multiplier_k >= 1:
            raise DomainError("multiplier_k must be >= 1")
        if self.zone_count < 1:
            raise DomainError("zone_count must be >= 1")
        if self.per_zone_yield < 1:
            raise DomainError("per_zone_yield must be >= 1")
        if not 0 <= self.noise_level < 1:
            raise DomainError("noise_level must lie in [0, 1)")


def generate_bradford_corpus(spec: SynthSpec) -> tuple[Corpus, BradfordZones]:
    """A corpus whose journals follow an idealized Bradford structure.

    Zone ``i`` gets ``round(k**(i-1))`` journals sharing ``per_zone_yield``
    papers; the remainder goes one paper each to the lowest-indexed
    journals. With noise, every journal's count is scaled by its own
    seeded factor and floored at one paper. The returned zones record the
    intended assignment (and the realised counts).
    """
    sizes = [zone_journal_count(spec.multiplier_k, i) for i in range(1, spec.zone_count + 1)]
    for i, n in enumerate(sizes, start=1):
        if n > spec.per_zone_yield:
            raise DegenerateSpecError(
                f"zone {i} needs {n} journals but only {spec.per_zone_yield} papers per zone")

    rng = SplitMix64(spec.seed)
    width = len(str(max(sizes)))
    journals: list[str] = []
    zones = []
    for i, n in enumerate(sizes, start=1):
        base, extra = divmod(spec.per_zone_yield, n)
        counts = [base + 1] * extra + [base] * (n - extra)
        if spec.noise_level:
            counts = [max(1, round_half_away(c * rng.noise_factor(spec.noise_level))) for c in counts]
        names = tuple(map(f"Synthetic Journal Z{i:02d}-%0{width}d".__mod__, range(1, n + 1)))
        journals.extend(chain.from_iterable(map(repeat, names, counts)))
        zones.append(Zone(i, n, sum(counts), names))

    id_width = len(str(len(journals)))
    ids = list(map(f"syn-%0{id_width}d".__mod__, range(1, len(journals) + 1)))
    truth = BradfordZones(tuple(zones), float(spec.multiplier_k),
                          sum(z.article_count for z in zones) / spec.zone_count)
    return Corpus.from_columns(ids, journals, check_ids=False), truth


def generate_growth_series(
    seed: int,
    base_count: float,
    base_year: int,
    doubling_time: float,
    year_span: int,
    noise_level: float = 0.0,
    *,
    integer_counts: bool = True,
) -> list[YearCount]:
    """Exponential yearly counts starting at ``base_year``.

    ``integer_counts=False`` keeps the exact real-valued curve, which is what
    fit-recovery checks at 1e-6 need; rounding to whole papers costs about
    1e-3 in recovered doubling time at a base of 100.
    """
    if not base_count > 0 or not doubling_time > 0:
        raise DomainError("base_count and doubling_time must be positive")
    if year_span < 1:
        raise DomainError("year_span must be >= 1")
    if not 0 <= noise_level < 1:
        raise DomainError("noise_level must lie in [0, 1)")
    rng = SplitMix64(seed)
    out = []
    for offset in range(year_span):
        value = base_count * 2.0 ** (offset / doubling_time)
        if noise_level:
            value *= rng.noise_factor(noise_level)
        out.append(YearCount(base_year + offset, round_half_away(value) if integer_counts else value))
    return out


def power_law_yields(journal_count: int, amplitude: float, exponent: float,
                     prefix: str = "Journal") -> list[JournalYield]:
    """Journals whose counts are ``round(amplitude * rank**exponent)``, floored at 1."""
    if journal_count < 1:
        raise DomainError("journal_count must be >= 1")
    if exponent > 0:
        raise DomainError("a rank-count curve cannot increase with rank")
    width = len(str(journal_count))
    return [
        JournalYield(f"{prefix} {r:0{width}d}", max(1, round_half_away(amplitude * r ** exponent)), r)
        for r in range(1, journal_count + 1)
    ]


def extend_with_bradford_tail(core: Sequence[JournalYield], total_journals: int,
                              fit_ranks: tuple[int, int] = (2, 8)) -> list[JournalYield]:
    """Append a Bradford-shaped tail (count proportional to ``1/rank``) to ranked core journals.

    The tail's scale is the least-squares fit, at fixed slope -1 in log-log
    space, to the core journals with ranks in ``fit_ranks`` (inclusive), i.e.
    the geometric mean of ``count * rank`` over those ranks.
    """
    lo, hi = fit_ranks
    anchor = [y for y in core if lo <= y.rank <= hi]
    if not anchor:
        raise DomainError("no core journals fall inside fit_ranks")
    scale = math.exp(math.fsum(math.log(y.count * y.rank) for y in anchor) / len(anchor))
    out = list(core)
    width = len(str(total_journals))
    for r in range(len(core) + 1, total_journals + 1):
        count = max(1, round_half_away(scale / r))
        if count > out[-1].count:
            count = out[-1].count
        out.append(JournalYield(f"Tail Journal {r:0{width}d}", count, r))
    return out

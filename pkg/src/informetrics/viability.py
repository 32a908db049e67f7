"""Is there room for a new journal?

A journal needs roughly ``founding_threshold`` papers a year; a field can
sustain one when its world output is a comfortable multiple of that. The
band rule is half-open::

    ratio <  low          INSUFFICIENT
    low <= ratio < high   MARGINAL
    ratio >= high         SUFFICIENT
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum

from .errors import DomainError

DEFAULT_THRESHOLD = 100.0
DEFAULT_LOW = 2.0
DEFAULT_HIGH = 3.0


class Verdict(str, Enum):
    INSUFFICIENT = "INSUFFICIENT"
    MARGINAL = "MARGINAL"
    SUFFICIENT = "SUFFICIENT"


@dataclass(frozen=True)
class ViabilityVerdict:
    world_output_per_year: float
    founding_threshold: float
    required_multiple_low: float
    required_multiple_high: float
    ratio: float
    verdict: Verdict
    distinct_authors: int | None = None  # advisory only, never gates the verdict

    def summary(self) -> str:
        authors = ""
        if self.distinct_authors is not None:
            authors = f" The corpus lists {self.distinct_authors} distinct authors."
        text = {
            Verdict.SUFFICIENT: "there is room for a new journal",
            Verdict.MARGINAL: "a new journal is borderline",
            Verdict.INSUFFICIENT: "the field cannot yet sustain a new journal",
        }[self.verdict]
        return (
            f"Estimated world output of {self.world_output_per_year:.1f} papers/year is "
            f"{self.ratio:.2f} times the founding threshold of {self.founding_threshold:g} "
            f"papers/year (required band {self.required_multiple_low:g}-"
            f"{self.required_multiple_high:g}x): {self.verdict.value}, {text}.{authors}"
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ratio_display"] = round(self.ratio, 2)
        d["verdict"] = self.verdict.value
        d["summary"] = self.summary()
        return d


def assess(
    world_output_per_year: float,
    founding_threshold: float = DEFAULT_THRESHOLD,
    required_multiple_low: float = DEFAULT_LOW,
    required_multiple_high: float = DEFAULT_HIGH,
    distinct_authors: int | None = None,
) -> ViabilityVerdict:
    if not world_output_per_year > 0:
        raise DomainError("world output per year must be positive")
    if not founding_threshold > 0:
        raise DomainError("founding threshold must be positive")
    if not 0 < required_multiple_low <= required_multiple_high:
        raise DomainError("required multiples must satisfy 0 < low <= high")
    ratio = world_output_per_year / founding_threshold
    if ratio < required_multiple_low:
        verdict = Verdict.INSUFFICIENT
    elif ratio < required_multiple_high:
        verdict = Verdict.MARGINAL
    else:
        verdict = Verdict.SUFFICIENT
    return ViabilityVerdict(world_output_per_year, founding_threshold, required_multiple_low,
                            required_multiple_high, ratio, verdict, distinct_authors)

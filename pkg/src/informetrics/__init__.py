"""Informetric analysis of bibliographic exports: Bradford scattering,
literature growth, world-output extrapolation and new-journal viability."""

__version__ = "0.1.0"

from .errors import (DegenerateSpecError, DomainError, InformetricsError, InputEncodingError,
                     InsufficientDataError, NoGrowthError, RecordFormatError, UsageError)
from .records import (Corpus, JournalYield, QueryPattern, Record, RecordFormat, TermCountRow,
                      author_productivity, journal_yields, language_distribution, parse_records,
                      tag_query_terms)
from .bradford import (BradfordZones, OutlierReport, Zone, bradfordize, detect_core_outliers,
                       estimate_multiplier, fit_power_law, idealized_table, partition_zones)
from .growth import (GrowthModel, YearCount, doubling_time_from_rate, fit_exponential, project,
                     rate_from_doubling_time)
from .extrapolate import (CoverageConfig, Method, WorldEstimate, apply_coverage,
                          extrapolate_world_output, projection_table, zone_reconstruction)
from .viability import Verdict, ViabilityVerdict, assess
from .synth import SynthSpec, generate_bradford_corpus, generate_growth_series

__all__ = [
    "DegenerateSpecError", "DomainError", "InformetricsError", "InputEncodingError",
    "InsufficientDataError", "NoGrowthError", "RecordFormatError", "UsageError",
    "Corpus", "JournalYield", "QueryPattern", "Record", "RecordFormat", "TermCountRow",
    "author_productivity", "journal_yields", "language_distribution", "parse_records",
    "tag_query_terms",
    "BradfordZones", "OutlierReport", "Zone", "bradfordize", "detect_core_outliers",
    "estimate_multiplier", "fit_power_law", "idealized_table", "partition_zones",
    "GrowthModel", "YearCount", "doubling_time_from_rate", "fit_exponential", "project",
    "rate_from_doubling_time",
    "CoverageConfig", "Method", "WorldEstimate", "apply_coverage", "extrapolate_world_output",
    "projection_table", "zone_reconstruction",
    "Verdict", "ViabilityVerdict", "assess",
    "SynthSpec", "generate_bradford_corpus", "generate_growth_series",
]

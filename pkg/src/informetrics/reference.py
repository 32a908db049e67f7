"""Published figures for the LISA informetrics set (1976-2004, 3,889 records).

The core-journal counts ship as a fixture. Everything else here requires the
proprietary LISA export and is kept as a target for ``informetrics report``
when that export is supplied; none of it is asserted by the test suite.
"""
from __future__ import annotations

import csv
import io
from importlib import resources

from .records import JournalYield

TOTAL_RECORDS = 3889

# pattern -> (records matched, records indexed with the matching LISA descriptor)
TERM_COUNTS = {
    "bibliomet*": (2851, 2414),
    "scientomet*": (1631, 629),
    "informet*": (292, 90),
    "webomet*": (18, 11),
    "infomet*": (15, None),
    "cybermet*": (7, None),
}

TOP_AUTHORS = {
    "Egghe, L": 64, "Glanzel, W": 61, "Rousseau, R": 54, "Schubert, A": 45,
    "Gupta, B.M": 39, "van, Raan, A.F.J": 38, "Cronin, B": 26, "Garg, K.C": 26,
    "Gomez, I": 24, "Small, H": 23, "Vinkler, P": 23, "Bonitz, M": 21, "Braun, T": 21,
}

LANGUAGE_SHARES = {
    "English": 0.816, "Russian": 0.045, "Spanish": 0.033, "Portuguese": 0.016,
    "German": 0.015, "Chinese": 0.014, "Hungarian": 0.010, "Japanese": 0.010,
}

# world output for 2002 from the rank-count extrapolation, Scientometrics excluded
WORLD_PAPERS_2002 = 430


def core_journals() -> list[JournalYield]:
    """The eight core journals of the LISA informetrics set, ranked."""
    text = resources.files("informetrics").joinpath("data/lisa_core_journals.csv").read_text("utf-8")
    rows = list(csv.DictReader(io.StringIO(text)))
    return [JournalYield(row["journal"], int(row["count"]), rank) for rank, row in enumerate(rows, start=1)]

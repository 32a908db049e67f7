"""Bibliographic record ingestion and descriptive statistics.

Three export formats are understood:

* ``DELIMITED``   -- RFC 4180 CSV with a mandatory header row. ``id`` and
  ``journal`` columns are required; ``title``, ``authors``, ``year``,
  ``language`` and ``descriptors`` are optional. Multi-valued cells
  (authors, descriptors) are packed with ``;``.
* ``RIS_SUBSET``  -- ``XX  - value`` lines. Only TY, AU, TI/T1, JO/JF, PY,
  LA, KW and ER are read; everything else is ignored. A record starts at
  ``TY`` and must be closed by ``ER``.
* ``JSON_LINES``  -- one object per line with keys ``id``, ``title``,
  ``authors``, ``journal``, ``year``, ``language``, ``descriptors``.

A malformed individual record never aborts a parse: it is dropped and
counted in :attr:`Corpus.skipped`.
"""
from __future__ import annotations

import csv
import io
import json
import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from operator import itemgetter
from typing import IO, Any, Iterable, Iterator, Mapping, NamedTuple, Sequence, overload

from .errors import DomainError, InputEncodingError, RecordFormatError, UsageError

YEAR_MIN = 1800
YEAR_MAX = 2100


def normalize_text(value: str) -> str:
    """Trim and collapse internal whitespace runs to a single space."""
    return " ".join(value.split())


def identity_key(value: str) -> str:
    """Case-folded normalized form used to decide whether two names are the same."""
    return normalize_text(value).casefold()


@dataclass(frozen=True)
class Record:
    """One bibliographic item.

    Text fields are normalized on construction. ``authors`` keeps its order,
    ``descriptors`` is an unordered set. ``year`` may be absent.
    """

    id: str
    title: str = ""
    authors: tuple[str, ...] = ()
    journal: str = ""
    year: int | None = None
    language: str | None = None
    descriptors: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if not isinstance(self.id, str) or not self.id.strip():
            raise ValueError("record id must be a non-empty string")
        if self.year is not None:
            if isinstance(self.year, bool) or not isinstance(self.year, int):
                raise ValueError(f"year must be an integer, got {self.year!r}")
            if not YEAR_MIN <= self.year <= YEAR_MAX:
                raise ValueError(f"year {self.year} outside [{YEAR_MIN}, {YEAR_MAX}]")
        authors = tuple(normalize_text(a) for a in self.authors)
        if any(not a for a in authors):
            raise ValueError("author names must be non-empty")
        object.__setattr__(self, "id", self.id.strip())
        object.__setattr__(self, "title", normalize_text(self.title or ""))
        object.__setattr__(self, "authors", authors)
        object.__setattr__(self, "journal", normalize_text(self.journal or ""))
        language = normalize_text(self.language) if self.language else ""
        object.__setattr__(self, "language", language or None)
        descriptors = frozenset(normalize_text(d) for d in self.descriptors)
        object.__setattr__(self, "descriptors", descriptors - {""})


class Corpus(Sequence[Record]):
    """Immutable, column-backed sequence of records.

    Records are stored column-wise so that corpora of a million synthetic
    papers stay cheap to build and aggregate; :class:`Record` objects are
    materialized on access. ``skipped`` is the number of malformed input
    entries dropped while parsing.
    """

    __slots__ = ("ids", "titles", "authors", "journals", "years", "languages",
                 "descriptors", "skipped")

    def __init__(self, records: Iterable[Record] = (), skipped: int = 0):
        records = list(records)
        self._set_columns(
            ids=tuple(r.id for r in records),
            titles=tuple(r.title for r in records),
            authors=tuple(r.authors for r in records),
            journals=tuple(r.journal for r in records),
            years=tuple(r.year for r in records),
            languages=tuple(r.language for r in records),
            descriptors=tuple(r.descriptors for r in records),
            skipped=skipped,
        )

    @classmethod
    def from_columns(
        cls,
        ids: Sequence[str],
        journals: Sequence[str],
        *,
        titles: Sequence[str] | None = None,
        authors: Sequence[tuple[str, ...]] | None = None,
        years: Sequence[int | None] | None = None,
        languages: Sequence[str | None] | None = None,
        descriptors: Sequence[frozenset[str]] | None = None,
        skipped: int = 0,
        check_ids: bool = True,
    ) -> Corpus:
        """Build a corpus from already-normalized columns (no per-record validation).

        ``check_ids=False`` skips the uniqueness check for callers that
        generate ids known to be distinct.
        """
        n = len(ids)
        self = cls.__new__(cls)
        self._set_columns(
            ids=tuple(ids),
            titles=tuple(titles) if titles is not None else ("",) * n,
            authors=tuple(authors) if authors is not None else ((),) * n,
            journals=tuple(journals),
            years=tuple(years) if years is not None else (None,) * n,
            languages=tuple(languages) if languages is not None else (None,) * n,
            descriptors=tuple(descriptors) if descriptors is not None else (frozenset(),) * n,
            skipped=skipped,
            check_ids=check_ids,
        )
        return self

    def _set_columns(self, *, skipped: int, check_ids: bool = True, **columns: tuple) -> None:
        lengths = {len(col) for col in columns.values()}
        if len(lengths) > 1:
            raise ValueError("corpus columns differ in length")
        if check_ids and len(set(columns["ids"])) != len(columns["ids"]):
            raise ValueError("record ids must be unique within a corpus")
        for name, col in columns.items():
            object.__setattr__(self, name, col)
        object.__setattr__(self, "skipped", skipped)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Corpus is immutable")

    def __len__(self) -> int:
        return len(self.ids)

    def _record(self, i: int) -> Record:
        return Record(self.ids[i], self.titles[i], self.authors[i], self.journals[i],
                      self.years[i], self.languages[i], self.descriptors[i])

    @overload
    def __getitem__(self, index: int) -> Record: ...
    @overload
    def __getitem__(self, index: slice) -> Corpus: ...

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Corpus(self._record(i) for i in range(*index.indices(len(self))))
        if index < 0:
            index += len(self)
        if not 0 <= index < len(self):
            raise IndexError("corpus index out of range")
        return self._record(index)

    def __iter__(self) -> Iterator[Record]:
        return (self._record(i) for i in range(len(self)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return all(getattr(self, c) == getattr(other, c) for c in self.__slots__)

    def __hash__(self) -> int:
        return hash(self.ids)

    def __repr__(self) -> str:
        return f"Corpus({len(self)} records, skipped={self.skipped})"

    @property
    def yearless(self) -> int:
        """Number of records without a publication year."""
        return sum(1 for y in self.years if y is None)

    def filter(self, predicate) -> Corpus:
        return Corpus(r for r in self if predicate(r))


# ---------------------------------------------------------------------------
# parsing


class RecordFormat(str, Enum):
    DELIMITED = "delimited"
    RIS_SUBSET = "ris"
    JSON_LINES = "jsonl"

    @classmethod
    def coerce(cls, tag: RecordFormat | str) -> RecordFormat:
        if isinstance(tag, cls):
            return tag
        if isinstance(tag, str):
            key = tag.strip()
            for member in cls:
                if key.lower() in (member.value, member.name.lower()):
                    return member
            aliases = {"csv": cls.DELIMITED, "json_lines": cls.JSON_LINES, "ris_subset": cls.RIS_SUBSET}
            if key.lower() in aliases:
                return aliases[key.lower()]
        raise UsageError(f"unknown record format {tag!r}; expected one of "
                         + ", ".join(m.value for m in cls))


def _decode(data: bytes | str | IO) -> str:
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, str):
        return data
    try:
        return bytes(data).decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise InputEncodingError(f"input is not valid UTF-8: {exc}") from exc


def _split_multi(cell: str) -> list[str]:
    return [part for part in (normalize_text(p) for p in cell.split(";")) if part]


def _parse_year(value: Any) -> int | None:
    if value is None:
        return None
    text = str(value).strip()
    if not text:
        return None
    return int(text)


_MALFORMED = object()

_DELIMITED_FIELDS = ("id", "title", "authors", "journal", "year", "language", "descriptors")


def _delimited_entries(text: str) -> Iterator[dict | object]:
    reader = csv.reader(io.StringIO(text, newline=""))
    header = next(reader, None)
    if header is None:
        return
    header = [h.strip().lower() for h in header]
    missing = {"id", "journal"} - set(header)
    if missing:
        raise RecordFormatError(f"delimited header lacks required column(s): {', '.join(sorted(missing))}")
    for row in reader:
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            yield _MALFORMED
            continue
        cells = dict(zip(header, row))
        try:
            yield {
                "id": cells["id"],
                "title": cells.get("title", ""),
                "authors": _split_multi(cells.get("authors", "")),
                "journal": cells["journal"],
                "year": _parse_year(cells.get("year")),
                "language": cells.get("language") or None,
                "descriptors": _split_multi(cells.get("descriptors", "")),
            }
        except ValueError:
            yield _MALFORMED


_RIS_LINE = re.compile(r"^([A-Z][A-Z0-9])\s{1,2}-(?:\s(.*))?$")
_RIS_YEAR = re.compile(r"^\s*(\d{4})")


def _ris_entries(text: str) -> Iterator[dict | object]:
    current: dict | None = None
    n = 0
    for line in text.splitlines():
        m = _RIS_LINE.match(line.rstrip())
        if not m:
            continue
        tag, value = m.group(1), (m.group(2) or "").strip()
        if tag == "TY":
            if current is not None:
                yield _MALFORMED  # previous record never closed
            n += 1
            current = {"id": f"ris-{n}", "title": "", "authors": [], "journal": "",
                       "year": None, "language": None, "descriptors": [], "bad": False}
            continue
        if current is None:
            continue
        if tag == "ER":
            bad = current.pop("bad")
            yield _MALFORMED if bad else current
            current = None
        elif tag == "AU":
            if value:
                current["authors"].append(value)
        elif tag in ("TI", "T1"):
            current["title"] = current["title"] or value
        elif tag in ("JO", "JF"):
            current["journal"] = current["journal"] or value
        elif tag == "PY":
            ym = _RIS_YEAR.match(value)
            if ym:
                current["year"] = int(ym.group(1))
            elif value:
                current["bad"] = True
        elif tag == "LA":
            current["language"] = current["language"] or value or None
        elif tag == "KW":
            if value:
                current["descriptors"].append(value)
    if current is not None:
        yield _MALFORMED


def _str_or_empty(obj: dict, key: str) -> str:
    value = obj.get(key)
    if value is None:
        return ""
    if not isinstance(value, str):
        raise ValueError(f"{key} must be a string")
    return value


def _str_list(obj: dict, key: str) -> list[str]:
    value = obj.get(key)
    if value is None:
        return []
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ValueError(f"{key} must be an array of strings")
    return [v for v in value if v.strip()]


def _jsonl_entries(text: str) -> Iterator[dict | object]:
    for line in text.splitlines():
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            if not isinstance(obj, dict):
                raise ValueError("not an object")
            year = obj.get("year")
            if year is not None and (isinstance(year, bool) or not isinstance(year, int)):
                raise ValueError("year must be an integer or null")
            rec_id = obj.get("id")
            if isinstance(rec_id, int) and not isinstance(rec_id, bool):
                rec_id = str(rec_id)
            yield {
                "id": rec_id,
                "title": _str_or_empty(obj, "title"),
                "authors": _str_list(obj, "authors"),
                "journal": _str_or_empty(obj, "journal"),
                "year": year,
                "language": _str_or_empty(obj, "language") or None,
                "descriptors": _str_list(obj, "descriptors"),
            }
        except ValueError:
            yield _MALFORMED


_PARSERS = {
    RecordFormat.DELIMITED: _delimited_entries,
    RecordFormat.RIS_SUBSET: _ris_entries,
    RecordFormat.JSON_LINES: _jsonl_entries,
}


def parse_records(data: bytes | str | IO, fmt: RecordFormat | str) -> Corpus:
    """Parse an export into a :class:`Corpus`, skipping (and counting) malformed entries.

    Raises :class:`InputEncodingError` for non-UTF-8 input and
    :class:`UsageError` for an unknown ``fmt``.
    """
    fmt = RecordFormat.coerce(fmt)
    text = _decode(data)
    records: list[Record] = []
    seen: set[str] = set()
    skipped = 0
    for entry in _PARSERS[fmt](text):
        if entry is _MALFORMED:
            skipped += 1
            continue
        try:
            record = Record(
                id=entry["id"],
                title=entry["title"],
                authors=tuple(entry["authors"]),
                journal=entry["journal"],
                year=entry["year"],
                language=entry["language"],
                descriptors=frozenset(entry["descriptors"]),
            )
        except (TypeError, ValueError, AttributeError):
            skipped += 1
            continue
        if record.id in seen:
            skipped += 1
            continue
        seen.add(record.id)
        records.append(record)
    return Corpus(records, skipped=skipped)


def record_to_dict(record: Record) -> dict:
    return {
        "id": record.id,
        "title": record.title,
        "authors": list(record.authors),
        "journal": record.journal,
        "year": record.year,
        "language": record.language,
        "descriptors": sorted(record.descriptors),
    }


def iter_jsonl(corpus: Iterable[Record]) -> Iterator[str]:
    """Yield one JSON_LINES line (without newline) per record."""
    for record in corpus:
        yield json.dumps(record_to_dict(record), ensure_ascii=False)


def write_jsonl(corpus: Iterable[Record], stream: IO[str]) -> None:
    for line in iter_jsonl(corpus):
        stream.write(line)
        stream.write("\n")


def dumps_jsonl(corpus: Iterable[Record]) -> str:
    buf = io.StringIO()
    write_jsonl(corpus, buf)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# query-term tagging


_TOKEN = re.compile(r"[^\W_]+")


@dataclass(frozen=True)
class QueryPattern:
    """A search term; ``wildcard`` means prefix match (``bibliomet*``)."""

    stem: str
    wildcard: bool = True

    def __post_init__(self) -> None:
        stem = self.stem.casefold()
        if not stem or any(ch.isspace() for ch in stem):
            raise ValueError(f"invalid query stem {self.stem!r}")
        object.__setattr__(self, "stem", stem)

    @classmethod
    def parse(cls, text: str) -> QueryPattern:
        text = text.strip()
        if text.endswith("*"):
            return cls(text[:-1], True)
        return cls(text, False)

    def matches(self, token: str) -> bool:
        return token.startswith(self.stem) if self.wildcard else token == self.stem

    def __str__(self) -> str:
        return self.stem + ("*" if self.wildcard else "")


@dataclass(frozen=True)
class TermCountRow:
    pattern: QueryPattern
    total_records: int
    descriptor_indexed: int | None = None


# Query used to build the LISA informetrics set, and the matching LISA descriptors.
INFORMETRICS_QUERY = tuple(QueryPattern.parse(p) for p in (
    "bibliomet*", "scientomet*", "informet*", "webomet*", "infomet*", "cybermet*"))
INFORMETRICS_DESCRIPTORS = {
    "bibliomet": "Bibliometrics",
    "scientomet": "Scientometrics",
    "informet": "Informetrics",
    "webomet": "Webometrics",
}


def _tokens(title: str, descriptors: Iterable[str]) -> set[str]:
    tokens = set(_TOKEN.findall(title.casefold()))
    for d in descriptors:
        tokens.update(_TOKEN.findall(d.casefold()))
    return tokens


def tag_query_terms(
    corpus: Corpus,
    patterns: Sequence[QueryPattern | str],
    descriptor_map: Mapping[str, str] | None = None,
) -> list[TermCountRow]:
    """Count records hit by each pattern in their title or descriptors.

    A record counts once for every pattern it matches. When ``descriptor_map``
    (stem -> canonical descriptor) is given, ``descriptor_indexed`` counts the
    records carrying that descriptor; patterns without an entry get ``None``.
    """
    if not patterns:
        raise DomainError("at least one query pattern is required")
    patterns = [p if isinstance(p, QueryPattern) else QueryPattern.parse(p) for p in patterns]
    totals = Counter()
    indexed = Counter()
    canon = {}
    if descriptor_map is not None:
        canon = {k.rstrip("*").casefold(): identity_key(v) for k, v in descriptor_map.items()}
    for title, descriptors in zip(corpus.titles, corpus.descriptors):
        tokens = _tokens(title, descriptors)
        keys = {identity_key(d) for d in descriptors}
        for p in patterns:
            if any(p.matches(t) for t in tokens):
                totals[p] += 1
            if p.stem in canon and canon[p.stem] in keys:
                indexed[p] += 1
    return [
        TermCountRow(p, totals[p], indexed[p] if p.stem in canon else None)
        for p in patterns
    ]


# ---------------------------------------------------------------------------
# ranking statistics


class _JournalYieldFields(NamedTuple):
    journal: str
    count: int
    rank: int


class JournalYield(_JournalYieldFields):
    """A journal with its paper count and 1-based productivity rank."""

    __slots__ = ()

    def __new__(cls, journal: str, count: int, rank: int):
        if count < 1:
            raise ValueError("journal count must be >= 1")
        if rank < 1:
            raise ValueError("journal rank must be >= 1")
        return super().__new__(cls, journal, count, rank)


class AuthorCount(NamedTuple):
    author: str
    count: int


class LanguageShare(NamedTuple):
    language: str
    proportion: float


def _fold_counts(names: Iterable[str | None]) -> list[tuple[str, str, int]]:
    """Count names by identity key. Returns (key, first-seen display form, count).

    Corpus columns are already normalized, so the key is a plain casefold.
    """
    raw = Counter(names)  # keeps first-seen order
    raw.pop("", None)
    raw.pop(None, None)
    keys = list(map(str.casefold, raw))
    if len(set(keys)) == len(keys):  # nothing to merge
        return list(zip(keys, raw, raw.values()))
    display: dict[str, str] = {}
    folded: dict[str, int] = {}
    for name, n in raw.items():
        key = name.casefold()
        if key in folded:
            folded[key] += n
        else:
            display[key] = name
            folded[key] = n
    return [(key, display[key], n) for key, n in folded.items()]


def journal_yields(corpus: Corpus) -> list[JournalYield]:
    """Rank journals by paper count (descending), ties by normalized name."""
    rows = _fold_counts(corpus.journals)
    rows.sort(key=itemgetter(0))
    rows.sort(key=itemgetter(2), reverse=True)  # stable, so name order survives within a count
    # counts from a Counter are >= 1 and ranks start at 1, so skip re-validation
    return list(map(JournalYield._make, zip(map(itemgetter(1), rows), map(itemgetter(2), rows),
                                            range(1, len(rows) + 1))))


def author_productivity(corpus: Corpus) -> list[AuthorCount]:
    counts = Counter()
    for authors in corpus.authors:
        # an author listed twice on one record still gets one paper
        counts.update(set(authors))
    return [AuthorCount(a, n) for a, n in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))]


def language_distribution(corpus: Corpus) -> list[LanguageShare]:
    if len(corpus) == 0:
        raise DomainError("language distribution of an empty corpus is undefined")
    rows = _fold_counts(corpus.languages)
    total = sum(n for _, _, n in rows)
    if total == 0:
        raise DomainError("no record carries a language tag")
    rows.sort(key=lambda row: (-row[2], row[0]))
    return [LanguageShare(name, n / total) for _, name, n in rows]

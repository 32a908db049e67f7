import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from informetrics.errors import DomainError, InputEncodingError, RecordFormatError, UsageError
from informetrics.records import (INFORMETRICS_DESCRIPTORS, INFORMETRICS_QUERY, Corpus, JournalYield,
                                  QueryPattern, Record, RecordFormat, author_productivity,
                                  dumps_jsonl, journal_yields, language_distribution, parse_records,
                                  tag_query_terms)


def jsonl(*objs) -> bytes:
    return "".join(json.dumps(o) + "\n" for o in objs).encode()


def rec(id, journal="", **kw) -> Record:
    return Record(id=id, journal=journal, **kw)


class TestParseDelimited:
    def test_header_only_is_empty(self):
        corpus = parse_records(b"id,title,journal,year\n", "delimited")
        assert len(corpus) == 0
        assert corpus.skipped == 0

    def test_totally_empty_input(self):
        assert len(parse_records(b"", RecordFormat.DELIMITED)) == 0

    def test_ten_record_fixture(self, data_dir):
        corpus = parse_records((data_dir / "ten_records.csv").read_bytes(), RecordFormat.DELIMITED)
        assert len(corpus) == 10
        assert corpus.skipped == 0
        assert len({r.journal.casefold() for r in corpus}) == 2
        yearless = [r for r in corpus if r.year is None]
        assert [r.id for r in yearless] == ["r05"]
        assert corpus.yearless == 1
        r01 = corpus[0]
        assert r01.authors == ("Egghe, L", "Rousseau, R")
        assert r01.descriptors == {"Bibliometrics"}
        assert corpus[3].descriptors == {"Informetrics", "Bibliometrics"}
        # internal whitespace collapsed
        assert corpus[4].journal == "Journal of Information Science"

    def test_malformed_rows_are_counted(self):
        text = (
            "id,journal,year\n"
            "a,J,2000\n"
            ",J,2000\n"        # empty id
            "c,J,20x0\n"       # bad year
            "d,J,1700\n"       # out of range
            "a,J,2001\n"       # duplicate id
            "e,J\n"            # short row
            "f,J,2002\n"
        )
        corpus = parse_records(text.encode(), "delimited")
        assert [r.id for r in corpus] == ["a", "f"]
        assert corpus.skipped == 5

    def test_missing_required_column(self):
        with pytest.raises(RecordFormatError):
            parse_records(b"id,title\n1,x\n", "delimited")

    def test_quoted_fields(self):
        text = 'id,journal,title\n1,"Journal, The","A ""quoted"" title"\n'
        (r,) = parse_records(text.encode(), "delimited")
        assert r.journal == "Journal, The"
        assert r.title == 'A "quoted" title'


class TestParseJsonLines:
    def test_identity(self):
        obj = {"id": "x1", "title": "Bradford zones", "authors": ["Egghe, L", "Rousseau, R"],
               "journal": "Scientometrics", "year": 2001, "language": "English",
               "descriptors": ["Bibliometrics", "Informetrics"]}
        corpus = parse_records(jsonl(obj), "jsonl")
        assert len(corpus) == 1
        r = corpus[0]
        assert (r.id, r.title, r.authors, r.journal, r.year, r.language) == (
            "x1", "Bradford zones", ("Egghe, L", "Rousseau, R"), "Scientometrics", 2001, "English")
        assert r.descriptors == {"Bibliometrics", "Informetrics"}

    def test_bad_lines_skipped(self):
        data = jsonl({"id": "a", "journal": "J"}, [1, 2], {"id": "b", "year": "2001"},
                     {"id": "c", "authors": "Egghe"}, {"journal": "no id"}) + b"{not json\n\n"
        corpus = parse_records(data, "jsonl")
        assert [r.id for r in corpus] == ["a"]
        assert corpus.skipped == 5

    def test_null_year(self):
        (r,) = parse_records(jsonl({"id": "a", "journal": "J", "year": None}), "jsonl")
        assert r.year is None


class TestParseRis:
    def test_subset(self, data_dir):
        corpus = parse_records((data_dir / "sample.ris").read_bytes(), RecordFormat.RIS_SUBSET)
        assert len(corpus) == 2
        # bad PY and the unterminated final record
        assert corpus.skipped == 2
        first, second = corpus
        assert first.authors == ("Egghe, L", "Rousseau, R")
        assert first.journal == "Information Processing and Management"
        assert first.year == 2000
        assert first.descriptors == {"Informetrics", "Bibliometrics"}
        assert second.title == "Bibliometrics as a research field"
        assert second.journal == "Scientometrics"
        assert second.language == "English"


class TestParseErrors:
    def test_not_utf8(self):
        with pytest.raises(InputEncodingError):
            parse_records(b"id,journal\n1,\xff\xfe\n", "delimited")

    def test_unknown_format(self):
        with pytest.raises(UsageError):
            parse_records(b"", "bibtex")

    def test_format_aliases(self):
        assert RecordFormat.coerce("CSV") is RecordFormat.DELIMITED
        assert RecordFormat.coerce("RIS_SUBSET") is RecordFormat.RIS_SUBSET


class TestRecord:
    def test_invariants(self):
        with pytest.raises(ValueError):
            Record(id="")
        with pytest.raises(ValueError):
            Record(id="a", year=2101)
        with pytest.raises(ValueError):
            Record(id="a", authors=("Egghe, L", "  "))
        assert Record(id="a", year=1800).year == 1800

    def test_corpus_rejects_duplicate_ids(self):
        with pytest.raises(ValueError):
            Corpus([rec("a"), rec("a")])

    def test_corpus_is_immutable(self):
        corpus = Corpus([rec("a")])
        with pytest.raises(AttributeError):
            corpus.skipped = 3


class TestQueryTerms:
    def test_direct_prefix_hit(self):
        corpus = Corpus([rec("1", title="A Bibliometric Study")])
        (row,) = tag_query_terms(corpus, [QueryPattern.parse("bibliomet*")])
        assert row.total_records == 1
        assert row.descriptor_indexed is None

    def test_twenty_title_fixture(self, data_dir):
        corpus = parse_records((data_dir / "twenty_titles.jsonl").read_bytes(), "jsonl")
        assert len(corpus) == 20
        (row,) = tag_query_terms(corpus, ["scientomet*"])
        assert row.total_records == 7

    def test_no_match_is_zero(self):
        corpus = Corpus([rec("1", title="Cataloguing rules")])
        (row,) = tag_query_terms(corpus, ["webomet*"])
        assert row.total_records == 0

    def test_bare_term_is_whole_token(self):
        corpus = Corpus([rec("1", title="Bibliometrics"), rec("2", title="bibliometric laws")])
        (row,) = tag_query_terms(corpus, ["bibliometric"])
        assert row.total_records == 1

    def test_empty_patterns(self):
        with pytest.raises(DomainError):
            tag_query_terms(Corpus(), [])

    def test_lisa_shape_on_fixture(self, data_dir):
        corpus = parse_records((data_dir / "ten_records.csv").read_bytes(), "delimited")
        rows = {str(r.pattern): r for r in tag_query_terms(corpus, INFORMETRICS_QUERY, INFORMETRICS_DESCRIPTORS)}
        # hand counts over titles + descriptors of the ten records
        assert (rows["bibliomet*"].total_records, rows["bibliomet*"].descriptor_indexed) == (4, 4)
        assert (rows["scientomet*"].total_records, rows["scientomet*"].descriptor_indexed) == (2, 2)
        assert (rows["informet*"].total_records, rows["informet*"].descriptor_indexed) == (2, 2)
        assert (rows["webomet*"].total_records, rows["webomet*"].descriptor_indexed) == (1, 1)
        assert (rows["infomet*"].total_records, rows["infomet*"].descriptor_indexed) == (0, None)
        assert rows["cybermet*"].descriptor_indexed is None
        # r04 matches both bibliomet* and informet*: 8 distinct records, 9 hits
        assert sum(r.total_records for r in rows.values()) == 9

    def test_pattern_validation(self):
        with pytest.raises(ValueError):
            QueryPattern("two words")
        assert str(QueryPattern.parse("Informet*")) == "informet*"


def brute_force_ranking(journals):
    distinct = sorted(set(journals))
    counted = [(j, journals.count(j)) for j in distinct]
    best = []
    while counted:
        top = counted[0]
        for cand in counted[1:]:
            if cand[1] > top[1] or (cand[1] == top[1] and cand[0] < top[0]):
                top = cand
        best.append(top)
        counted.remove(top)
    return best


class TestJournalYields:
    def test_empty(self):
        assert journal_yields(Corpus()) == []

    def test_ties_by_name(self):
        journals = ["B", "A", "C", "A", "B"]
        corpus = Corpus(rec(str(i), j) for i, j in enumerate(journals))
        yields = journal_yields(corpus)
        assert [(y.journal, y.count, y.rank) for y in yields] == [("A", 2, 1), ("B", 2, 2), ("C", 1, 3)]
        assert [(y.journal, y.count) for y in yields] == brute_force_ranking(journals)

    def test_case_folded_identity_first_display(self, data_dir):
        corpus = parse_records((data_dir / "ten_records.csv").read_bytes(), "delimited")
        yields = journal_yields(corpus)
        assert [(y.journal, y.count) for y in yields] == [
            ("Scientometrics", 6), ("Journal of Information Science", 4)]

    def test_blank_journal_ignored(self):
        corpus = Corpus([rec("1", "J"), rec("2", "")])
        assert [y.count for y in journal_yields(corpus)] == [1]

    def test_journal_yield_invariants(self):
        with pytest.raises(ValueError):
            JournalYield("J", 0, 1)


class TestAuthors:
    def test_three_records(self):
        corpus = Corpus(rec(str(i), authors=("Egghe, L",)) for i in range(3))
        assert author_productivity(corpus)[0] == ("Egghe, L", 3)

    def test_ten_record_fixture(self, data_dir):
        corpus = parse_records((data_dir / "ten_records.csv").read_bytes(), "delimited")
        ranking = author_productivity(corpus)
        assert ranking[:3] == [("Egghe, L", 3), ("Rousseau, R", 2), ("Schubert, A", 2)]
        assert sum(a.count for a in ranking) == 14
        assert ranking[3] == ("Braun, T", 1)

    def test_six_hand_assigned(self):
        assigned = [("A", "B"), ("B",), ("C", "B"), ("A",), ("D",), ("C",)]
        corpus = Corpus(rec(str(i), authors=a) for i, a in enumerate(assigned))
        assert author_productivity(corpus) == [("B", 3), ("A", 2), ("C", 2), ("D", 1)]


class TestLanguages:
    def test_all_english(self):
        corpus = Corpus(rec(str(i), language="English") for i in range(4))
        assert language_distribution(corpus) == [("English", 1.0)]

    def test_ratio(self):
        langs = ["English"] * 8 + ["Russian"] * 2
        corpus = Corpus(rec(str(i), language=l) for i, l in enumerate(langs))
        assert language_distribution(corpus) == [("English", 0.8), ("Russian", 0.2)]

    def test_untagged_records_ignored(self, data_dir):
        corpus = parse_records((data_dir / "ten_records.csv").read_bytes(), "delimited")
        shares = language_distribution(corpus)
        assert shares[0] == ("English", 0.8)
        assert {s.language for s in shares[1:]} == {"German", "Spanish"}

    def test_empty_corpus(self):
        with pytest.raises(DomainError):
            language_distribution(Corpus())


# ---------------------------------------------------------------------------
# properties

names = st.sampled_from(["Scientometrics", "scientometrics", "JASIS", "J Doc", " J  Doc", "IPM", ""])
languages = st.sampled_from(["English", "Russian", "german", "German", None])
author_names = st.sampled_from(["Egghe, L", "Glanzel, W", "Rousseau, R", "Small, H"])


record_fields = st.tuples(
    st.text(max_size=20),
    st.lists(author_names, max_size=3),
    names,
    st.one_of(st.none(), st.integers(1800, 2100)),
    languages,
    st.lists(st.sampled_from(["Bibliometrics", "Webometrics"]), max_size=2),
)


def corpora(max_size=40):
    def build(rows):
        return Corpus(
            Record(id=f"id{i}", title=t, authors=tuple(a), journal=j, year=y, language=l,
                   descriptors=frozenset(d))
            for i, (t, a, j, y, l, d) in enumerate(rows)
        )
    return st.lists(record_fields, max_size=max_size).map(build)


@given(corpora())
def test_yield_sum_matches_journal_records(corpus):
    assert sum(y.count for y in journal_yields(corpus)) == sum(1 for r in corpus if r.journal)


@given(corpora(), st.randoms(use_true_random=False))
def test_yields_permutation_invariant(corpus, rnd):
    shuffled = list(corpus)
    rnd.shuffle(shuffled)
    mine = journal_yields(corpus)
    theirs = journal_yields(Corpus(shuffled))
    # display form is first-seen, so compare identities and counts
    assert [(y.journal.casefold(), y.count, y.rank) for y in mine] == \
           [(y.journal.casefold(), y.count, y.rank) for y in theirs]


@given(corpora())
def test_yields_ranks_contiguous(corpus):
    yields = journal_yields(corpus)
    assert [y.rank for y in yields] == list(range(1, len(yields) + 1))
    assert all(a.count >= b.count for a, b in zip(yields, yields[1:]))


@given(corpora())
def test_jsonl_round_trip(corpus):
    again = parse_records(dumps_jsonl(corpus).encode(), "jsonl")
    assert again == corpus
    assert parse_records(dumps_jsonl(again).encode(), "jsonl") == again


@given(corpora(max_size=30))
def test_language_proportions(corpus):
    if not any(corpus.languages):
        with pytest.raises(DomainError):
            language_distribution(corpus)
        return
    shares = language_distribution(corpus)
    assert all(0 <= s.proportion <= 1 for s in shares)
    assert math.isclose(sum(s.proportion for s in shares), 1.0, abs_tol=1e-9)
    assert [s.proportion for s in shares] == sorted((s.proportion for s in shares), reverse=True)


@given(corpora(), st.sampled_from(["zzz*", "nomatch", "qqq*"]))
def test_unmatched_pattern_is_zero(corpus, pattern):
    (row,) = tag_query_terms(corpus, [pattern])
    assert row.total_records == 0


@settings(max_examples=50)
@given(corpora())
def test_descriptor_column_bounded(corpus):
    for row in tag_query_terms(corpus, INFORMETRICS_QUERY, INFORMETRICS_DESCRIPTORS):
        assert row.descriptor_indexed is None or row.descriptor_indexed <= row.total_records

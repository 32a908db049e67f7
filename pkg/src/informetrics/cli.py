"""Command-line entry point: ``informetrics <subcommand> ...``.

Input is a path or ``-`` for stdin; output goes to ``-o PATH`` or stdout.
Exit status is 0 on success, 1 for unreadable input or domain errors and
2 for usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import __version__
from ._util import csv_text
from .bradford import (DEFAULT_ZONE_COUNT, detect_core_outliers, partition_zones,
                       rank_curve_csv)
from .errors import InformetricsError, UsageError
from .extrapolate import (DEFAULT_WORLD_JOURNALS, CoverageConfig, extrapolate_world_output,
                          projection_csv, projection_table, world_curve_csv, zone_reconstruction)
from .growth import (GrowthModel, YearCount, doubling_time_from_rate, fit_exponential, growth_csv,
                     year_counts)
from .records import (INFORMETRICS_DESCRIPTORS, INFORMETRICS_QUERY, Corpus, RecordFormat,
                      author_productivity, iter_jsonl, journal_yields, language_distribution,
                      parse_records, tag_query_terms)
from .synth import SynthSpec, generate_bradford_corpus, generate_growth_series
from .viability import DEFAULT_HIGH, DEFAULT_LOW, DEFAULT_THRESHOLD, assess

log = logging.getLogger("informetrics")

REPORT_SCHEMA_VERSION = 1

_EXTENSIONS = {
    ".ris": RecordFormat.RIS_SUBSET,
    ".csv": RecordFormat.DELIMITED,
    ".jsonl": RecordFormat.JSON_LINES,
    ".ndjson": RecordFormat.JSON_LINES,
    ".json": RecordFormat.JSON_LINES,
}


# ---------------------------------------------------------------------------
# I/O helpers


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _load_corpus(args) -> Corpus:
    if args.input_format:
        fmt = RecordFormat.coerce(args.input_format)
    else:
        fmt = _EXTENSIONS.get(Path(args.input).suffix.lower(), RecordFormat.JSON_LINES)
    corpus = parse_records(_read_bytes(args.input), fmt)
    if corpus.skipped:
        log.warning("skipped %d malformed record(s)", corpus.skipped)
    return corpus


def _emit(args, text: str) -> None:
    if getattr(args, "output", None) and args.output != "-":
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_ingest(args) -> None:
    corpus = _load_corpus(args)
    _emit(args, "".join(line + "\n" for line in iter_jsonl(corpus)))
    log.info("ingested %d record(s), skipped %d", len(corpus), corpus.skipped)


def _bradford_result(corpus: Corpus, zone_count: int, exclude_top: int) -> dict:
    yields = journal_yields(corpus)
    zones = partition_zones(yields, zone_count)
    result = {
        "records": len(corpus),
        "skipped": corpus.skipped,
        "journals": len(yields),
        "multiplier_k": zones.multiplier_k,
        "multiplier_k_display": round(zones.multiplier_k, 2),
        "zones": zones.to_dict(),
        "outliers": None,
    }
    if exclude_top:
        try:
            result["outliers"] = [o.to_dict() for o in detect_core_outliers(yields, exclude_top)]
        except InformetricsError as exc:
            log.warning("outlier check skipped: %s", exc)
    return result


def cmd_bradford(args) -> None:
    corpus = _load_corpus(args)
    if args.format == "csv":
        yields = journal_yields(corpus)
        if args.table == "ranks":
            _emit(args, rank_curve_csv(yields))
        else:
            _emit(args, partition_zones(yields, args.zones).to_csv())
        return
    _emit(args, _json(_bradford_result(corpus, args.zones, args.exclude_top)))


def _read_series(path: str) -> list[YearCount]:
    text = _read_bytes(path).decode("utf-8-sig")
    reader = csv.DictReader(io.StringIO(text))
    if not reader.fieldnames or not {"year", "count"} <= set(reader.fieldnames):
        raise UsageError("series CSV needs 'year' and 'count' columns")
    series = []
    for row in reader:
        count = float(row["count"])
        series.append(YearCount(int(row["year"]), int(count) if count.is_integer() else count))
    return series


def cmd_growth(args) -> None:
    excluded = 0
    if args.series:
        series = _read_series(args.input)
    else:
        series, excluded = year_counts(_load_corpus(args), args.first_year, args.last_year)
    model = fit_exponential(series)
    if args.format == "csv":
        _emit(args, growth_csv(series, model))
        return
    _emit(args, _json({
        "model": model.to_dict(),
        "doubling_time_display": round(model.doubling_time_years, 1),
        "yearless_records_excluded": excluded,
        "series": [{"year": p.year, "observed": p.count} for p in series],
    }))


def cmd_extrapolate(args) -> None:
    if args.method == "zones":
        if args.per_zone_yield is None or args.k is None:
            raise UsageError("--method zones needs --per-zone-yield and --k")
        estimate = zone_reconstruction(args.per_zone_yield, args.k, args.world_journals)
        if args.format == "csv":
            _emit(args, estimate.zones.to_csv())
        else:
            _emit(args, _json(estimate.to_dict()))
        return
    corpus = _load_corpus(args)
    if args.year is not None:
        corpus = corpus.filter(lambda r: r.year == args.year)
    yields = journal_yields(corpus)
    estimate = extrapolate_world_output(yields, args.world_journals, args.exclude_top,
                                        add_back_excluded=args.add_back, year=args.year)
    if args.format == "csv":
        _emit(args, world_curve_csv(estimate, yields[args.exclude_top:]))
    else:
        _emit(args, _json(estimate.to_dict()))


def _coverage(args) -> CoverageConfig:
    if args.recall is not None:
        return CoverageConfig(args.recall)
    return CoverageConfig.from_factor(args.factor)


def cmd_project(args) -> None:
    if (args.t2 is None) == (args.rate is None):
        raise UsageError("give exactly one of --t2 or --rate")
    t2 = args.t2 if args.t2 is not None else doubling_time_from_rate(args.rate)
    model = GrowthModel(args.base_year, args.base_count, t2)
    first = args.base_year if args.from_year is None else args.from_year
    rows = projection_table(model, _coverage(args), first, args.to)
    if args.format == "csv":
        _emit(args, projection_csv(rows))
    else:
        _emit(args, _json({
            "model": model.to_dict(),
            "coverage_factor": _coverage(args).factor,
            "rows": [r.to_dict() for r in rows],
        }))


def cmd_viability(args) -> None:
    verdict = assess(args.world_output, args.threshold, args.low, args.high, args.authors)
    if args.format == "text":
        _emit(args, verdict.summary() + "\n")
    else:
        _emit(args, _json(verdict.to_dict()))


def cmd_synth(args) -> None:
    if args.kind == "growth":
        series = generate_growth_series(args.seed, args.base_count, args.base_year, args.t2,
                                        args.span, args.noise)
        _emit(args, csv_text(["year", "count"], series))
        return
    spec = SynthSpec(args.seed, args.k, args.zones, args.yield_, args.noise)
    corpus, truth = generate_bradford_corpus(spec)
    if args.truth:
        Path(args.truth).write_text(_json(truth.to_dict()), encoding="utf-8")
    _emit(args, "".join(line + "\n" for line in iter_jsonl(corpus)))


def _attempt(notes: list, label: str, fn):
    try:
        return fn()
    except InformetricsError as exc:
        notes.append(f"{label}: {exc}")
        return None


def build_report(corpus: Corpus, args) -> dict:
    """Assemble the full report bundle for one corpus."""
    notes: list[str] = []
    yields = journal_yields(corpus)
    authors = author_productivity(corpus)
    years = [y for y in corpus.years if y is not None]

    terms = tag_query_terms(corpus, INFORMETRICS_QUERY, INFORMETRICS_DESCRIPTORS)
    languages = _attempt(notes, "languages", lambda: language_distribution(corpus)) or []

    zones = None
    if yields:
        zones = _attempt(notes, "zones", lambda: partition_zones(yields, min(args.zones, len(yields))))
    outliers = _attempt(notes, "outliers", lambda: detect_core_outliers(yields, args.exclude_top)) or []

    series, yearless = year_counts(corpus)
    model = _attempt(notes, "growth", lambda: fit_exponential(series))
    coverage = _coverage(args)
    projections = []
    verdict = None
    if model is not None:
        projections = projection_table(model, coverage, model.base_year, model.base_year + args.horizon)
        verdict_year = model.base_year + 1 if args.verdict_year is None else args.verdict_year
        row = projection_table(model, coverage, verdict_year, verdict_year)[0]
        result = _attempt(notes, "verdict", lambda: assess(row.corrected_raw, args.threshold, args.low,
                                                           args.high, len(authors)))
        if result is not None:
            verdict = {"basis_year": verdict_year, **result.to_dict()}

    world_year = args.world_year if args.world_year is not None else (max(years) if years else None)
    slice_ = corpus if world_year is None else corpus.filter(lambda r: r.year == world_year)
    world = _attempt(notes, "world_estimate", lambda: extrapolate_world_output(
        journal_yields(slice_), args.world_journals, args.exclude_top, year=world_year))

    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "corpus_summary": {
            "records": len(corpus),
            "skipped": corpus.skipped,
            "yearless": yearless,
            "journals": len(yields),
            "distinct_authors": len(authors),
            "first_year": min(years) if years else None,
            "last_year": max(years) if years else None,
        },
        "term_counts": [
            {"pattern": str(t.pattern), "total_records": t.total_records,
             "descriptor_indexed": t.descriptor_indexed}
            for t in terms
        ],
        "core_journals": [
            {"rank": y.rank, "journal": y.journal, "count": y.count} for y in yields[:args.core]
        ],
        "authors": [{"author": a.author, "count": a.count} for a in authors[:args.top_authors]],
        "languages": [
            {"language": s.language, "proportion": s.proportion,
             "percent_display": round(100 * s.proportion, 1)}
            for s in languages
        ],
        "zones": None if zones is None else zones.to_dict(),
        "outliers": [o.to_dict() for o in outliers],
        "growth_model": None if model is None else model.to_dict(),
        "projections": [r.to_dict() for r in projections],
        "world_estimate": None if world is None else world.to_dict(),
        "verdict": verdict,
        "notes": notes,
    }


def cmd_report(args) -> None:
    _emit(args, _json(build_report(_load_corpus(args), args)))


# ---------------------------------------------------------------------------
# argument parsing


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", default="-", help="input file, or - for stdin (default)")
    p.add_argument("--input-format", choices=[m.value for m in RecordFormat],
                   help="record format (default: from file extension, else jsonl)")


def _add_output(p: argparse.ArgumentParser, formats=("json", "csv")) -> None:
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    if formats:
        p.add_argument("--format", choices=formats, default=formats[0])


def _add_coverage(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--factor", type=float, default=2.5, help="coverage factor (default 2.5)")
    g.add_argument("--recall", type=float, help="database recall ratio, e.g. 0.4")


def _add_thresholds(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD,
                   help="papers/year a journal needs (default 100)")
    p.add_argument("--low", type=float, default=DEFAULT_LOW)
    p.add_argument("--high", type=float, default=DEFAULT_HIGH)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="informetrics",
                                     description="Bradford scattering and growth analysis of bibliographic exports.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("ingest", help="validate and normalize records to JSON lines")
    _add_input(p)
    _add_output(p, formats=())
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("bradford", help="Bradford zones, multiplier and core outliers")
    _add_input(p)
    _add_output(p)
    p.add_argument("--zones", type=int, default=DEFAULT_ZONE_COUNT)
    p.add_argument("--exclude-top", type=int, default=1,
                   help="journals checked as outliers against the fit to the rest (default 1)")
    p.add_argument("--table", choices=("zones", "ranks"), default="zones",
                   help="CSV table: zone summary or rank curve")
    p.set_defaults(func=cmd_bradford)

    p = sub.add_parser("growth", help="fit exponential growth to papers per year")
    _add_input(p)
    _add_output(p)
    p.add_argument("--series", action="store_true", help="input is a year,count CSV instead of records")
    p.add_argument("--first-year", type=int)
    p.add_argument("--last-year", type=int)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("extrapolate", help="estimate world output across the journal population")
    _add_input(p)
    _add_output(p)
    p.add_argument("--method", choices=("power-law", "zones"), default="power-law")
    p.add_argument("--year", type=int, help="restrict the corpus to one publication year")
    p.add_argument("--world-journals", type=int, default=DEFAULT_WORLD_JOURNALS)
    p.add_argument("--exclude-top", type=int, default=0)
    p.add_argument("--add-back", action="store_true", help="add excluded journals' counts to the total")
    p.add_argument("--per-zone-yield", type=float)
    p.add_argument("--k", type=float)
    p.set_defaults(func=cmd_extrapolate)

    p = sub.add_parser("project", help="projected and coverage-corrected yearly counts")
    _add_output(p)
    p.add_argument("--base-year", type=int, required=True)
    p.add_argument("--base-count", type=float, required=True)
    p.add_argument("--t2", type=float, help="doubling time in years")
    p.add_argument("--rate", type=float, help="annual growth rate, e.g. 0.07")
    p.add_argument("--from", dest="from_year", type=int, help="first year (default: base year)")
    p.add_argument("--to", type=int, required=True, help="last year")
    _add_coverage(p)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("viability", help="new-journal verdict for a world output figure")
    _add_output(p, formats=("json", "text"))
    p.add_argument("--world-output", type=float, required=True, help="papers per year")
    p.add_argument("--authors", type=int, help="distinct author count, reported for context")
    _add_thresholds(p)
    p.set_defaults(func=cmd_viability)

    p = sub.add_parser("synth", help="emit a deterministic synthetic corpus or growth series")
    _add_output(p, formats=())
    p.add_argument("--kind", choices=("bradford", "growth"), default="bradford")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--k", type=float, default=7.0)
    p.add_argument("--zones", type=int, default=3)
    p.add_argument("--yield", dest="yield_", type=int, default=750)
    p.add_argument("--truth", help="write the ground-truth zones JSON here")
    p.add_argument("--base-count", type=float, default=100.0)
    p.add_argument("--base-year", type=int, default=2000)
    p.add_argument("--t2", type=float, default=9.6)
    p.add_argument("--span", type=int, default=15)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("report", help="full report bundle as JSON")
    _add_input(p)
    _add_output(p, formats=())
    p.add_argument("--zones", type=int, default=DEFAULT_ZONE_COUNT)
    p.add_argument("--exclude-top", type=int, default=1)
    p.add_argument("--core", type=int, default=8, help="core journals listed (default 8)")
    p.add_argument("--top-authors", type=int, default=13)
    p.add_argument("--horizon", type=int, default=3, help="years projected past the last observed year")
    p.add_argument("--verdict-year", type=int, help="year whose corrected projection feeds the verdict")
    p.add_argument("--world-year", type=int, help="year sliced for the world estimate (default: latest)")
    p.add_argument("--world-journals", type=int, default=DEFAULT_WORLD_JOURNALS)
    _add_coverage(p)
    _add_thresholds(p)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="informetrics: %(message)s", force=True)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"informetrics: error: {exc}", file=sys.stderr)
        return 2
    except (InformetricsError, ValueError) as exc:
        print(f"informetrics: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"informetrics: cannot read input: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

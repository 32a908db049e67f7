import math


def round_half_away(x: float) -> int:
    """Round to the nearest integer, halves away from zero (932.5 -> 933)."""
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def csv_text(header, rows) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()

"""Render result tables as JSON, CSV or aligned markdown."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Sequence


def cell(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, bool):
        return "pass" if value else "FAIL"
    return str(value)


def json_cell(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return value


def render(rows: Sequence[dict], columns: Sequence[str], fmt: str = "md") -> str:
    if fmt == "json":
        return json.dumps([{c: json_cell(r[c]) for c in columns} for r in rows], indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([cell(r[c]) for c in columns])
        return buf.getvalue()
    if fmt == "md":
        body = [[cell(r[c]) for c in columns] for r in rows]
        widths = [max([len(c)] + [len(b[k]) for b in body]) for k, c in enumerate(columns)]
        line = lambda vals: "| " + " | ".join(v.ljust(w) for v, w in zip(vals, widths)) + " |"
        out = [line(columns), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
        out.extend(line(b) for b in body)
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def approx(value: Fraction, digits: int = 4) -> str:
    """Decimal rendering, for annotation only."""
    return f"{float(value):.{digits}f}"

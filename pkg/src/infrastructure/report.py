import io
import json
from fractions import Fraction
from typing import Dict, List, Sequence

import pandas as pd

from src.core.indicators.models import ReportRow
from src.core.reporting.formatter import RationalFormatter
from src.core.reporting.layout import INTEGER, PERCENT, RATIONAL, ReportLayout


def output_columns(layout: ReportLayout) -> List[str]:
    """Header in emission order; every rational column is followed by its exact sibling."""
    names = []
    for name, kind in layout.columns:
        names.append(name)
        if kind == RATIONAL:
            names.append(f"{name}_exact")
    return names


def _render_row(row: ReportRow, layout: ReportLayout, precision: int) -> Dict[str, str]:
    rendered = {}
    for name, kind in layout.columns:
        value = row.cell(name)
        if kind == RATIONAL:
            rendered[name] = "" if value is None else RationalFormatter.decimal(value, precision)
            rendered[f"{name}_exact"] = "" if value is None else RationalFormatter.exact(value)
        elif kind == PERCENT:
            rendered[name] = "" if value is None else RationalFormatter.percent(value, precision)
        elif kind == INTEGER:
            rendered[name] = "" if value is None else str(int(value))
        else:
            rendered[name] = "" if value is None else str(value)
    return rendered


def write_report(
    rows: Sequence[ReportRow],
    layout: ReportLayout,
    fmt: str = "csv",
    precision: int = 4,
) -> bytes:
    """Render rows half-even at `precision` decimals as CSV or a JSON array."""
    if precision < 1:
        raise ValueError(f"Precision must be at least 1, got {precision}")

    columns = output_columns(layout)
    records = [_render_row(row, layout, precision) for row in rows]

    if fmt == "json":
        return (json.dumps(records, indent=2) + "\n").encode("utf-8")
    if fmt != "csv":
        raise ValueError(f"Unsupported report format: {fmt}")
    frame = pd.DataFrame(records, columns=columns)
    return frame.to_csv(index=False, lineterminator="\n").encode("utf-8")


def read_report(data: bytes, fmt: str = "csv") -> List[Dict[str, str]]:
    """Rows of a written report as strings, with *_exact columns parsed back to Fractions."""
    if fmt == "json":
        records = json.loads(data.decode("utf-8"))
    else:
        frame = pd.read_csv(io.BytesIO(data), dtype=str, keep_default_na=False)
        records = frame.to_dict(orient="records")
    for record in records:
        for key in list(record):
            if key.endswith("_exact") and record[key]:
                record[key] = Fraction(record[key])
    return records

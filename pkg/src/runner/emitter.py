"""Serialisation of row streams and reports to stdout."""
import csv
import json
import sys
from typing import Dict, List, Optional, Sequence, TextIO

from pydantic import BaseModel


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value)
    return str(value)


def _columns(rows: Sequence[Dict]) -> List[str]:
    columns: List[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    return columns


def emit_rows(rows: Sequence[Dict], output_format: str = "json", stream: Optional[TextIO] = None) -> None:
    """
    One JSON object per line, or CSV with a header, or an aligned text table.
    Column order follows first appearance across the rows.
    """
    if stream is None:
        stream = sys.stdout
    if output_format == "json":
        for row in rows:
            stream.write(json.dumps(row) + "\n")
        return
    columns = _columns(rows)
    if output_format == "csv":
        writer = csv.DictWriter(stream, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _cell(row[key]) if key in row else "" for key in columns})
        return
    if output_format == "table":
        cells = [[_cell(row.get(key, "")) for key in columns] for row in rows]
        widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
        stream.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
        for r in cells:
            stream.write("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")
        return
    raise ValueError(f"Unknown output format '{output_format}'.")


def emit_report(report: BaseModel, stream: Optional[TextIO] = None) -> None:
    if stream is None:
        stream = sys.stdout
    stream.write(report.model_dump_json(indent=2, by_alias=True) + "\n")

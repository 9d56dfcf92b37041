"""
Serialization of reports: JSON, aligned tables and CSV

JSON keys keep the order each record's to_dict() gives them, so equal
inputs give byte-identical output. Integers beyond 2^53 are written as
decimal strings; every from_dict() accepts either form.
"""

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Type, Union

from .models import CurveClass, InvariantReport, OutputFormat

logger = logging.getLogger(__name__)

SAFE_INTEGER = 2 ** 53

GRID_COLUMNS = ('N', 'n', 'm', 'b2_X', 'e', 'a', 'ample_L', 'ample_C', 'd_semistable')


def stringify_big_ints(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > SAFE_INTEGER else value
    if isinstance(value, dict):
        return {k: stringify_big_ints(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [stringify_big_ints(v) for v in value]
    return value


def _as_dict(report: Any) -> Dict[str, Any]:
    if isinstance(report, dict):
        return report
    return report.to_dict()


def flatten(data: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    """Nested dicts become dotted keys; lists become space-joined text"""
    flat = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten(value, f"{name}."))
        elif isinstance(value, (list, tuple)):
            flat[name] = " ".join(_cell(v) for v in value)
        else:
            flat[name] = value
    return flat


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_cell(v) for v in value) + "]"
    return str(value)


def format_table(report: Any) -> str:
    """Two aligned columns, one field per line"""
    flat = flatten(_as_dict(report))
    width = max((len(k) for k in flat), default=0)
    return "".join(f"{key.ljust(width)}  {_cell(value)}\n" for key, value in flat.items())


def format_grid_table(reports: Iterable[Any], columns: Sequence[str] = GRID_COLUMNS) -> str:
    rows = [[_cell(_as_dict(r).get(col)) for col in columns] for r in reports]
    widths = [
        max([len(col)] + [len(row[i]) for row in rows]) for i, col in enumerate(columns)
    ]
    lines = [
        "  ".join(col.rjust(w) for col, w in zip(columns, widths)),
        "  ".join("-" * w for w in widths),
    ]
    lines += ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows]
    return "\n".join(lines) + "\n"


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()


def format_csv(reports: Union[Any, Sequence[Any]]) -> str:
    """One header row from the first report's flattened keys"""
    if not isinstance(reports, (list, tuple)):
        reports = [reports]
    flats = [flatten(_as_dict(r)) for r in reports]
    header = list(flats[0]) if flats else []
    return _csv_text(header, ([flat.get(k) for k in header] for flat in flats))


def format_grid_csv(reports: Iterable[Any], columns: Sequence[str] = GRID_COLUMNS) -> str:
    """Same columns as format_grid_table, one CSV row per report"""
    return _csv_text(columns, ([_as_dict(r).get(col) for col in columns] for r in reports))


def curves_csv(classes: Iterable[CurveClass]) -> str:
    header = ["alpha"] + [f"beta{i}" for i in range(1, 10)]
    return _csv_text(header, (c.as_row() for c in classes))


def write_output(payload: bytes, out_path: Optional[str] = None) -> None:
    """Write to out_path; OSError propagates when the path is unwritable"""
    if out_path:
        Path(out_path).write_bytes(payload)
        logger.info(f"✅ Wrote {len(payload)} bytes to {out_path}")


def emit_report(report: Any, fmt: Union[OutputFormat, str] = OutputFormat.JSON,
                out_path: Optional[str] = None) -> bytes:
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        if isinstance(report, (list, tuple)):
            data = [stringify_big_ints(_as_dict(r)) for r in report]
        else:
            data = stringify_big_ints(_as_dict(report))
        text = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    elif fmt is OutputFormat.TABLE:
        if isinstance(report, (list, tuple)):
            text = format_grid_table(report)
        else:
            text = format_table(report)
    else:
        text = format_csv(report)

    payload = text.encode("utf-8")
    write_output(payload, out_path)
    return payload


def parse_report(data: Union[bytes, str], kind: Type = InvariantReport,
                 fmt: Union[OutputFormat, str] = OutputFormat.JSON) -> Any:
    """Inverse of emit_report for JSON output"""
    if OutputFormat(fmt) is not OutputFormat.JSON:
        raise ValueError(f"Only JSON reports can be parsed, got {fmt}")
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    parsed = json.loads(data)
    if isinstance(parsed, list):
        return [kind.from_dict(item) for item in parsed]
    return kind.from_dict(parsed)


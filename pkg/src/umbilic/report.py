"""JSON and CSV serialization of grid reports.

Floats are written with 17 significant digits so that reports round-trip
exactly and identical runs give byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .pipeline import ROW_FIELDS


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def _encode(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def to_json(report: dict) -> str:
    """Deterministic JSON text: key order as built, one row per line."""
    head = {k: v for k, v in report.items() if k != "rows"}
    parts = ["{", f'  "schema": {_encode(head.pop("schema"))},']
    for key, val in head.items():
        parts.append(f"  {json.dumps(key)}: {_encode(val)},")
    rows = report["rows"]
    parts.append('  "rows": [')
    for n, row in enumerate(rows):
        parts.append("    " + _encode(row) + ("," if n + 1 < len(rows) else ""))
    parts.append("  ]")
    parts.append("}")
    return "\n".join(parts) + "\n"


def _csv_cell(val) -> str:
    if val is None:
        return ""
    if isinstance(val, (bool, np.bool_)):
        return "true" if val else "false"
    if isinstance(val, (float, np.floating)):
        return _fmt_float(float(val)) if math.isfinite(val) else ""
    return str(val)


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ROW_FIELDS)
    for row in report["rows"]:
        w.writerow([_csv_cell(row[k]) for k in ROW_FIELDS])
    return buf.getvalue()


def parse_csv_value(text: str):
    """Inverse of the CSV cell encoding, used for round-trip comparison."""
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def read_csv(text: str) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    return [{k: parse_csv_value(v) for k, v in row.items()} for row in reader]

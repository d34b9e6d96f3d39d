"""JSON, CSV and table renderings of identity check reports.

Machine formats print every float with 17 significant digits so that a
report parsed back with :func:`json.loads` re-serialises byte for byte.
"""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable

FLOAT_FMT = "%.17g"
TABLE_FMT = "%.9g"


def format_float(x: float, fmt: str = FLOAT_FMT) -> str:
    if not math.isfinite(x):
        return "null"
    return fmt % x


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return _encode(obj.item(), indent, level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Deterministic JSON text: insertion key order, %.17g floats, trailing newline."""
    return _encode(obj, indent, 0) + "\n"


def reports_to_json(reports: Iterable) -> str:
    return dumps([r.to_dict() for r in reports])


CSV_COLUMNS = ("id", "variant", "params", "x", "lhs", "rhs", "rel_err", "point_status", "verdict")


def _params_text(params: dict) -> str:
    parts = []
    for k, v in params.items():
        parts.append(f"{k}={format_float(v) if isinstance(v, float) else v}")
    return ";".join(parts)


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format_float(x)
    return str(x)


def reports_to_csv(reports: Iterable) -> str:
    """One row per sample point."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        params = _params_text(rep.params)
        for pt in rep.points:
            w.writerow([rep.id, rep.variant, params, _cell(pt.x), _cell(pt.lhs), _cell(pt.rhs),
                        _cell(pt.rel_err), pt.status, rep.verdict.value])
    return buf.getvalue()


def reports_to_table(reports: Iterable) -> str:
    rows = [("id", "params", "max_rel_err", "verdict", "note")]
    for rep in reports:
        err = "-" if rep.max_rel_err is None else format_float(rep.max_rel_err, TABLE_FMT)
        params = ", ".join(f"{k}={format_float(v, TABLE_FMT) if isinstance(v, float) else v}"
                           for k, v in rep.params.items())
        note = []
        if rep.variant != "canonical":
            note.append(rep.variant)
        if rep.degraded:
            note.append("degraded")
        if rep.erratum_note:
            note.append("erratum")
        rows.append((rep.id, params, err, rep.verdict.value, ",".join(note)))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"

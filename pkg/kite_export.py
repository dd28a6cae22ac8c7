"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
KiteCC Export

Deterministic CSV and JSON serialization of traced curves, special points
and generic report tables. Angles leave the package in decimal degrees.
"""

import csv
import io
import json
import logging
import math
import sys
from typing import Any, Dict, Iterable, List, Optional, Sequence

from kite_config import CONFIG
from kite_errors import InvalidArguments, IoFailure
from core_modules.angles_domain import to_kl
from core_modules.solver import ENDPOINT_FAMILY, CurveFamily, CurvePoint, SpecialPoint

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")

CURVE_COLUMNS = [
    "family", "kind", "beta_deg", "alpha_deg", "mu1", "mu2", "mu",
    "residual_full", "oracle_residual", "lambda", "note",
]

SPECIAL_COLUMNS = [
    "label", "family", "beta_deg", "alpha_deg", "mu1", "mu2", "mu", "k", "l", "ratio", "note",
]

NAN = float("nan")


class Degrees(float):
    """Angle in degrees; CSV renders it at fixed precision"""


def _csv_cell(value: Any) -> str:
    if value is None:
        return "NaN"
    if isinstance(value, Degrees):
        return f"{float(value):.{CONFIG['output']['degree_decimals']}f}"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "NaN" if math.isnan(value) else repr(value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float):
        value = float(value)
        return None if not math.isfinite(value) else value
    return value


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise InvalidArguments(f"unknown output format {fmt!r}, expected one of {FORMATS}", format=fmt)


def export_rows(rows: Iterable[Dict[str, Any]], columns: Sequence[str], fmt: str) -> bytes:
    """
    Serialize table rows

    Args:
        rows: Dictionaries keyed by column name
        columns: Column order
        fmt: "csv" or "json"

    Returns:
        UTF-8 bytes; CSV always carries the header line
    """
    _check_format(fmt)
    rows = list(rows)
    if fmt == "json":
        records = [{c: _json_value(row.get(c)) for c in columns} for row in rows]
        return (json.dumps(records, indent=2, allow_nan=False) + "\n").encode("utf-8")

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(c)) for c in columns])
    return buffer.getvalue().encode("utf-8")


def curve_point_row(point: CurvePoint) -> Dict[str, Any]:
    triple = point.masses
    return {
        "family": point.family.value,
        "kind": point.family.kind.value,
        "beta_deg": Degrees(point.angles.beta_deg),
        "alpha_deg": Degrees(point.angles.alpha_deg),
        "mu1": triple.mu1 if triple else NAN,
        "mu2": triple.mu2 if triple else NAN,
        "mu": triple.mu if triple else NAN,
        "residual_full": point.residual_full,
        "oracle_residual": point.oracle_residual,
        "lambda": point.lam,
        "note": point.note,
    }


def export_points(points: Sequence[CurvePoint], fmt: str) -> bytes:
    return export_rows((curve_point_row(p) for p in points), CURVE_COLUMNS, fmt)


def export_curve(curve: CurveFamily, fmt: str) -> bytes:
    """Traced family as CSV or JSON, one row per point in beta order"""
    return export_points(curve.points, fmt)


def special_point_row(point: SpecialPoint) -> Dict[str, Any]:
    triple = point.masses
    family = point.family or ENDPOINT_FAMILY.get(point.label)
    k = l = NAN
    if point.label in ENDPOINT_FAMILY:
        kl = to_kl(point.angles, ENDPOINT_FAMILY[point.label])
        k, l = kl.k, kl.l
    return {
        "label": point.label.value,
        "family": family.value if family else "",
        "beta_deg": Degrees(point.angles.beta_deg),
        "alpha_deg": Degrees(point.angles.alpha_deg),
        "mu1": triple.mu1 if triple else NAN,
        "mu2": triple.mu2 if triple else NAN,
        "mu": triple.mu if triple else NAN,
        "k": k,
        "l": l,
        "ratio": NAN if point.ratio is None else point.ratio,
        "note": point.note,
    }


def export_special_points(points: Sequence[SpecialPoint], fmt: str) -> bytes:
    return export_rows((special_point_row(p) for p in points), SPECIAL_COLUMNS, fmt)


def export_report(records: List[Dict[str, Any]], fmt: str, columns: Optional[Sequence[str]] = None) -> bytes:
    """Generic report table; columns default to the keys of the first record"""
    if columns is None:
        columns = list(records[0].keys()) if records else []
    return export_rows(records, columns, fmt)


def write_output(data: bytes, path: Optional[str] = None) -> None:
    """
    Write serialized output to a file, or stdout when no path is given

    Raises:
        IoFailure: the file cannot be written
    """
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    try:
        with open(path, "wb") as f:
            f.write(data)
    except OSError as e:
        raise IoFailure(f"cannot write {path}: {e.strerror or e}", path=path) from e
    logger.info(f"Wrote {len(data)} bytes to {path}")

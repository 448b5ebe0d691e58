"""Reading and writing matrices and classification reports.

Two wire formats. CSV: an optional header row of labels plus a leading label
column, detected by a non-numeric first cell; otherwise a bare numeric grid
labeled x1..xn. JSON: an object with an optional "labels" array and a
required square "matrix". Numbers are written with the shortest decimal that
parses back to the identical binary float, and non-finite values are
rejected at parse time.
"""

from __future__ import annotations

import csv
import enum
import io as _io
import json
import math
from dataclasses import dataclass

from .classify import REPORT_FLAGS, ClassificationReport
from .checks import PropertyVerdict
from .errors import InputError, InvalidMatrixError, ParseError
from .matrix import LabeledMatrix, auto_labels

__all__ = [
    "MatrixDocument",
    "MatrixFormat",
    "detect_format",
    "parse_gauge_csv",
    "parse_matrix",
    "serialize_matrix",
    "serialize_report",
]


class MatrixFormat(enum.Enum):
    CSV = "csv"
    JSON = "json"

    @classmethod
    def parse(cls, code: str) -> "MatrixFormat":
        try:
            return cls(code)
        except ValueError:
            raise InputError(f"unknown matrix format {code!r}; expected csv or json") from None


def detect_format(text: str) -> MatrixFormat:
    """Sniff the format: a document starting with '{' is JSON, else CSV."""
    stripped = text.lstrip()
    return MatrixFormat.JSON if stripped.startswith("{") else MatrixFormat.CSV


@dataclass(frozen=True)
class MatrixDocument:
    """A textual matrix encoding together with its format."""

    format: MatrixFormat
    payload: str

    @classmethod
    def from_text(cls, text: str, format: MatrixFormat | None = None) -> "MatrixDocument":
        return cls(format=format or detect_format(text), payload=text)

    def parse(self) -> LabeledMatrix:
        return parse_matrix(self.payload, self.format)


def _parse_cell(cell: str, row: int, col: int) -> float:
    try:
        v = float(cell)
    except ValueError:
        raise ParseError(f"expected a number, got {cell!r}", row=row, col=col) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite value {cell!r}", row=row, col=col)
    return v


def _looks_numeric(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def _parse_csv(text: str) -> LabeledMatrix:
    rows = [r for r in csv.reader(_io.StringIO(text))]
    rows = [r for r in rows if r]  # drop blank lines
    if not rows:
        raise ParseError("empty input")
    labeled = not _looks_numeric(rows[0][0]) if rows[0] else True
    if labeled:
        header = rows[0]
        labels = tuple(header[1:])
        n = len(labels)
        if n == 0:
            raise ParseError("header row carries no labels", row=1)
        body = rows[1:]
        if len(body) != n:
            raise ParseError(f"{n} labels but {len(body)} data rows")
        grid = []
        for i, r in enumerate(body):
            if len(r) != n + 1:
                raise ParseError(f"expected {n + 1} cells, got {len(r)}", row=i + 2)
            if r[0] != labels[i]:
                raise ParseError(
                    f"row label {r[0]!r} does not match header label {labels[i]!r}",
                    row=i + 2,
                    col=1,
                )
            grid.append([_parse_cell(c, i + 2, j + 2) for j, c in enumerate(r[1:])])
    else:
        labels = auto_labels(len(rows))
        n = len(rows)
        grid = []
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ParseError(f"expected {n} cells, got {len(r)}", row=i + 1)
            grid.append([_parse_cell(c, i + 1, j + 1) for j, c in enumerate(r)])
    try:
        return LabeledMatrix(labels, grid)
    except InvalidMatrixError as e:
        raise ParseError(str(e)) from None


def _reject_constant(token: str) -> float:
    raise ParseError(f"non-finite value {token!r} in JSON input")


def _parse_json(text: str) -> LabeledMatrix:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", row=e.lineno, col=e.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("JSON input must be an object with a 'matrix' key")
    if "matrix" not in doc:
        raise ParseError("JSON input is missing the 'matrix' key")
    matrix = doc["matrix"]
    if not isinstance(matrix, list) or not matrix:
        raise ParseError("'matrix' must be a nonempty array of rows")
    n = len(matrix)
    grid = []
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"'matrix' must be square; row {i + 1} does not have {n} entries")
        out = []
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"expected a number, got {v!r}", row=i + 1, col=j + 1)
            if not math.isfinite(v):
                raise ParseError(f"non-finite value {v!r}", row=i + 1, col=j + 1)
            out.append(float(v))
        grid.append(out)
    labels_field = doc.get("labels")
    if labels_field is None:
        labels = auto_labels(n)
    else:
        if not isinstance(labels_field, list) or not all(
            isinstance(l, str) for l in labels_field
        ):
            raise ParseError("'labels' must be an array of strings")
        if len(labels_field) != n:
            raise ParseError(f"{len(labels_field)} labels for a {n}x{n} matrix")
        labels = tuple(labels_field)
    try:
        return LabeledMatrix(labels, grid)
    except InvalidMatrixError as e:
        raise ParseError(str(e)) from None


def parse_matrix(text: str, format: MatrixFormat | str | None = None) -> LabeledMatrix:
    """Parse matrix text; the format is sniffed when not given.

    Errors carry a 1-based position where one makes sense.
    """
    if isinstance(format, str):
        format = MatrixFormat.parse(format)
    if format is None:
        format = detect_format(text)
    if not text.strip():
        raise ParseError("empty input")
    if format is MatrixFormat.CSV:
        return _parse_csv(text)
    return _parse_json(text)


def _format_value(v: float) -> str:
    return repr(float(v))


def serialize_matrix(M: LabeledMatrix, format: MatrixFormat | str = MatrixFormat.CSV) -> str:
    """Serialize with labels; parse(serialize(M)) reproduces M bit for bit."""
    if isinstance(format, str):
        format = MatrixFormat.parse(format)
    if format is MatrixFormat.JSON:
        return json.dumps(
            {
                "labels": list(M.labels),
                "matrix": [[float(v) for v in row] for row in M.entries],
            }
        ) + "\n"
    for l in M.labels:
        if any(c in l for c in ",\r\n\""):
            raise InputError(
                f"label {l!r} cannot be written as CSV; use the JSON format"
            )
    lines = ["," + ",".join(M.labels)]
    for i, l in enumerate(M.labels):
        lines.append(l + "," + ",".join(_format_value(v) for v in M.entries[i]))
    return "\n".join(lines) + "\n"


def _verdict_obj(v: PropertyVerdict) -> dict:
    return {
        "status": v.status.value,
        "min_slack": v.min_slack,
        "count_checked": v.count_checked,
        "count_violations": v.count_violations,
        "witnesses": [
            {
                "x": w.x,
                "y": w.y,
                "z": w.z,
                "lhs": w.lhs,
                "rhs": w.rhs,
                "deficit": w.deficit,
            }
            for w in v.witnesses
        ],
    }


def serialize_report(report: ClassificationReport, format: str = "json") -> str:
    """Render a classification report as stable JSON or a readable text table.

    Serializing the same report twice gives byte-identical output.
    """
    verdicts = {}
    for ty, v in report.triangle.items():
        verdicts[f"triangle_{ty.value}"] = _verdict_obj(v)
    for ty, v in report.prequadrangle.items():
        verdicts[f"prequad_{ty.value}"] = _verdict_obj(v)
    verdicts["strict_t"] = _verdict_obj(report.strictness)
    if format == "json":
        return json.dumps({"flags": report.flags, "verdicts": verdicts}, indent=2) + "\n"
    if format != "text":
        raise InputError(f"unknown report format {format!r}; expected json or text")
    width = max(len(name) for name in REPORT_FLAGS)
    lines = []
    for name in REPORT_FLAGS:
        lines.append(f"{name:<{width}}  {'yes' if report.flags[name] else 'no'}")
    lines.append("")
    for key, v in verdicts.items():
        slack = "n/a" if v["min_slack"] is None else repr(v["min_slack"])
        lines.append(
            f"{key:<{width}}  {v['status']}  min_slack={slack}  "
            f"violations={v['count_violations']}/{v['count_checked']}"
        )
        for w in v["witnesses"][:1]:
            lines.append(
                f"{'':<{width}}  first witness x={w['x']} y={w['y']} z={w['z']} "
                f"lhs={w['lhs']!r} rhs={w['rhs']!r} deficit={w['deficit']!r}"
            )
    return "\n".join(lines) + "\n"


def parse_gauge_csv(text: str) -> dict[str, float]:
    """Parse a two-column label,value CSV into a gauge mapping."""
    rows = [r for r in csv.reader(_io.StringIO(text)) if r]
    if not rows:
        raise ParseError("empty gauge input")
    out: dict[str, float] = {}
    for i, r in enumerate(rows):
        if len(r) != 2:
            raise ParseError(f"expected label,value, got {len(r)} cells", row=i + 1)
        label, cell = r
        if label in out:
            raise ParseError(f"duplicate label {label!r}", row=i + 1, col=1)
        out[label] = _parse_cell(cell, i + 1, 2)
    return out

"""Reading and writing structure matrices.

Accepted input: JSON ``{"matrix": [[...]], "labels": [...]}`` or plain text
with one whitespace-separated row per line.  Entries are integers or ``p/q``.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

from .linalg import Matrix, format_rational, to_rational


class ParseError(ValueError):
    pass


def _entry(x):
    if isinstance(x, float):
        raise ParseError(f"floating point entry {x!r}; write rationals as integers or 'p/q'")
    try:
        return to_rational(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad matrix entry {x!r}") from exc


def _rows_to_matrix(rows) -> Matrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a non-empty list of rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError("rows differ in length")
    return Matrix.from_rows([[_entry(x) for x in r] for r in rows])


def parse_matrix_text(text: str) -> tuple[Matrix, tuple]:
    """Parse either input format; returns (matrix, labels)."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty input")
    if stripped[0] in "{[":
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if isinstance(data, list):
            return _rows_to_matrix(data), ()
        if not isinstance(data, dict) or "matrix" not in data:
            raise ParseError('JSON input needs a "matrix" key')
        labels = data.get("labels") or ()
        m = _rows_to_matrix(data["matrix"])
        if labels and len(labels) != m.rows:
            raise ParseError("label count does not match the matrix size")
        return m, tuple(str(x) for x in labels)
    rows = [line.split() for line in stripped.splitlines()
            if line.strip() and not line.lstrip().startswith("#")]
    return _rows_to_matrix(rows), ()


def read_matrix(path: str) -> tuple[Matrix, tuple]:
    if path == "-":
        return parse_matrix_text(sys.stdin.read())
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_matrix_text(text)


def json_entry(q: Fraction):
    return q.numerator if q.denominator == 1 else format_rational(q)


def matrix_to_json(m: Matrix) -> list:
    return [[json_entry(x) for x in r] for r in m.to_rows()]


def matrix_to_text(m: Matrix) -> str:
    cells = [[format_rational(x) for x in r] for r in m.to_rows()]
    width = max((len(c) for r in cells for c in r), default=1)
    return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells) + "\n"

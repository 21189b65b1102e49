"""Text and JSON interchange for matrices and result objects.

Two matrix formats are accepted: a whitespace grid (one row per line,
``#`` comments and blank lines ignored) and a JSON array of row arrays.
Exact scalars render as integer or ``p/q`` strings so round-trips lose
nothing; float matrices use plain JSON numbers.  ``payload`` converts the
package's result dataclasses into JSON-ready trees for the CLI.
"""

from __future__ import annotations

import dataclasses
import enum
import hashlib
import json
from fractions import Fraction
from typing import Any

from .curves import CirclePoint
from .errors import InputError
from .linalg import Matrix
from .scalars import format_scalar, parse_scalar


def input_digest(text: str) -> str:
    """sha256 of the raw input text, for echoing provenance in output."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def parse_matrix_grid(text: str, exact: bool = True) -> Matrix:
    rows: list[list[Any]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([parse_scalar(tok, exact=exact) for tok in line.split()])
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    if not rows:
        raise InputError("no matrix rows found")
    return Matrix(rows)


def parse_matrix_json(data: Any, exact: bool = True) -> Matrix:
    if isinstance(data, dict) and "entries" in data:
        data = data["entries"]
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise InputError("JSON matrix must be a non-empty array of row arrays")
    rows = []
    for row in data:
        parsed = []
        for cell in row:
            if isinstance(cell, str):
                parsed.append(parse_scalar(cell, exact=exact))
            elif isinstance(cell, bool):
                raise InputError("matrix entries must be numbers, not booleans")
            elif isinstance(cell, int):
                parsed.append(Fraction(cell) if exact else float(cell))
            elif isinstance(cell, float):
                parsed.append(Fraction(cell) if exact else cell)
            else:
                raise InputError(f"unsupported matrix entry {cell!r}")
        rows.append(parsed)
    return Matrix(rows)


def parse_matrix(text: str, exact: bool = True) -> Matrix:
    """Auto-detect grid versus JSON by the first non-space character."""
    stripped = text.lstrip()
    if stripped.startswith(("[", "{")):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad JSON matrix: {exc}") from None
        return parse_matrix_json(data, exact=exact)
    return parse_matrix_grid(text, exact=exact)


def format_matrix_grid(m: Matrix) -> str:
    cells = [[format_scalar(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]
    widths = [max(len(cells[i][j]) for i in range(m.rows)) for j in range(m.cols)]
    return "\n".join(
        " ".join(cells[i][j].rjust(widths[j]) for j in range(m.cols))
        for i in range(m.rows)
    )


def payload(obj: Any) -> Any:
    """Recursively convert results to JSON-serializable trees."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return format_scalar(obj)
    if isinstance(obj, CirclePoint):
        return str(obj)
    if isinstance(obj, Matrix):
        return {
            "rows": obj.rows,
            "cols": obj.cols,
            "exact": obj.is_exact,
            "entries": [
                [payload(obj[i, j]) for j in range(obj.cols)] for i in range(obj.rows)
            ],
        }
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: payload(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        for name in ("ok", "passed"):
            prop = getattr(type(obj), name, None)
            if isinstance(prop, property):
                out[name] = payload(getattr(obj, name))
        return out
    if isinstance(obj, (frozenset, set)):
        return sorted((payload(x) for x in obj), key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(obj, dict):
        return {str(k): payload(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [payload(x) for x in obj]
    if hasattr(obj, "rep"):
        return payload(obj.rep)
    return str(obj)

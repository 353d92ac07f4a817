"""Matrix JSON format: ``{"rows": n, "cols": m, "data": [[re, im], ...]}``, row-major."""

import json
from pathlib import Path

import numpy as np

from .errors import ParseError

__all__ = ["matrix_to_dict", "matrix_from_dict", "load_matrix", "save_matrix"]


def matrix_to_dict(m):
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    flat = m.reshape(-1)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def _positive_int(obj, field):
    value = obj.get(field)
    if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
        raise ParseError(f"field '{field}' must be a positive integer, got {value!r}")
    return value


def matrix_from_dict(obj):
    if not isinstance(obj, dict):
        raise ParseError("matrix JSON must be an object")
    rows = _positive_int(obj, "rows")
    cols = _positive_int(obj, "cols")
    data = obj.get("data")
    if not isinstance(data, list):
        raise ParseError("field 'data' must be a list of [re, im] pairs")
    if len(data) != rows * cols:
        raise ParseError(f"field 'data' has {len(data)} entries, expected rows*cols = {rows * cols}")
    out = np.empty(rows * cols, dtype=np.complex128)
    for i, pair in enumerate(data):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise ParseError(f"field 'data' entry {i} must be a [re, im] pair of numbers")
        out[i] = complex(pair[0], pair[1])
    if not np.all(np.isfinite(out)):
        raise ParseError("field 'data' contains non-finite values")
    return out.reshape(rows, cols)


def load_matrix(path):
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    try:
        return matrix_from_dict(obj)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def save_matrix(m, path):
    Path(path).write_text(json.dumps(matrix_to_dict(m), indent=1) + "\n")

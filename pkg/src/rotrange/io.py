"""Matrix JSON files and CSV emitters.

Matrix files look like::

    {"d": 3, "entries": [[[0, 0], [1, 0], [0, 0]], ...], "label": "M(1,1,1)"}

Floats are written with Python's shortest round-trip repr, so a write/read
cycle reproduces every entry bit for bit.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import MatrixFileError


@dataclass
class MatrixFile:
    matrix: np.ndarray
    label: str | None = None
    source: str | None = None

    @property
    def d(self) -> int:
        return self.matrix.shape[0]

    def to_json(self) -> dict:
        out = {"d": self.d,
               "entries": [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix]}
        if self.label is not None:
            out["label"] = self.label
        if self.source is not None:
            out["source"] = self.source
        return out


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise MatrixFileError(f"{where}: expected a number, got {x!r}")
    if not math.isfinite(x):
        raise MatrixFileError(f"{where}: non-finite value {x!r}")
    return float(x)


def parse_matrix(obj) -> MatrixFile:
    """Validate a decoded JSON object against the matrix schema."""
    if not isinstance(obj, dict):
        raise MatrixFileError("top level must be an object")
    d = obj.get("d")
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise MatrixFileError(f"'d' must be a positive integer, got {d!r}")
    rows = obj.get("entries")
    if not isinstance(rows, list) or len(rows) != d:
        raise MatrixFileError(f"'entries' must be a list of {d} rows")
    M = np.empty((d, d), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise MatrixFileError(f"row {i} must have {d} entries")
        for j, z in enumerate(row):
            if not isinstance(z, list) or len(z) != 2:
                raise MatrixFileError(f"entry ({i}, {j}) must be a [re, im] pair")
            M[i, j] = complex(_number(z[0], f"entry ({i}, {j})"),
                              _number(z[1], f"entry ({i}, {j})"))
    label = obj.get("label")
    if label is not None and not isinstance(label, str):
        raise MatrixFileError("'label' must be a string")
    source = obj.get("source")
    return MatrixFile(M, label, None if source is None else str(source))


def read_matrix(path) -> MatrixFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path}: invalid JSON ({exc})") from exc
    return parse_matrix(obj)


def dumps_json(obj) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False, default=_default) + "\n"


def _default(o):
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def sanitize(obj):
    """Replace NaN and infinities by ``None`` so reports stay valid JSON."""
    if isinstance(obj, dict):
        return {k: sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, complex):
        return [sanitize(obj.real), sanitize(obj.imag)]
    return obj


def write_matrix(path, A, label: str | None = None, source: str | None = None) -> None:
    Path(path).write_text(dumps_json(MatrixFile(np.asarray(A, dtype=complex), label,
                                                source).to_json()))


def write_csv(path, header: list[str], rows) -> None:
    """Write rows with floats in repr form; byte-identical for identical input."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v
                        for v in row])

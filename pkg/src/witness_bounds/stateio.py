"""Reading and writing the JSON state-file format.

A state file is a JSON object::

    {"d1": 2, "d2": 2, "matrix": [[re, im], [re, im], ...]}

with ``(d1*d2)**2`` entries in row-major order.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import WitnessError
from .linalg import DensityMatrix


class StateFileError(WitnessError):
    """The file could not be parsed into a density matrix."""


def _int_field(doc: dict, name: str) -> int:
    if name not in doc:
        raise StateFileError(f"missing field '{name}'")
    v = doc[name]
    if isinstance(v, bool) or not isinstance(v, int):
        raise StateFileError(f"field '{name}' must be an integer, got {v!r}")
    if v < 2:
        raise StateFileError(f"field '{name}' must be >= 2, got {v}")
    return v


def parse_state(text: str) -> DensityMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise StateFileError("top level must be an object with fields d1, d2, matrix")
    d1 = _int_field(doc, "d1")
    d2 = _int_field(doc, "d2")
    if "matrix" not in doc:
        raise StateFileError("missing field 'matrix'")
    entries = doc["matrix"]
    n = d1 * d2
    if not isinstance(entries, list) or len(entries) != n * n:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise StateFileError(f"field 'matrix' must list {n * n} entries, got {got}")
    values = np.empty(n * n, dtype=complex)
    for k, e in enumerate(entries):
        ok = (
            isinstance(e, list)
            and len(e) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in e)
            and all(math.isfinite(x) for x in e)
        )
        if not ok:
            raise StateFileError(f"field 'matrix' entry {k} must be [real, imaginary], got {e!r}")
        values[k] = complex(e[0], e[1])
    return DensityMatrix(d1, d2, values.reshape(n, n))


def read_state(path) -> DensityMatrix:
    return parse_state(Path(path).read_text())


def dump_state(rho: DensityMatrix) -> str:
    entries = [[float(z.real), float(z.imag)] for z in rho.matrix.reshape(-1)]
    return json.dumps({"d1": rho.d1, "d2": rho.d2, "matrix": entries})


def write_state(rho: DensityMatrix, path) -> None:
    Path(path).write_text(dump_state(rho) + "\n")

"""JSON and CSV wire formats.

Matrices are ``{"dim": n, "entries": [[[re, im], ...], ...]}`` (rows outer),
maps are ``{"dim": n, "kraus": [<matrix>, ...]}``. Matrix payloads are written
at full double precision, so they round-trip exactly; report numbers use 12
significant digits in JSON and 6 in CSV.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from .channels import KrausMap
from .states import DensityMatrix


class SchemaError(ValueError):
    """Payload does not follow the wire format (a parse error, not an invariant violation)."""


def matrix_to_json(m) -> dict:
    a = np.asarray(m.mat if isinstance(m, DensityMatrix) else m, dtype=np.complex128)
    return {
        "dim": int(a.shape[0]),
        "entries": [[[float(v.real), float(v.imag)] for v in row] for row in a],
    }


def _finite_pair(entry, where: str) -> complex:
    if not isinstance(entry, (list, tuple)) or len(entry) != 2:
        raise SchemaError(f"{where}: entry must be a [re, im] pair, got {entry!r}")
    re, im = entry
    if isinstance(re, bool) or isinstance(im, bool) or not all(isinstance(c, (int, float)) for c in (re, im)):
        raise SchemaError(f"{where}: entry components must be numbers")
    if not (math.isfinite(re) and math.isfinite(im)):
        raise SchemaError(f"{where}: entry is not finite")
    return complex(re, im)


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "dim" not in obj or "entries" not in obj:
        raise SchemaError("matrix payload needs 'dim' and 'entries'")
    n = obj["dim"]
    rows = obj["entries"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError(f"'dim' must be a positive integer, got {n!r}")
    if not isinstance(rows, list) or len(rows) != n:
        raise SchemaError(f"expected {n} rows")
    out = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"row {i} must have {n} entries (matrix must be square)")
        for j, entry in enumerate(row):
            out[i, j] = _finite_pair(entry, f"entry ({i}, {j})")
    return out


def map_to_json(E: KrausMap) -> dict:
    return {"dim": E.dim, "kraus": [matrix_to_json(k) for k in E.kraus]}


def map_from_json(obj) -> KrausMap:
    if not isinstance(obj, dict) or "dim" not in obj or "kraus" not in obj:
        raise SchemaError("map payload needs 'dim' and 'kraus'")
    ops = obj["kraus"]
    if not isinstance(ops, list) or not ops:
        raise SchemaError("'kraus' must be a nonempty list of matrices")
    mats = [matrix_from_json(k) for k in ops]
    if any(m.shape[0] != obj["dim"] for m in mats):
        raise SchemaError("Kraus operator dims disagree with 'dim'")
    return KrausMap(int(obj["dim"]), tuple(mats))


def spectrum_from_json(obj) -> list[float]:
    if not isinstance(obj, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
        raise SchemaError("spectrum must be a JSON array of numbers")
    return [float(v) for v in obj]


def read_json(path) -> object:
    """Load JSON from ``path``; I/O and syntax problems surface as OSError / SchemaError."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(read_json(path))


def load_state(path) -> DensityMatrix:
    return DensityMatrix(load_matrix(path))


def load_map(path) -> KrausMap:
    return map_from_json(read_json(path))


def write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj) + "\n", encoding="utf-8")


def round_sig(v: float, digits: int = 12) -> float:
    if not math.isfinite(v) or v == 0.0:
        return v
    return float(f"{v:.{digits}g}")


def report_json(obj) -> str:
    """Serialize a report with every float rounded to 12 significant digits."""

    def conv(o):
        if isinstance(o, bool) or o is None or isinstance(o, (int, str)):
            return o
        if isinstance(o, float):
            return round_sig(o) if math.isfinite(o) else str(o)
        if isinstance(o, dict):
            return {k: conv(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [conv(v) for v in o]
        if isinstance(o, np.generic):
            return conv(o.item())
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return json.dumps(conv(obj), indent=2) + "\n"


def fmt6(v: float) -> str:
    return f"{v:.6g}"


def write_csv(fh: TextIO, header: Iterable[str], rows: Iterable[Iterable]) -> None:
    fh.write(",".join(header) + "\n")
    for row in rows:
        fh.write(",".join(fmt6(v) if isinstance(v, float) else str(v) for v in row) + "\n")

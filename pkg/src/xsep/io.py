"""Text formats: inline complex vectors, JSON state/dense/witness schemas, CSV tables.

State schema:   {"a": [4 reals], "b": [4 reals], "c": [[re, im] x 4]}
Dense schema:   {"m": [[[re, im] x 8] x 8]}
Witness schema: {"s": [4 reals], "t": [4 reals], "u": [[re, im] x 4]}
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, Sequence

import numpy as np

from .core import XState, as_cvec4, as_real4, check_dense
from .witness import Witness


class SchemaError(ValueError):
    """Input text or JSON does not follow one of the schemas."""


def parse_complex(text: str) -> complex:
    """`re` or `re+imj` (Python complex literal syntax, spaces ignored)."""
    token = text.strip().replace(" ", "")
    if not token:
        raise SchemaError("empty entry")
    try:
        value = complex(token)
    except ValueError as exc:
        raise SchemaError(f"cannot parse complex entry {text!r}") from exc
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise SchemaError(f"non-finite entry {text!r}")
    return value


def parse_cvec4(text: str) -> np.ndarray:
    """Comma-separated list of four complex entries, e.g. ``"1,1,1,-1"`` or ``"1+2j,0,0,-1j"``."""
    parts = text.split(",")
    if len(parts) != 4:
        raise SchemaError(f"expected 4 comma-separated entries, got {len(parts)}")
    return np.array([parse_complex(p) for p in parts], dtype=complex)


def _pair(x: Any, what: str) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(float(x), 0.0)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in x
    ):
        return complex(float(x[0]), float(x[1]))
    raise SchemaError(f"{what}: expected [re, im], got {x!r}")


def complex_list(x: Any, n: int, what: str) -> np.ndarray:
    if not isinstance(x, (list, tuple)) or len(x) != n:
        raise SchemaError(f"{what}: expected a list of {n} [re, im] pairs")
    out = np.array([_pair(v, what) for v in x], dtype=complex)
    if not np.all(np.isfinite(out)):
        raise SchemaError(f"{what}: non-finite entry")
    return out


def real_list(x: Any, n: int, what: str) -> np.ndarray:
    if not isinstance(x, (list, tuple)) or len(x) != n:
        raise SchemaError(f"{what}: expected a list of {n} reals")
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x):
        raise SchemaError(f"{what}: entries must be numbers")
    out = np.array(x, dtype=float)
    if not np.all(np.isfinite(out)):
        raise SchemaError(f"{what}: non-finite entry")
    return out


def encode_complex(z: Iterable[complex]) -> list[list[float]]:
    return [[float(np.real(v)), float(np.imag(v))] for v in z]


def _keys(obj: Any, required: Sequence[str], what: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{what}: expected a JSON object")
    missing = [k for k in required if k not in obj]
    if missing:
        raise SchemaError(f"{what}: missing keys {missing}")
    extra = sorted(set(obj) - set(required))
    if extra:
        raise SchemaError(f"{what}: unexpected keys {extra}")
    return obj


def state_from_json(obj: Any) -> XState:
    obj = _keys(obj, ("a", "b", "c"), "state")
    return XState(real_list(obj["a"], 4, "a"), real_list(obj["b"], 4, "b"), complex_list(obj["c"], 4, "c"))


def state_to_json(x: XState) -> dict:
    return {"a": [float(v) for v in x.a], "b": [float(v) for v in x.b], "c": encode_complex(x.c)}


def dense_from_json(obj: Any) -> np.ndarray:
    obj = _keys(obj, ("m",), "dense")
    rows = obj["m"]
    if not isinstance(rows, (list, tuple)) or len(rows) != 8:
        raise SchemaError("m: expected 8 rows")
    m = np.array([complex_list(row, 8, "m row") for row in rows])
    try:
        return check_dense(m)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def dense_to_json(m: Any) -> dict:
    return {"m": [encode_complex(row) for row in np.asarray(m, dtype=complex)]}


def witness_from_json(obj: Any) -> Witness:
    obj = _keys(obj, ("s", "t", "u"), "witness")
    try:
        return Witness(real_list(obj["s"], 4, "s"), real_list(obj["t"], 4, "t"), complex_list(obj["u"], 4, "u"))
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def witness_to_json(w: Witness) -> dict:
    return {"s": [float(v) for v in w.s], "t": [float(v) for v in w.t], "u": encode_complex(w.u)}


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg})") from exc


def read_state_file(path: str) -> XState | np.ndarray:
    """An XState for the state schema, a checked dense matrix for the dense schema."""
    obj = load_json(path)
    if isinstance(obj, dict) and "m" in obj:
        return dense_from_json(obj)
    return state_from_json(obj)


def read_vector_file(path: str) -> np.ndarray:
    """A CVec4 file: either {"c": [[re, im] x 4]} or a bare list of four pairs."""
    obj = load_json(path)
    if isinstance(obj, dict):
        obj = _keys(obj, ("c",), "vector")["c"]
    return as_cvec4(complex_list(obj, 4, "c"))


def parse_quadruple(text: str, what: str) -> np.ndarray:
    """A JSON list of four reals, or a scalar repeated four times."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what}: invalid JSON ({exc.msg})") from exc
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return as_real4([float(obj)] * 4, what)
    return real_list(obj, 4, what)


def dumps(obj: Any) -> str:
    """Canonical JSON (sorted keys, repr-exact floats) so identical inputs give identical bytes."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=True)


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def from_csv(text: str) -> tuple[list[str], list[list[str]]]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return header, [row for row in reader if row]

"""Deterministic JSON emission with 17 significant digits.

Complex numbers become ``[re, im]`` pairs and numpy values are unwrapped.
Non-finite floats are written as ``null``.
"""

from __future__ import annotations

import json
import math

import numpy as np

SCHEMA_VERSION = 1


def _float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj) -> str:
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, np.generic):
        obj = obj.item()
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, complex):
        return f"[{_float(obj.real)}, {_float(obj.imag)}]"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def document(payload: dict) -> str:
    """A versioned top-level JSON document, newline terminated."""
    return dumps({"schema": SCHEMA_VERSION, **payload}) + "\n"


def complex_matrix(M) -> list:
    """Rows of ``[re, im]`` pairs."""
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(M, dtype=complex)]

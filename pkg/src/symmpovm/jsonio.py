"""JSON encoding of matrices and states.

Schema: ``{"type": "density" | "pure" | "matrix", "rows": int, "cols": int,
"re": [...], "im": [...]}`` with row-major real and imaginary parts. Floats go
through ``repr`` so values round-trip bit-exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

KINDS = ("density", "pure", "matrix")


class SchemaError(ValueError):
    pass


def encode_matrix(m, kind: str = "matrix") -> dict:
    if kind not in KINDS:
        raise SchemaError(f"unknown type {kind!r}")
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    return {
        "type": kind,
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "re": [float(x) for x in a.real.reshape(-1)],
        "im": [float(x) for x in a.imag.reshape(-1)],
    }


def decode_matrix(obj: dict) -> tuple[str, np.ndarray]:
    """Return ``(type, array)``; pure states come back as 1-D vectors."""
    try:
        kind = obj.get("type", "matrix")
        rows, cols = int(obj["rows"]), int(obj["cols"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", [0.0] * (rows * cols)), dtype=float)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise SchemaError(f"malformed matrix object: {exc}") from exc
    if kind not in KINDS:
        raise SchemaError(f"unknown type {kind!r}; expected one of {KINDS}")
    if re.size != rows * cols or im.size != rows * cols:
        raise SchemaError(f"re/im must have rows*cols = {rows * cols} entries")
    a = (re + 1j * im).reshape(rows, cols)
    if kind == "pure":
        if cols != 1 and rows != 1:
            raise SchemaError("pure state must be a row or column vector")
        a = a.reshape(-1)
    return kind, a


def load_state(path: str | Path) -> tuple[str, np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        return decode_matrix(json.load(fh))


def save_state(path: str | Path, m, kind: str) -> None:
    Path(path).write_text(json.dumps(encode_matrix(m, kind), indent=1), encoding="utf-8")


def rational_str(x: float, max_den: int = 64, tol: float = 1e-12) -> str:
    """Render ``x`` as p/q when it is that close to one with q <= max_den."""
    f = Fraction(x).limit_denominator(max_den)
    if abs(float(f) - x) <= tol:
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    return f"{x:.6g}"


def complex_str(z: complex, max_den: int = 64) -> str:
    z = complex(z)
    if abs(z.imag) <= 1e-12:
        return rational_str(z.real, max_den)
    if abs(z.real) <= 1e-12:
        return rational_str(z.imag, max_den) + "i"
    sign = "+" if z.imag >= 0 else "-"
    return f"{rational_str(z.real, max_den)}{sign}{rational_str(abs(z.imag), max_den)}i"


def pretty_matrix(m, max_den: int = 64) -> str:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    cells = [[complex_str(z, max_den) for z in row] for row in a]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)

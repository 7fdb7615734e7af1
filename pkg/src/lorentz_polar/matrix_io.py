"""Reading and writing 4x4 matrix literals.

Two input forms are accepted, auto-detected from the first character:

* JSON: one or more concatenated values (so JSON Lines works), each either
  ``{"matrix": [[...], ...]}`` or a list of such objects.
* Plain text: whitespace-separated numbers, 16 per matrix, row-major with
  the time row first.

Numbers are written with 17 significant digits so doubles round-trip.
"""

import json
import math

import numpy as np

from .core import as_mat4

DIGITS = 17


class ParseError(ValueError):
    pass


def fmt(x):
    return format(float(x), f".{DIGITS}g")


def dumps(obj):
    """JSON encoding with every float written at 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            raise ValueError(f"cannot serialize non-finite number {obj!r}")
        return fmt(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def iter_json_values(text):
    decoder = json.JSONDecoder()
    pos = 0
    text = text.strip()
    while pos < len(text):
        try:
            value, pos = decoder.raw_decode(text, pos)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        yield value
        while pos < len(text) and text[pos].isspace():
            pos += 1


def _matrix_from_record(record):
    if not isinstance(record, dict) or "matrix" not in record:
        raise ParseError('JSON matrix records must be objects with a "matrix" field')
    try:
        return as_mat4(record["matrix"])
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad matrix literal: {exc}") from None


def read_records(text):
    """All top-level JSON objects in ``text``, flattening top-level lists."""
    records = []
    for value in iter_json_values(text):
        records.extend(value if isinstance(value, list) else [value])
    return records


def read_matrices(text):
    """Parse every matrix in ``text`` (JSON or plain-text form)."""
    stripped = text.lstrip()
    if not stripped:
        raise ParseError("no input")
    if stripped[0] in "{[":
        return [_matrix_from_record(r) for r in read_records(stripped)]
    try:
        numbers = [float(tok) for tok in stripped.split()]
    except ValueError as exc:
        raise ParseError(f"invalid number: {exc}") from None
    if len(numbers) % 16:
        raise ParseError(f"expected a multiple of 16 numbers, got {len(numbers)}")
    try:
        return [as_mat4(np.reshape(numbers[i:i + 16], (4, 4))) for i in range(0, len(numbers), 16)]
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_matrix_text(m):
    """Four lines of four numbers."""
    return "\n".join(" ".join(fmt(x) for x in row) for row in np.asarray(m))


def format_matrix_json(m):
    return dumps({"matrix": np.asarray(m)})

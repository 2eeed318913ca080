"""Canonical JSON rendering: byte-stable output, integers only.

Every ``--json`` surface in the package goes through :func:`canonical_json` so
identical inputs always produce identical bytes: keys sorted, two-space
indent, ASCII only, trailing newline.  Floats are rejected outright -- all
numeric payloads in this package are exact integers (rendered as decimal
strings when they may be large).
"""

from __future__ import annotations

import json

from ladderlab.errors import InternalError, ParseError


def _reject_floats(obj) -> None:
    if isinstance(obj, float):
        raise InternalError("floating-point value in JSON payload")
    if isinstance(obj, dict):
        for key, value in obj.items():
            _reject_floats(key)
            _reject_floats(value)
    elif isinstance(obj, (list, tuple)):
        for value in obj:
            _reject_floats(value)


def canonical_json(obj) -> str:
    """Render ``obj`` as canonical JSON text (sorted keys, stable bytes)."""
    _reject_floats(obj)
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def parse_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc

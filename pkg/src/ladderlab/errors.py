"""Error taxonomy shared by every ladderlab module.

The split mirrors how callers should react:

* :class:`ArgumentError` -- the caller passed a value outside the operation's
  contract (bad parameter range, out-of-range vertex id, ...).
* :class:`StructuralError` -- a supplied structure (certificate,
  decomposition, input pattern) violates its own invariants.
* :class:`SizeError` -- an exhaustive-search guard refused the input; the
  guard can be widened via ``LADDERLAB_SIZE_CAP`` or an explicit override.
* :class:`InternalError` -- a construction produced something that failed its
  own post-validation; this is a bug, never a user error.
* :class:`ParseError` -- a malformed text input, carrying the 1-based line
  number when known.
"""

from __future__ import annotations


class LadderlabError(Exception):
    """Base class for all ladderlab errors."""


class ArgumentError(LadderlabError, ValueError):
    """A parameter violates the operation's precondition."""


class StructuralError(LadderlabError):
    """A supplied structure violates its declared invariants."""


class SizeError(LadderlabError):
    """An exhaustive-search size guard rejected the input."""


class InternalError(LadderlabError):
    """A construction failed its own post-validation (library bug)."""


class ParseError(LadderlabError):
    """A text input could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)

"""Exceptions shared across the package.

Two failure modes are distinguished everywhere:

* bad input (unknown type label, rank out of range, ell dividing q, ...):
  plain ``ValueError`` subclasses, CLI exit code 1;
* a violated internal invariant (a cross-check that must hold mathematically
  failed at runtime): ``InvariantError``, CLI exit code 2.  An
  ``InvariantError`` always means a bug or an unsound assumption, never bad
  user input, so it is raised loudly instead of being papered over.
"""

from __future__ import annotations


class InvariantError(AssertionError):
    """A mathematical cross-check failed; the computed data is untrustworthy."""


class UnsupportedTypeError(ValueError):
    """The requested (type, rank, twist) combination is outside scope."""


class GuardExceeded(ValueError):
    """A size guard would be exceeded (group too large to enumerate, etc.)."""


def check(condition: bool, message: str) -> None:
    """Raise :class:`InvariantError` unless ``condition`` holds."""
    if not condition:
        raise InvariantError(message)

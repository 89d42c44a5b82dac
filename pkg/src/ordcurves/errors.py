"""Error taxonomy shared by the library and the CLI.

Three failure classes map onto the CLI exit codes: malformed input (2),
violated hypothesis of an operation (3), and violated internal invariant (4).
The last one always carries a machine-readable reproduction payload because
it signals a defect, not a user error.
"""

from __future__ import annotations


class InputFormatError(ValueError):
    """Unparseable input file or value; optionally carries line/column."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class HypothesisViolation(ValueError):
    """A documented precondition of an operation does not hold.

    `name` identifies the violated hypothesis so the CLI can report it.
    """

    def __init__(self, name: str, detail: str = ""):
        super().__init__(f"{name}: {detail}" if detail else name)
        self.name = name
        self.detail = detail


class InvariantViolation(AssertionError):
    """An internal invariant failed; indicates a defect in this package.

    `repro` is a JSON-serializable dict with the smallest data needed to
    reproduce the failure.
    """

    def __init__(self, name: str, repro: dict | None = None):
        super().__init__(name)
        self.name = name
        self.repro = repro or {}

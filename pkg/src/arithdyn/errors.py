"""Shared exception types.

Every error raised on a user-facing path is a subclass of ArithdynError so
the CLI can map failures to stable exit codes (input/guard problems exit 2).
"""


class ArithdynError(Exception):
    """Base class for package errors."""

    kind = "error"


class InputError(ArithdynError):
    """Malformed or inconsistent input data."""

    kind = "parse"


class GuardError(ArithdynError):
    """A desk-scale resource guard was exceeded; message names the bound."""

    kind = "guard"


class OrderNotConfirmedError(ArithdynError):
    """Sequence too short to pin down its minimal recurrence.

    Carries the tentative order found so far.
    """

    kind = "order-not-confirmed"

    def __init__(self, message: str, tentative_order: int):
        super().__init__(message)
        self.tentative_order = tentative_order


class DominanceError(ArithdynError):
    """A map (or one of its iterates) is not dominant; carries the step."""

    kind = "dominance"

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


class DegenerateError(ArithdynError):
    """A pairing or restricted Gram matrix is degenerate."""

    kind = "degenerate"

"""Error taxonomy shared by the library and the CLI.

The CLI maps these onto exit codes: InputError -> 1, CapacityError -> 2,
InvariantViolationError -> 3.
"""

from __future__ import annotations


class InputError(ValueError):
    """Malformed or out-of-contract input (bad weights, indices, points, files)."""


class CapacityError(RuntimeError):
    """Request exceeds a documented size cap (bitmask width, LP size, enumeration)."""


class InvariantViolationError(RuntimeError):
    """A guaranteed internal property failed; indicates an implementation bug."""


class CertificateError(InvariantViolationError):
    """A dual certificate failed feasibility on some subset.

    Carries the violating subset so callers can inspect the failure.
    """

    def __init__(self, message: str, violating_subset=None):
        super().__init__(message)
        self.violating_subset = violating_subset

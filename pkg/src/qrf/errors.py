"""Exception types shared across the package."""

from __future__ import annotations


class QrfError(Exception):
    """Base class for all package errors."""


class DimensionError(QrfError, ValueError):
    """Shapes or dimensions of the arguments are incompatible."""


class ValidationError(QrfError, ValueError):
    """A structural invariant of a value does not hold."""


class NotLocalizableError(ValidationError):
    """A POVM effect does not reach operator norm one at the requested point."""

    def __init__(self, point: int, defect: float):
        self.point = point
        self.defect = defect
        super().__init__(
            f"effect at point {point} is not norm-1: defect 1 - |E_x| = {defect:.6e}"
        )


class NotInvariantError(ValidationError):
    """An operator is not fixed by the stabilizer action."""

    def __init__(self, defect: float):
        self.defect = defect
        super().__init__(
            f"operator is not stabilizer-invariant: max |h.A - A| = {defect:.6e}"
        )

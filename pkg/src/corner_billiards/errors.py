"""Exception hierarchy. The CLI maps each family to an exit code."""

from __future__ import annotations


class BilliardError(Exception):
    """Base class for all errors raised by this package."""


class TableFormatError(BilliardError, ValueError):
    """Malformed table document or a table that violates its invariants."""


class GeometryError(BilliardError):
    """The geometry is infeasible for the requested operation."""

    def __init__(self, message: str, loop_id: int | None = None):
        if loop_id is not None:
            message = f"{message} (loop {loop_id})"
        super().__init__(message)
        self.loop_id = loop_id


class TableVanishesError(GeometryError):
    """No admissible centre positions remain at the requested radius."""


class ReductionError(GeometryError):
    """The offset boundary could not be assembled into closed loops."""


class SimulationError(GeometryError):
    """The event loop cannot continue (no event ahead, or pinned in a corner)."""


class InitialStateError(BilliardError, ValueError):
    """The initial ball centre does not lie in the reduced table."""


class ContractViolation(BilliardError, AssertionError):
    """An internal invariant failed; this indicates a bug, not bad input."""

"""Exception types shared across the package."""

from __future__ import annotations


class RunwaySchedError(Exception):
    """Base class for all package errors."""


class ModelMismatchError(RunwaySchedError):
    """An aircraft refers to a wake class the separation model does not define."""


class InstanceFormatError(RunwaySchedError):
    """An instance or model file is structurally invalid."""


class InfeasibleOrderError(RunwaySchedError):
    """A fixed order admits no time assignment within the windows.

    ``position`` is the 0-based index of the first aircraft in the order
    that cannot be placed; ``aircraft_id`` is its id.
    """

    def __init__(self, position: int, aircraft_id: int, message: str | None = None):
        self.position = position
        self.aircraft_id = aircraft_id
        super().__init__(
            message
            or f"no feasible time at position {position} (aircraft {aircraft_id})"
        )


class InfeasibleInstanceError(RunwaySchedError):
    """No candidate sequence could place an aircraft at all."""

    def __init__(self, aircraft_id: int, message: str | None = None):
        self.aircraft_id = aircraft_id
        super().__init__(message or f"aircraft {aircraft_id} cannot be placed")


class OracleCapError(RunwaySchedError):
    """Instance exceeds the configured size cap of an exact oracle."""


class PremiseError(RunwaySchedError):
    """A closed-form shortcut was invoked outside its validity premises."""


class ContractViolationError(RunwaySchedError):
    """Caller handed an argument that violates an operation's precondition."""


class HorizonRequiredError(RunwaySchedError):
    """MIP export needs finite windows or an explicit horizon."""

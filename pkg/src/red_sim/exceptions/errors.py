# src/red_sim/exceptions/errors.py
from typing import Optional


class RedSimError(Exception):
    """Base exception for the entanglement distribution simulator."""
    pass

class ValidationError(RedSimError):
    """Raised when a numeric input fails validation."""
    pass

class DimensionError(ValidationError):
    """Raised when subsystem dimensions do not match."""
    pass

class ImpossibleOutcomeError(RedSimError):
    """Raised when a state is requested for a zero-probability outcome."""
    pass

class DocumentError(RedSimError):
    """Raised when an input document cannot be parsed."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)

class NetworkError(RedSimError):
    """Raised when a network description is invalid."""
    pass

class UnreachableError(NetworkError):
    """Raised when no usable path connects two nodes."""
    pass

class RelationViolationError(RedSimError):
    """Raised when a verified relation exceeds its tolerance."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)

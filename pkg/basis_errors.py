#!/usr/bin/env python3
"""
Basis Entropy Errors
Exception hierarchy shared by every module of the toolkit
"""

from typing import Optional


class BasisEntropyError(Exception):
    """Root of every error raised by the toolkit"""


class InvalidStateError(BasisEntropyError):
    """A matrix failed density-matrix validation"""

    def __init__(self, quantity: str, value: float, message: Optional[str] = None):
        self.quantity = quantity
        self.value = value
        super().__init__(message or f"{quantity} = {value:.3e}")


class NonFiniteEntriesError(InvalidStateError):
    pass


class NotHermitianError(InvalidStateError):
    pass


class TraceNotOneError(InvalidStateError):
    pass


class NotPositiveSemidefiniteError(InvalidStateError):
    pass


class DimensionMismatchError(BasisEntropyError, ValueError):
    """Operands have incompatible dimensions"""


class StateParseError(BasisEntropyError):
    """A state or frame file could not be parsed"""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        location = []
        if field is not None:
            location.append(f"field '{field}'")
        if line is not None:
            location.append(f"line {line}")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")


class BasisSpecError(BasisEntropyError):
    """Invalid basis specification or non-orthonormal frame"""


class ParameterDomainError(BasisEntropyError, ValueError):
    """A parameter lies outside the domain of the formula that uses it"""

    def __init__(self, message: str, subexpression: Optional[str] = None):
        self.subexpression = subexpression
        super().__init__(message if subexpression is None else f"{message} ({subexpression})")


class RunConfigError(BasisEntropyError):
    """Bad command-line flag or run profile"""

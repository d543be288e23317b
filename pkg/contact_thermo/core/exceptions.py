"""
Custom exceptions for contact-thermo.

This module defines all custom exceptions used throughout the package,
organized in a clear hierarchy for proper error handling.
"""

from pathlib import Path
from typing import Any, Optional, Sequence


class ContactThermoError(Exception):
    """
    Base exception for all contact-thermo errors.

    All custom exceptions in this package inherit from this class,
    making it easy to catch any package-specific error.
    """

    def __init__(self, message: str, details: Optional[str] = None):
        """
        Initialize exception.

        Args:
            message: Human-readable error message
            details: Additional technical details for debugging
        """
        super().__init__(message)
        self.message = message
        self.details = details

    def __str__(self) -> str:
        """Format exception for display."""
        msg = self.message
        if self.details:
            msg += f"\nDetails: {self.details}"
        return msg


# =============================================================================
# Contract and Model Errors
# =============================================================================


class ContractViolationError(ContactThermoError):
    """Raised when inputs break an operation's preconditions."""

    def __init__(
        self,
        message: str,
        expected: Optional[Any] = None,
        actual: Optional[Any] = None,
    ):
        """
        Initialize exception.

        Args:
            message: Error message
            expected: What the operation expected (e.g. a dimension)
            actual: What it received
        """
        details = None
        if expected is not None or actual is not None:
            details = f"expected {expected}, got {actual}"
        super().__init__(message, details)
        self.expected = expected
        self.actual = actual


class ModelParameterError(ContactThermoError):
    """Raised when a model is constructed with invalid physical parameters."""

    def __init__(self, model: str, parameter: str, value: Any, reason: str):
        """
        Initialize exception.

        Args:
            model: Name of the model being built (e.g. "damped")
            parameter: Offending parameter name
            value: Offending value
            reason: Why the value is rejected
        """
        message = f"Invalid parameter '{parameter}' = {value!r} for model '{model}'"
        super().__init__(message, reason)
        self.model = model
        self.parameter = parameter
        self.value = value
        self.reason = reason


class TemperaturePositivityError(ContactThermoError):
    """Raised when a subsystem temperature leaves the physical range T > 0."""

    def __init__(self, subsystem: int, temperature: float, threshold: float):
        """
        Initialize exception.

        Args:
            subsystem: Zero-based subsystem index
            temperature: Offending temperature value
            threshold: Minimum admissible temperature
        """
        message = (
            f"Temperature of subsystem {subsystem + 1} is {temperature:.6g}, "
            f"at or below the floor {threshold:.1e}"
        )
        super().__init__(message, "heat exchange is undefined for T <= 0")
        self.subsystem = subsystem
        self.temperature = temperature
        self.threshold = threshold


# =============================================================================
# Integration Errors
# =============================================================================


class IntegrationError(ContactThermoError):
    """Base class for time-stepping errors."""


class StepFailureError(IntegrationError):
    """
    Raised when a single time step cannot be completed.

    Carries the last residual and iteration count so callers can report
    the failure without re-running the solve.
    """

    def __init__(
        self,
        reason: str,
        residual: float = float("nan"),
        iterations: int = 0,
        step_index: Optional[int] = None,
    ):
        """
        Initialize exception.

        Args:
            reason: Why the step failed
            residual: Last residual norm of the nonlinear solve
            iterations: Iterations spent before giving up
            step_index: Index k of the failed step x_k -> x_{k+1}, if known
        """
        super().__init__(reason, f"residual={residual:.3e}, iterations={iterations}")
        self.reason = reason
        self.residual = residual
        self.iterations = iterations
        self.step_index = step_index

    def __str__(self) -> str:
        """Format exception for display."""
        msg = self.message
        if self.step_index is not None:
            msg = f"[step {self.step_index}] {msg}"
        if self.details:
            msg += f"\nDetails: {self.details}"
        return msg


class UnsupportedMethodError(IntegrationError):
    """Raised when an integration method does not apply to a model."""

    def __init__(self, method: str, model: str, reason: str):
        """
        Initialize exception.

        Args:
            method: Method name (e.g. "herglotz")
            model: Model name
            reason: Why the combination is unsupported
        """
        message = f"Method '{method}' cannot integrate model '{model}'"
        super().__init__(message, reason)
        self.method = method
        self.model = model


# =============================================================================
# Configuration Errors
# =============================================================================


class ConfigurationError(ContactThermoError):
    """Raised when an experiment configuration is invalid."""

    def __init__(
        self,
        message: str,
        field: Optional[str] = None,
        line: Optional[int] = None,
        path: Optional[Path] = None,
    ):
        """
        Initialize exception.

        Args:
            message: Error message
            field: Dotted configuration field that is invalid
            line: 1-based line number in the configuration file, if known
            path: Configuration file path
        """
        parts = []
        if path is not None:
            parts.append(f"file: {path}")
        if line is not None:
            parts.append(f"line: {line}")
        if field is not None:
            parts.append(f"field: {field}")
        super().__init__(message, ", ".join(parts) or None)
        self.field = field
        self.line = line
        self.path = path


class UnknownModelError(ConfigurationError):
    """Raised when a configuration names a model that does not exist."""

    def __init__(
        self,
        name: str,
        available: Sequence[str],
        line: Optional[int] = None,
        path: Optional[Path] = None,
    ):
        """
        Initialize exception.

        Args:
            name: Requested model name
            available: Known model names
            line: Line of the name in the configuration file
            path: Configuration file path
        """
        super().__init__(
            f"Unknown model '{name}' (available: {', '.join(available)})",
            field="model.name",
            line=line,
            path=path,
        )
        self.name = name
        self.available = list(available)


class UnknownMethodError(ConfigurationError):
    """Raised when a configuration names an integration method that does not exist."""

    def __init__(
        self,
        name: str,
        available: Sequence[str],
        line: Optional[int] = None,
        path: Optional[Path] = None,
    ):
        """
        Initialize exception.

        Args:
            name: Requested method name
            available: Known method names
            line: Line of the name in the configuration file
            path: Configuration file path
        """
        super().__init__(
            f"Unknown method '{name}' (available: {', '.join(available)})",
            field="method",
            line=line,
            path=path,
        )
        self.name = name
        self.available = list(available)


# =============================================================================
# Diagnostics Errors
# =============================================================================


class InsufficientDataError(ContactThermoError):
    """Raised when a diagnostic needs more samples than it was given."""

    def __init__(self, message: str, required: int, actual: int):
        """
        Initialize exception.

        Args:
            message: Error message
            required: Minimum number of samples
            actual: Number of samples supplied
        """
        super().__init__(message, f"required at least {required}, got {actual}")
        self.required = required
        self.actual = actual


# =============================================================================
# File System Errors
# =============================================================================


class FileSystemError(ContactThermoError):
    """Base class for file system related errors."""

    def __init__(
        self, message: str, path: Optional[Path] = None, details: Optional[str] = None
    ):
        """
        Initialize exception.

        Args:
            message: Error message
            path: File or directory path related to error
            details: Additional details
        """
        super().__init__(message, details)
        self.path = path


class FilePermissionError(FileSystemError):
    """Raised when file operation fails due to permissions."""

    def __init__(self, path: Path, operation: str):
        """
        Initialize exception.

        Args:
            path: Path that couldn't be accessed
            operation: Operation that was attempted (e.g., "read", "write")
        """
        message = f"Permission denied: Cannot {operation} {path}"
        super().__init__(message, path=path)
        self.operation = operation


class FileReadError(FileSystemError):
    """Raised when file read operation fails."""

    def __init__(self, message: str, path: Optional[Path] = None):
        super().__init__(message, path=path)


class FileWriteError(FileSystemError):
    """Raised when file write operation fails."""

    def __init__(self, path: Path, reason: str):
        message = f"Failed to write to {path}: {reason}"
        super().__init__(message, path=path)

from __future__ import annotations

__all__ = (
    "AttributeParseError",
    "CheckpointError",
    "ConfigError",
    "MalformedInputError",
    "NonFiniteError",
    "ScalaError",
    "ShapeMismatchError",
    "TrainingDivergedError",
    "UndefinedMetricError",
)


class ScalaError(Exception):
    """Base exception class for scala."""

    def __str__(self) -> str:
        return "scala error"


class MalformedInputError(ScalaError):
    """Raised when an input file does not follow the expected layout."""

    def __init__(self, path: str, line: int, reason: str) -> None:
        self.path = path
        self.line = line
        self.reason = reason

    def __str__(self) -> str:
        return f"Malformed input in {self.path} at line {self.line}: {self.reason}"


class AttributeParseError(ScalaError):
    """Raised when an attribute cell cannot be parsed as a float."""

    def __init__(self, path: str, row: int, col: int, value: str) -> None:
        self.path = path
        self.row = row
        self.col = col
        self.value = value

    def __str__(self) -> str:
        return f"Cannot parse attribute {self.value!r} in {self.path} at row {self.row}, col {self.col}"


class ConfigError(ScalaError, ValueError):
    """Raised when a configuration value is invalid or cannot be satisfied."""

    def __init__(self, reason: str) -> None:
        self.reason = reason

    def __str__(self) -> str:
        return f"Invalid configuration: {self.reason}"


class ShapeMismatchError(ScalaError):
    """Raised when arrays handed to a numeric op disagree in shape."""

    def __init__(self, what: str, expected: object, got: object) -> None:
        self.what = what
        self.expected = expected
        self.got = got

    def __str__(self) -> str:
        return f"Shape mismatch for {self.what}: expected {self.expected}, got {self.got}"


class NonFiniteError(ScalaError):
    """Raised when a parameter value or gradient becomes NaN or infinite."""

    def __init__(self, name: str, where: str = "gradient") -> None:
        self.name = name
        self.where = where

    def __str__(self) -> str:
        return f"Non-finite {self.where} in parameter {self.name!r}"


class TrainingDivergedError(ScalaError):
    """Raised when the training loss becomes NaN or infinite."""

    def __init__(self, epoch: int, batch: int, loss: float) -> None:
        self.epoch = epoch
        self.batch = batch
        self.loss = loss

    def __str__(self) -> str:
        return f"Training diverged at epoch {self.epoch}, batch {self.batch} (loss={self.loss})"


class UndefinedMetricError(ScalaError):
    """Raised when a metric is undefined for the given labels."""

    def __init__(self, reason: str) -> None:
        self.reason = reason

    def __str__(self) -> str:
        return f"Metric is undefined: {self.reason}"


class CheckpointError(ScalaError):
    """Raised when a checkpoint cannot be read back."""

    def __init__(self, path: str, reason: str) -> None:
        self.path = path
        self.reason = reason

    def __str__(self) -> str:
        return f"Cannot load checkpoint {self.path}: {self.reason}"

"""rvnet.errors

Exception hierarchy for rvnet.

Every error raised by a pipeline stage derives from RvNetError and carries the
stage it escaped from plus the CLI exit code of its category:

    ParseError       2   malformed input rows
    ValidationError  3   invariant and precondition violations
    NumericError     4   degenerate variance, non-convergence, RV bound breaches
    IOFailure        5   unreadable input, unwritable output
"""

from __future__ import annotations

from typing import Optional


class RvNetError(Exception):
    """Base class for all rvnet errors."""

    exit_code: int = 1
    default_stage: str = "pipeline"

    def __init__(self, message: str, *, stage: Optional[str] = None) -> None:
        super().__init__(message)
        self.stage = stage or self.default_stage


class ParseError(RvNetError, ValueError):
    exit_code = 2
    default_stage = "ingest"


class ValidationError(RvNetError, ValueError):
    exit_code = 3
    default_stage = "validate"


class NumericError(RvNetError, ArithmeticError):
    exit_code = 4
    default_stage = "numeric"


# ================================
# Parse errors
# ================================

class MalformedRow(ParseError):
    """Bad header, bad date, non-numeric price or wrong column count."""

    def __init__(
        self, message: str, *, line: Optional[int] = None, stage: Optional[str] = None
    ) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message, stage=stage)


class NonPositivePrice(ParseError):
    def __init__(
        self,
        message: str,
        *,
        asset_code: Optional[str] = None,
        line: Optional[int] = None,
        stage: Optional[str] = None,
    ) -> None:
        self.asset_code = asset_code
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message, stage=stage)


class DuplicateKey(ParseError):
    def __init__(
        self, message: str, *, line: Optional[int] = None, stage: Optional[str] = None
    ) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message, stage=stage)


# ================================
# Validation errors
# ================================

class InsufficientOverlap(ValidationError):
    pass


class LeadingGap(ValidationError):
    def __init__(self, asset_code: str, first_date: str) -> None:
        self.asset_code = asset_code
        super().__init__(
            f"asset {asset_code} has no quote on the first grid date {first_date}; "
            "forward fill cannot seed it"
        )


class ConstantSeries(ValidationError):
    def __init__(self, asset_code: str, column: str) -> None:
        self.asset_code = asset_code
        self.column = column
        super().__init__(f"asset {asset_code} has a constant {column} series over the panel")


class PanelInvariantViolation(ValidationError):
    pass


class SeriesTooShort(ValidationError):
    pass


class RowCountMismatch(ValidationError):
    pass


class TooFewRows(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class TooLarge(ValidationError):
    pass


class BadK(ValidationError):
    pass


class BadM(ValidationError):
    pass


class MeasureMismatch(ValidationError):
    pass


class BadDimensions(ValidationError):
    default_stage = "fixture"


# ================================
# Numeric errors
# ================================

class DegenerateVariance(NumericError):
    def __init__(self, message: str, *, asset_code: Optional[str] = None) -> None:
        self.asset_code = asset_code
        super().__init__(message)


class NoConvergence(NumericError):
    def __init__(self, iterations: int, residual: float) -> None:
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(residual {residual:.3e})"
        )


class RvBoundViolation(NumericError):
    """RV escaped [0, 1] by more than rounding can explain."""


class InvalidTree(ValidationError):
    """Edge list is not a spanning tree of its node set."""


# ================================
# I/O
# ================================

class IOFailure(RvNetError, OSError):
    """Reading the input or writing an output file failed."""

    exit_code = 5
    default_stage = "io"

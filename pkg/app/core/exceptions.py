from typing import Any, Optional


class QuiverAlgebraError(Exception):
    """Base error; exit_code is what the CLI returns when it escapes."""

    def __init__(self, message: str, exit_code: int = 1):
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code


# Usage and parse errors (exit 2)


class SpecParseError(QuiverAlgebraError):
    def __init__(
        self,
        message: str,
        location: Optional[str] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
        exit_code: int = 2,
    ):
        where = location or ""
        if line is not None:
            where += f" line {line}"
        if column is not None:
            where += f" column {column}"
        super().__init__(f"{where.strip()}: {message}" if where.strip() else message, exit_code)
        self.location = location
        self.line = line
        self.column = column


class ValidationError(QuiverAlgebraError):
    def __init__(self, message: str, exit_code: int = 2):
        super().__init__(message, exit_code)


class FieldMismatchError(ValidationError):
    pass


class CharacteristicError(ValidationError):
    pass


class DegreeOutOfRangeError(ValidationError):
    pass


class AmbiguousLeadingTermError(ValidationError):
    pass


class NonQuadraticError(ValidationError):
    pass


class PreconditionError(ValidationError):
    pass


class ManualResolutionError(ValidationError):
    pass


# Mathematical failures (exit 1)


class RewriteLimitError(QuiverAlgebraError):
    pass


class BasisLimitError(QuiverAlgebraError):
    pass


class SolverLimitError(QuiverAlgebraError):
    pass


class DiamondError(QuiverAlgebraError):
    def __init__(self, message: str, report: Any = None, exit_code: int = 1):
        super().__init__(message, exit_code)
        self.report = report


class VerificationError(QuiverAlgebraError):
    def __init__(self, message: str, report: Any = None, exit_code: int = 1):
        super().__init__(message, exit_code)
        self.report = report


class NoSolutionError(QuiverAlgebraError):
    def __init__(self, message: str, degree: Optional[int] = None, generator: Optional[int] = None):
        super().__init__(message, 1)
        self.degree = degree
        self.generator = generator


class RecurrenceInapplicableError(QuiverAlgebraError):
    pass


class RecurrenceInconsistencyError(QuiverAlgebraError):
    pass


class CorrespondenceError(QuiverAlgebraError):
    pass

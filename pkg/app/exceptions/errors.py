from typing import Optional

from fastapi import status
from fastapi.responses import JSONResponse


class ApplicationException(Exception):
    exit_code: int = 2

    def __init__(self, message: str, status_code: int = status.HTTP_400_BAD_REQUEST):
        super().__init__(message)
        self.message = message
        self.status_code = status_code

    def to_response(self):
        return JSONResponse(
            status_code=self.status_code,
            content={"error": self.message}
        )


class InputFormatError(ApplicationException):
    """Malformed graph file or certificate document."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, status.HTTP_400_BAD_REQUEST)


class PreconditionError(ApplicationException):
    """An operation was called outside its documented domain."""

    def __init__(self, message: str):
        super().__init__(message, status.HTTP_400_BAD_REQUEST)


class GraphClassMismatch(ApplicationException):
    def __init__(self, message: str):
        super().__init__(message, status.HTTP_422_UNPROCESSABLE_ENTITY)


class EmbeddingError(ApplicationException):
    """Rotation system is not a valid plane embedding."""

    def __init__(self, message: str):
        super().__init__(message, status.HTTP_422_UNPROCESSABLE_ENTITY)


class FormulaInputError(ApplicationException):
    def __init__(self, message: str):
        super().__init__(message, status.HTTP_400_BAD_REQUEST)


class CatalogError(ApplicationException):
    def __init__(self, message: str):
        super().__init__(message, status.HTTP_500_INTERNAL_SERVER_ERROR)


class ReductionError(ApplicationException):
    """A rule's accounting or lift instruction failed on a concrete match."""

    def __init__(self, message: str):
        super().__init__(message, status.HTTP_500_INTERNAL_SERVER_ERROR)


class RuleInapplicable(ApplicationException):
    """Guarded surgery refused; matchers treat this as 'no match'."""

    def __init__(self, message: str, cycle: Optional[list] = None):
        self.cycle = cycle or []
        super().__init__(message, status.HTTP_409_CONFLICT)

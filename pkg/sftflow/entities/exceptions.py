"""Exceptions raised by sftflow."""

from beartype.typing import Optional


class SFTFlowError(Exception):
    """Base class for sftflow errors."""


class DimensionError(SFTFlowError, ValueError):
    """Non-square input, or a shape or length mismatch."""


class HypothesisError(SFTFlowError, ValueError):
    """A standing hypothesis on a matrix or ceiling is violated."""

    def __init__(self, matrix_name: str, reason: str) -> None:
        self.matrix_name = matrix_name
        self.reason = reason
        super().__init__(f"{matrix_name}: {reason}")


class ContextMismatchError(SFTFlowError, ValueError):
    """Inductive-limit elements live over different matrices."""


class CertificateError(SFTFlowError, ValueError):
    """A certificate fails verification where a valid one is required."""

    def __init__(self, relation: str) -> None:
        self.relation = relation
        super().__init__(f"Invalid certificate: {relation}")


class EmptyPresentationError(SFTFlowError, ValueError):
    """No admissible words of the requested length."""


class MatrixParseError(SFTFlowError, ValueError):
    """Malformed matrix or certificate file."""

    def __init__(
        self,
        path: str,
        reason: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        self.path = path
        self.reason = reason
        self.line = line
        self.column = column
        location = path
        if line is not None:
            location += f":{line}"
            if column is not None:
                location += f":{column}"
        super().__init__(f"{location}: {reason}")


class SearchSpaceError(SFTFlowError, RuntimeError):
    """Bounded witness search refused because the space is too large."""


class ArgumentError(SFTFlowError, ValueError):
    """An option, parameter or environment setting is out of range."""

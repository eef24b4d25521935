"""Enums for sftflow."""

from enum import Enum, IntEnum


class Transition(Enum):
    """Connecting map of a dimension-group inductive limit.

    TRANSPOSE drives Delta_A = lim(Z^N, A^t); DIRECT drives
    Delta_{A^t} = lim(Z^N, A).
    """

    TRANSPOSE = "transpose"
    DIRECT = "direct"


class KClassVariant(Enum):
    """Weights used for the K-theory class of a suspension."""

    DISPLAYED = "displayed"
    CHAIN = "chain"


class MoveKind(Enum):
    """One-step flow-equivalence moves."""

    SYMBOL_EXPANSION = "symbol_expansion"
    OUT_SPLIT = "out_split"
    IN_SPLIT = "in_split"


class FileFormat(Enum):
    """Matrix file formats."""

    TEXT = "text"
    JSON = "json"


class Status(Enum):
    """Verdicts printed by the command line."""

    PASS = "PASS"
    FAIL = "FAIL"
    EQUIVALENT = "EQUIVALENT"
    NOT_EQUIVALENT = "NOT-EQUIVALENT"


class ExitCode(IntEnum):
    """Process exit codes of the command line."""

    OK = 0
    FAIL = 1
    PARSE_ERROR = 2
    HYPOTHESIS_ERROR = 3

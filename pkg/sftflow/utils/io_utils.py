"""Module for reading and writing matrix and certificate files.

Text form: the size N on the first line, then N lines of N space-separated
0/1 entries. JSON form: an object with "size", "entries" (row-major), and
optional "labels" and "ceiling". Canonical output is ASCII with LF line
endings and single spaces.
"""

import json
from json.decoder import JSONDecodeError
from pathlib import Path

from beartype import beartype
from beartype.typing import Any, Optional

from sftflow.entities.dataclasses import (
    BinMatrix,
    CeilingFunction,
    IntMatrix,
    MatrixFile,
    SECertificate,
)
from sftflow.entities.enums import FileFormat
from sftflow.entities.exceptions import (
    DimensionError,
    HypothesisError,
    MatrixParseError,
)
from sftflow.utils.logger_utils import structured_logger


def _fail(
    path: str, reason: str, line: Optional[int] = None, column: Optional[int] = None
) -> MatrixParseError:
    structured_logger.error(
        message="Failed to parse file",
        file=path,
        reason=reason,
        line=line,
        column=column,
    )
    return MatrixParseError(path, reason, line=line, column=column)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise _fail(path, "file not found") from e
    except UnicodeDecodeError as e:
        raise _fail(path, "file is not valid UTF-8 text") from e


def _tokens(line: str) -> list[tuple[int, str]]:
    """Whitespace-separated tokens with their 1-based columns."""
    tokens = []
    column = 0
    for token in line.split():
        column = line.index(token, column)
        tokens.append((column + 1, token))
        column += len(token)
    return tokens


def parse_text_matrix(text: str, path: str = "<text>") -> BinMatrix:
    """Parses the plain text form.

    Raises:
        MatrixParseError: With the line and column of the first problem.
    """
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise _fail(path, "empty file", line=1, column=1)
    header = _tokens(lines[0])
    if len(header) != 1 or not (header[0][1].isascii() and header[0][1].isdigit()):
        raise _fail(path, "first line must hold the matrix size", line=1, column=1)
    size = int(header[0][1])
    if size < 1:
        raise _fail(path, "matrix size must be positive", line=1, column=header[0][0])
    rows = []
    for number in range(2, size + 2):
        if number > len(lines):
            raise _fail(path, f"expected {size} rows, found {len(rows)}", line=number)
        tokens = _tokens(lines[number - 1])
        row = []
        for column, token in tokens:
            if token not in ("0", "1"):
                raise _fail(
                    path, f"entry {token!r} is not 0 or 1", line=number, column=column
                )
            row.append(int(token))
        if len(row) != size:
            column = tokens[size][0] if len(row) > size else len(lines[number - 1]) + 1
            raise _fail(
                path,
                f"expected {size} entries, found {len(row)}",
                line=number,
                column=column,
            )
        rows.append(row)
    for number in range(size + 2, len(lines) + 1):
        if lines[number - 1].strip():
            raise _fail(
                path, "unexpected content after the last row", line=number, column=1
            )
    return BinMatrix.from_rows(rows)


def _int_list(value: Any, path: str, field: str) -> list[int]:
    if not isinstance(value, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in value
    ):
        raise _fail(path, f'"{field}" must be a list of integers')
    return value


def parse_json_matrix(text: str, path: str = "<json>") -> MatrixFile:
    """Parses the JSON form, ceiling included.

    Raises:
        MatrixParseError: For malformed JSON (with line and column) or fields.
        HypothesisError: For a non-positive ceiling value.
    """
    try:
        data = json.loads(text)
    except JSONDecodeError as e:
        raise _fail(path, e.msg, line=e.lineno, column=e.colno) from e
    if not isinstance(data, dict):
        raise _fail(path, "top level must be an object")
    size = data.get("size")
    if not isinstance(size, int) or isinstance(size, bool) or size < 1:
        raise _fail(path, '"size" must be a positive integer')
    entries = _int_list(data.get("entries"), path, "entries")
    labels = data.get("labels")
    if labels is not None and (
        not isinstance(labels, list) or not all(isinstance(x, str) for x in labels)
    ):
        raise _fail(path, '"labels" must be a list of strings')
    try:
        matrix = BinMatrix(size, tuple(entries), tuple(labels) if labels else None)
    except (DimensionError, HypothesisError) as e:
        raise _fail(path, str(e)) from e
    ceiling = None
    if "ceiling" in data:
        values = _int_list(data["ceiling"], path, "ceiling")
        if len(values) != size:
            raise _fail(path, f'"ceiling" has {len(values)} values for {size} states')
        ceiling = CeilingFunction(tuple(values))
    return MatrixFile(matrix=matrix, ceiling=ceiling)


def detect_format(path: str, text: str) -> FileFormat:
    """JSON when the suffix says so or the content opens an object."""
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return FileFormat.JSON
    return FileFormat.TEXT


@beartype
def read_matrix_file(path: str) -> MatrixFile:
    """Reads a matrix file in either form.

    Raises:
        MatrixParseError: If the file is missing or malformed.
    """
    text = _read(path)
    if detect_format(path, text) is FileFormat.JSON:
        return parse_json_matrix(text, path)
    return MatrixFile(matrix=parse_text_matrix(text, path))


@beartype
def read_matrix(path: str) -> BinMatrix:
    """Reads only the matrix from a file in either form; a ceiling is ignored."""
    return read_matrix_file(path).matrix


@beartype
def format_matrix(
    A: BinMatrix,
    file_format: FileFormat = FileFormat.TEXT,
    ceiling: Optional[CeilingFunction] = None,
) -> str:
    """Canonical file form of A; labels and ceiling only survive in JSON."""
    if file_format is FileFormat.TEXT:
        return f"{A.size}\n{A}\n"
    data: dict[str, Any] = {"size": A.size, "entries": list(A.entries)}
    if A.labels is not None:
        data["labels"] = list(A.labels)
    if ceiling is not None:
        data["ceiling"] = list(ceiling.values)
    return json.dumps(data, ensure_ascii=True) + "\n"


@beartype
def write_matrix(
    path: str,
    A: BinMatrix,
    file_format: FileFormat = FileFormat.TEXT,
    ceiling: Optional[CeilingFunction] = None,
) -> None:
    """Writes A in canonical form to path."""
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(format_matrix(A, file_format, ceiling))
    structured_logger.debug(message="Wrote matrix", file=path, size=A.size)


def _int_rows(value: Any, path: str, field: str) -> IntMatrix:
    if not isinstance(value, list) or not value:
        raise _fail(path, f'"{field}" must be a nonempty list of rows')
    rows = [_int_list(row, path, field) for row in value]
    try:
        return IntMatrix.from_rows(rows)
    except DimensionError as e:
        raise _fail(path, f'"{field}": {e}') from e


@beartype
def read_certificate(path: str) -> SECertificate:
    """Reads {"H": [[...]], "K": [[...]], "lag": l}.

    Raises:
        MatrixParseError: If the file is missing or malformed.
    """
    text = _read(path)
    try:
        data = json.loads(text)
    except JSONDecodeError as e:
        raise _fail(path, e.msg, line=e.lineno, column=e.colno) from e
    if not isinstance(data, dict):
        raise _fail(path, "top level must be an object")
    lag = data.get("lag")
    if not isinstance(lag, int) or isinstance(lag, bool):
        raise _fail(path, '"lag" must be an integer')
    return SECertificate(
        H=_int_rows(data.get("H"), path, "H"),
        K=_int_rows(data.get("K"), path, "K"),
        lag=lag,
    )


@beartype
def write_certificate(path: str, cert: SECertificate) -> None:
    """Writes a certificate as one line of JSON."""
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(json.dumps(cert.as_dict()) + "\n")

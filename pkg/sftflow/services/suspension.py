"""Discrete suspensions: ceiling functions, the matrix A_f and cocycle sums."""

from beartype import beartype
from beartype.typing import Mapping, Optional, Sequence

from sftflow.entities.dataclasses import BinMatrix, CeilingFunction
from sftflow.entities.exceptions import ArgumentError, DimensionError, HypothesisError
from sftflow.services.markov_core import higher_block, word_label
from sftflow.utils.logger_utils import structured_logger


@beartype
def ceiling_from_values(values: Sequence[int], size: int) -> CeilingFunction:
    """Validates a user-supplied ceiling against the matrix size.

    Raises:
        DimensionError: If the lengths differ.
    """
    if len(values) != size:
        structured_logger.error(
            message="Ceiling size mismatch", ceiling=list(values), size=size
        )
        raise DimensionError(f"Ceiling has {len(values)} values for {size} states")
    return CeilingFunction(tuple(values))


def suspension_labels(f: CeilingFunction) -> list[str]:
    """Vertex labels j_i in the order 1_0..1_{m_1}, 2_0, ..., N_{m_N}."""
    return [f"{j + 1}_{i}" for j, fj in enumerate(f.values) for i in range(fj)]


@beartype
def suspend(A: BinMatrix, f: CeilingFunction) -> BinMatrix:
    """Suspension matrix A_f of size f_1 + ... + f_N.

    State j becomes the chain j_0 -> j_1 -> ... -> j_{m_j}; the last vertex
    j_{m_j} inherits the out-edges of j, landing on the heads k_0.

    Raises:
        DimensionError: If f does not have one value per state.
    """
    if f.size != A.size:
        structured_logger.error(
            message="Ceiling size mismatch", ceiling=list(f.values), size=A.size
        )
        raise DimensionError(f"Ceiling has {f.size} values for {A.size} states")
    heads = []
    offset = 0
    for fj in f.values:
        heads.append(offset)
        offset += fj
    total = offset
    rows = [[0] * total for _ in range(total)]
    for j in range(A.size):
        start = heads[j]
        for i in range(f.values[j] - 1):
            rows[start + i][start + i + 1] = 1
        tail = start + f.values[j] - 1
        for k in A.successors(j):
            rows[tail][heads[k]] = 1
    return BinMatrix.from_rows(rows, labels=suspension_labels(f))


@beartype
def cocycle_sum(
    f: CeilingFunction,
    symbols: Sequence[int],
    n: int,
    origin: Optional[int] = None,
) -> int:
    """Integer cocycle f^n on a finite window of a point.

    f^n(x) = f(x_0) + ... + f(x_{n-1}) for n >= 1, 0 for n = 0 and
    -(f(x_n) + ... + f(x_{-1})) for n <= -1.

    Args:
        f: Ceiling on coordinate 0.
        symbols: 1-based states of consecutive coordinates.
        n: Number of steps.
        origin: Index of coordinate 0 in `symbols`; defaults to 0 for n >= 0
            and to len(symbols) for n < 0 (the window ends at x_{-1}).

    Raises:
        ArgumentError: If the window does not cover the coordinates needed.
    """
    if origin is None:
        origin = 0 if n >= 0 else len(symbols)
    low, high = (origin, origin + n) if n >= 0 else (origin + n, origin)
    if low < 0 or high > len(symbols):
        structured_logger.error(
            message="Insufficient symbols for cocycle",
            n=n,
            origin=origin,
            available=len(symbols),
        )
        raise ArgumentError(
            f"f^{n} needs coordinates {low - origin}..{high - origin - 1}, "
            f"window holds {len(symbols)} symbols at origin {origin}"
        )
    for x in symbols[low:high]:
        if not 1 <= x <= f.size:
            raise ArgumentError(f"Symbol {x} outside 1..{f.size}")
    total = sum(f(x - 1) for x in symbols[low:high])
    return total if n >= 0 else -total


@beartype
def reduce_to_markov_ceiling(
    A: BinMatrix, f: Mapping[tuple[int, ...], int]
) -> tuple[BinMatrix, CeilingFunction]:
    """Rewrites a ceiling on k-windows as a ceiling on coordinate 0.

    Args:
        A: Transition matrix.
        f: Map from every admissible k-word (1-based symbols) to a positive
            integer; k is the common word length.

    Returns:
        The k-block matrix and the ceiling assigning each word its f-value.

    Raises:
        HypothesisError: If the words have mixed lengths, miss an admissible
            word or a value is not positive.
        EmptyPresentationError: If A has no admissible k-word.
    """
    lengths = {len(word) for word in f}
    if len(lengths) != 1:
        structured_logger.error(message="Mixed window lengths", lengths=sorted(lengths))
        raise HypothesisError(
            "ceiling", f"words must share one length, got {sorted(lengths)}"
        )
    (k,) = lengths
    presentation = higher_block(A, k)
    values = []
    for word in presentation.words:
        key = tuple(x + 1 for x in word)
        if key not in f:
            structured_logger.error(
                message="Ceiling misses a word", word=word_label(word, A.size)
            )
            raise HypothesisError(
                "ceiling", f"no value for word {word_label(word, A.size)}"
            )
        values.append(f[key])
    if any(v < 1 for v in values):
        raise HypothesisError("ceiling", f"non-positive ceiling values {values}")
    return presentation.matrix, CeilingFunction(tuple(values))

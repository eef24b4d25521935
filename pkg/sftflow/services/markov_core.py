"""0-1 transition matrices as Markov shifts: structural predicates and presentations."""

from math import gcd

import networkx as nx
from beartype import beartype

from sftflow.entities.dataclasses import BinMatrix, WordPresentation
from sftflow.entities.exceptions import (
    ArgumentError,
    EmptyPresentationError,
    HypothesisError,
)
from sftflow.utils.logger_utils import structured_logger


def to_graph(A: BinMatrix) -> nx.DiGraph:
    """Directed graph of A on the 0-based states."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(A.size))
    graph.add_edges_from(
        (i, j) for i in range(A.size) for j in A.successors(i)
    )
    return graph


@beartype
def is_irreducible(A: BinMatrix) -> bool:
    """True iff the graph of A is strongly connected and carries an edge.

    The 1x1 matrix [0] has no cycle at all and counts as reducible.
    """
    if not any(A.entries):
        return False
    return nx.is_strongly_connected(to_graph(A))


@beartype
def is_permutation(A: BinMatrix) -> bool:
    """True iff every row and every column holds exactly one 1."""
    columns = A.transpose()
    return all(A.out_degree(i) == 1 for i in range(A.size)) and all(
        columns.out_degree(j) == 1 for j in range(A.size)
    )


@beartype
def period(A: BinMatrix) -> int:
    """Gcd of the cycle lengths of an irreducible matrix.

    BFS levels from state 0 are taken; every edge (u, v) contributes
    level(u) + 1 - level(v).

    Raises:
        HypothesisError: If A is reducible.
    """
    if not is_irreducible(A):
        structured_logger.error(message="Period of a reducible matrix", size=A.size)
        raise HypothesisError("matrix", "period needs an irreducible matrix")
    levels = nx.single_source_shortest_path_length(to_graph(A), 0)
    result = 0
    for u in range(A.size):
        for v in A.successors(u):
            result = gcd(result, levels[u] + 1 - levels[v])
    return result


@beartype
def is_aperiodic(A: BinMatrix) -> bool:
    """True iff the period is 1."""
    return period(A) == 1


@beartype
def out_degrees(A: BinMatrix) -> tuple[int, ...]:
    """Row sums of A, one per state."""
    return tuple(A.out_degree(i) for i in range(A.size))


@beartype
def admissible_words(A: BinMatrix, k: int) -> list[tuple[int, ...]]:
    """All words x_1..x_k with A(x_i, x_{i+1}) = 1, lexicographic.

    Symbols are 0-based; use `word_label` for the 1-based form.
    """
    if k < 1:
        raise ArgumentError(f"Word length must be positive, got {k}")
    words = [(i,) for i in range(A.size)]
    for _ in range(k - 1):
        words = [w + (j,) for w in words for j in A.successors(w[-1])]
    return words


def word_label(word: tuple[int, ...], size: int) -> str:
    """1-based text form of a word: "12" for single-digit symbols, else "1.12"."""
    symbols = [str(x + 1) for x in word]
    return "".join(symbols) if size <= 9 else ".".join(symbols)


@beartype
def higher_block(A: BinMatrix, k: int) -> WordPresentation:
    """k-th higher block presentation.

    State w -> w' iff w and w' overlap in k - 1 symbols. k = 1 returns A with
    single-symbol words.

    Raises:
        EmptyPresentationError: If A has no admissible word of length k.
    """
    words = admissible_words(A, k)
    if not words:
        structured_logger.error(message="No admissible words", k=k, size=A.size)
        raise EmptyPresentationError(f"No admissible words of length {k}")
    labels = [word_label(w, A.size) for w in words]
    if k == 1:
        return WordPresentation(
            k=1,
            words=tuple(words),
            matrix=BinMatrix(A.size, A.entries, A.labels or tuple(labels)),
        )
    index_by_prefix: dict[tuple[int, ...], list[int]] = {}
    for index, w in enumerate(words):
        index_by_prefix.setdefault(w[:-1], []).append(index)
    rows = [[0] * len(words) for _ in words]
    for i, w in enumerate(words):
        for j in index_by_prefix.get(w[1:], []):
            rows[i][j] = 1
    return WordPresentation(
        k=k,
        words=tuple(words),
        matrix=BinMatrix.from_rows(rows, labels=labels),
    )

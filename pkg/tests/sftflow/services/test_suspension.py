"""Tests for discrete suspensions and integer cocycles."""

import pytest

from sftflow.entities.dataclasses import BinMatrix, CeilingFunction
from sftflow.entities.exceptions import ArgumentError, DimensionError, HypothesisError
from sftflow.services.markov_core import higher_block, is_irreducible
from sftflow.services.suspension import (
    ceiling_from_values,
    cocycle_sum,
    reduce_to_markov_ceiling,
    suspend,
    suspension_labels,
)
from tests.sftflow.testing_utils import (
    random_bin_matrix,
    random_ceiling,
    random_irreducible,
)


def test_suspend_trivial_ceiling(golden):
    A_f = suspend(golden, CeilingFunction((1, 1)))
    assert A_f.entries == golden.entries
    assert A_f.labels == ("1_0", "2_0")


@pytest.mark.parametrize(
    "rows, ceiling, expected, labels",
    [
        (
            [[1, 1], [1, 0]],
            (2, 1),
            [[0, 1, 0], [1, 0, 1], [1, 0, 0]],
            ("1_0", "1_1", "2_0"),
        ),
        (
            [[1, 1], [1, 1]],
            (2, 2),
            [[0, 1, 0, 0], [1, 0, 1, 0], [0, 0, 0, 1], [1, 0, 1, 0]],
            ("1_0", "1_1", "2_0", "2_1"),
        ),
    ],
)
def test_suspend(rows, ceiling, expected, labels):
    A_f = suspend(BinMatrix.from_rows(rows), CeilingFunction(ceiling))
    assert A_f.to_rows() == expected
    assert A_f.labels == labels


def test_suspend_size_and_row_sums(rng):
    for _ in range(50):
        A = random_irreducible(rng)
        f = random_ceiling(rng, A.size)
        A_f = suspend(A, f)
        assert A_f.size == sum(f.values)
        assert len(suspension_labels(f)) == A_f.size
        assert sum(A_f.entries) == sum(A.entries) + sum(f.m)


def test_suspend_errors(golden):
    with pytest.raises(DimensionError):
        suspend(golden, CeilingFunction((1, 1, 1)))
    with pytest.raises(HypothesisError):
        CeilingFunction((0, 1))
    with pytest.raises(DimensionError):
        ceiling_from_values((2,), golden.size)
    assert ceiling_from_values((2, 1), golden.size) == CeilingFunction((2, 1))


@pytest.mark.parametrize(
    "n, expected",
    [(0, 0), (1, 2), (2, 3), (3, 5), (-1, -2), (-2, -3)],
)
def test_cocycle_sum(n, expected):
    f = CeilingFunction((2, 1))
    assert cocycle_sum(f, (1, 2, 1), n) == expected


def test_cocycle_identity(rng):
    """f^(n+m)(x) = f^n(x) + f^m(shift^n x) across negative indices too."""
    for _ in range(100):
        f = random_ceiling(rng, 3)
        symbols = tuple(rng.randint(1, 3) for _ in range(12))
        n, m = rng.randint(-3, 3), rng.randint(-3, 3)
        assert cocycle_sum(f, symbols, n + m, origin=6) == cocycle_sum(
            f, symbols, n, origin=6
        ) + cocycle_sum(f, symbols, m, origin=6 + n)


def test_cocycle_sum_errors():
    f = CeilingFunction((2, 1))
    with pytest.raises(ArgumentError):
        cocycle_sum(f, (1, 2), 3)
    with pytest.raises(ArgumentError):
        cocycle_sum(f, (1, 2), -1, origin=0)
    with pytest.raises(ArgumentError):
        cocycle_sum(f, (1, 3), 2)


def test_reduce_to_markov_ceiling(golden):
    matrix, ceiling = reduce_to_markov_ceiling(
        golden, {(1, 1): 1, (1, 2): 2, (2, 1): 3}
    )
    assert matrix == higher_block(golden, 2).matrix
    assert ceiling == CeilingFunction((1, 2, 3))


@pytest.mark.parametrize(
    "f, error",
    [
        ({(1,): 1, (1, 2): 2}, HypothesisError),
        ({(1, 1): 1, (1, 2): 2}, HypothesisError),
        ({(1, 1): 1, (1, 2): 0, (2, 1): 1}, HypothesisError),
    ],
)
def test_reduce_to_markov_ceiling_errors(golden, f, error):
    with pytest.raises(error):
        reduce_to_markov_ceiling(golden, f)


def test_suspension_keeps_irreducibility(rng):
    for _ in range(100):
        A = random_bin_matrix(rng, rng.randint(1, 5), density=rng.choice([0.3, 0.6]))
        A_f = suspend(A, random_ceiling(rng, A.size))
        assert is_irreducible(A_f) == is_irreducible(A)

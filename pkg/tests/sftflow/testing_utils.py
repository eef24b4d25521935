"""Random generators and brute-force oracles for the property tests."""

import random
from typing import Optional

from sftflow.entities.dataclasses import (
    BinMatrix,
    CeilingFunction,
    ElementarySSE,
    IntMatrix,
)
from sftflow.services.markov_core import is_irreducible, is_permutation


def random_int_matrix(
    rng: random.Random, rows: int, cols: int, low: int = -5, high: int = 5
) -> IntMatrix:
    return IntMatrix(
        rows, cols, tuple(rng.randint(low, high) for _ in range(rows * cols))
    )


def random_bin_matrix(
    rng: random.Random, size: int, density: float = 0.5
) -> BinMatrix:
    entries = tuple(int(rng.random() < density) for _ in range(size * size))
    return BinMatrix(size, entries)


def random_irreducible(
    rng: random.Random, max_size: int = 6, min_size: int = 2
) -> BinMatrix:
    """Irreducible non-permutation 0-1 matrix, by rejection."""
    while True:
        size = rng.randint(min_size, max_size)
        A = random_bin_matrix(rng, size, density=rng.choice([0.35, 0.5, 0.65]))
        if is_irreducible(A) and not is_permutation(A):
            return A


def random_ceiling(
    rng: random.Random, size: int, max_value: int = 4
) -> CeilingFunction:
    return CeilingFunction(tuple(rng.randint(1, max_value) for _ in range(size)))


def random_factorization(
    rng: random.Random, attempts: int = 10_000
) -> Optional[tuple[BinMatrix, BinMatrix, ElementarySSE]]:
    """0-1 matrices R, S whose products RS and SR are again 0-1."""
    for _ in range(attempts):
        n, m = rng.randint(2, 3), rng.randint(2, 4)
        R = IntMatrix(n, m, tuple(int(rng.random() < 0.4) for _ in range(n * m)))
        S = IntMatrix(m, n, tuple(int(rng.random() < 0.4) for _ in range(m * n)))
        RS, SR = R @ S, S @ R
        if RS.is_zero() or not all(x <= 1 for x in RS.entries + SR.entries):
            continue
        return (
            BinMatrix.from_int_matrix(RS),
            BinMatrix.from_int_matrix(SR),
            ElementarySSE(R=R, S=S),
        )
    return None


def cofactor_det(rows: list[list[int]]) -> int:
    """Determinant by Laplace expansion along the first row."""
    if not rows:
        return 1
    if len(rows) == 1:
        return rows[0][0]
    total = 0
    for j, x in enumerate(rows[0]):
        if x:
            minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
            total += (-1) ** j * x * cofactor_det(minor)
    return total

"""Exact integer linear algebra.

Everything here works on Python integers (or Fractions for interpolation);
there is no floating point anywhere. All functions are pure.
"""

from fractions import Fraction

import numpy as np
from beartype import beartype
from beartype.typing import Sequence

from sftflow.entities.dataclasses import IntMatrix, IntPolynomial, SmithDecomposition
from sftflow.entities.exceptions import ArgumentError, DimensionError
from sftflow.utils.logger_utils import structured_logger


def _require_square(M: IntMatrix, operation: str) -> None:
    if not M.is_square:
        structured_logger.error(
            message="Non-square matrix",
            operation=operation,
            rows=M.rows,
            cols=M.cols,
        )
        raise DimensionError(
            f"{operation} needs a square matrix, got {M.rows}x{M.cols}"
        )


@beartype
def det(M: IntMatrix) -> int:
    """Determinant by Bareiss fraction-free elimination.

    Args:
        M: Square integer matrix.

    Returns:
        The exact determinant.

    Raises:
        DimensionError: If M is not square.
    """
    _require_square(M, "det")
    n = M.rows
    if n == 0:
        return 1
    a = M.to_rows()
    sign = 1
    previous = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (pivot * a[i][j] - a[i][k] * a[k][j]) // previous
            a[i][k] = 0
        previous = pivot
    return sign * a[n - 1][n - 1]


class _SmithReducer:
    """Row/column reduction to Smith normal form with tracked transforms.

    Pivots are chosen of minimal nonzero absolute value in the remaining
    block; every row operation is mirrored on U and every column operation on
    V, so D = U M V holds throughout.
    """

    def __init__(self, M: IntMatrix) -> None:
        self.m = M.rows
        self.n = M.cols
        self.a = M.to_rows()
        self.u = IntMatrix.identity(self.m).to_rows()
        self.v = IntMatrix.identity(self.n).to_rows()

    def _swap_rows(self, i: int, j: int) -> None:
        self.a[i], self.a[j] = self.a[j], self.a[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]

    def _swap_cols(self, i: int, j: int) -> None:
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        for row in self.v:
            row[i], row[j] = row[j], row[i]

    def _add_row(self, target: int, source: int, factor: int) -> None:
        """row_target += factor * row_source."""
        for matrix in (self.a, self.u):
            src = matrix[source]
            dst = matrix[target]
            for j in range(len(dst)):
                dst[j] += factor * src[j]

    def _add_col(self, target: int, source: int, factor: int) -> None:
        """col_target += factor * col_source."""
        for matrix in (self.a, self.v):
            for row in matrix:
                row[target] += factor * row[source]

    def _negate_row(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]

    def _min_pivot(self, t: int) -> tuple[int, int] | None:
        best = None
        best_value = 0
        for i in range(t, self.m):
            for j in range(t, self.n):
                value = abs(self.a[i][j])
                if value and (best is None or value < best_value):
                    best, best_value = (i, j), value
        return best

    def _reduce_block(self, t: int) -> bool:
        """Clears row and column t; False once the remaining block is zero."""
        a = self.a
        while True:
            pivot = self._min_pivot(t)
            if pivot is None:
                return False
            i, j = pivot
            if i != t:
                self._swap_rows(t, i)
            if j != t:
                self._swap_cols(t, j)
            p = a[t][t]
            for i in range(t + 1, self.m):
                if a[i][t]:
                    self._add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, self.n):
                if a[t][j]:
                    self._add_col(j, t, -(a[t][j] // p))
            if any(a[i][t] for i in range(t + 1, self.m)) or any(
                a[t][j] for j in range(t + 1, self.n)
            ):
                continue
            offender = next(
                (
                    i
                    for i in range(t + 1, self.m)
                    if any(a[i][j] % p for j in range(t + 1, self.n))
                ),
                None,
            )
            if offender is None:
                return True
            # pull the non-divisible row up; the next pass leaves a smaller remainder
            self._add_row(t, offender, 1)

    def run(self) -> SmithDecomposition:
        for t in range(min(self.m, self.n)):
            if not self._reduce_block(t):
                break
            if self.a[t][t] < 0:
                self._negate_row(t)
        return SmithDecomposition(
            U=IntMatrix.from_rows(self.u, cols=self.m),
            D=IntMatrix.from_rows(self.a, cols=self.n),
            V=IntMatrix.from_rows(self.v, cols=self.n),
        )


@beartype
def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """Smith normal form D = U M V.

    U and V are unimodular, D is diagonal with nonnegative entries
    d_1 | d_2 | ... (zeros last).

    Args:
        M: Any integer matrix, including empty or zero matrices.

    Returns:
        The decomposition (U, D, V).
    """
    return _SmithReducer(M).run()


def _poly_mul(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    result = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                result[i + j] += a * b
    return result


@beartype
def char_poly(M: IntMatrix) -> IntPolynomial:
    """Characteristic polynomial det(tI - M) by evaluation and interpolation.

    det(kI - M) is computed with Bareiss at k = 0..N and the degree-N
    interpolant is recovered over the rationals.

    Raises:
        DimensionError: If M is not square.
    """
    _require_square(M, "char_poly")
    n = M.rows
    samples = [det(IntMatrix.identity(n).scale(k) - M) for k in range(n + 1)]
    coefficients = [Fraction(0)] * (n + 1)
    for k, y in enumerate(samples):
        if not y:
            continue
        basis = [Fraction(1)]
        denominator = 1
        for i in range(n + 1):
            if i != k:
                basis = _poly_mul(basis, [Fraction(-i), Fraction(1)])
                denominator *= k - i
        for d, c in enumerate(basis):
            coefficients[d] += Fraction(y, denominator) * c
    if any(c.denominator != 1 for c in coefficients):
        structured_logger.error(
            message="Non-integral characteristic polynomial", size=n
        )
        raise ArithmeticError("Interpolated characteristic polynomial is not integral")
    return IntPolynomial(tuple(int(c) for c in coefficients))


@beartype
def char_poly_faddeev_leverrier(M: IntMatrix) -> IntPolynomial:
    """Characteristic polynomial by the Faddeev-LeVerrier recurrence.

    Independent of char_poly, which makes it a cross-check oracle.
    """
    _require_square(M, "char_poly_faddeev_leverrier")
    n = M.rows
    a = M.to_numpy()
    identity = IntMatrix.identity(n).to_numpy()
    coefficients = [Fraction(0)] * (n + 1)
    coefficients[n] = Fraction(1)
    previous = np.zeros((n, n), dtype=object) * Fraction(1)
    for k in range(1, n + 1):
        current = np.dot(a, previous) + coefficients[n - k + 1] * identity
        product = np.dot(a, current)
        trace = sum((product[i, i] for i in range(n)), Fraction(0))
        coefficients[n - k] = -trace / k
        previous = current
    return IntPolynomial(tuple(int(c) for c in coefficients))


@beartype
def kronecker(M: IntMatrix, N: IntMatrix) -> IntMatrix:
    """Kronecker product; block (i, j) equals M[i, j] * N."""
    if not (M.rows and M.cols and N.rows and N.cols):
        return IntMatrix.zeros(M.rows * N.rows, M.cols * N.cols)
    return IntMatrix.from_numpy(np.kron(M.to_numpy(), N.to_numpy()))


@beartype
def eventual_kernel_member(M: IntMatrix, v: Sequence[int]) -> bool:
    """True iff M^k v = 0 for some k.

    The chain ker M, ker M^2, ... stabilizes by the N-th power, so it is
    enough to test M^N v = 0.

    Raises:
        DimensionError: If M is not square or v has the wrong length.
    """
    _require_square(M, "eventual_kernel_member")
    if len(v) != M.rows:
        raise DimensionError(
            f"Vector of length {len(v)} against a {M.rows}x{M.cols} matrix"
        )
    w = tuple(v)
    for _ in range(M.rows):
        if not any(w):
            return True
        w = M.mat_vec(w)
    return not any(w)


@beartype
def mat_pow(M: IntMatrix, k: int) -> IntMatrix:
    """M^k by repeated squaring; M^0 is the identity.

    Raises:
        DimensionError: If M is not square.
        ArgumentError: If k is negative.
    """
    _require_square(M, "mat_pow")
    if k < 0:
        raise ArgumentError(f"Negative exponent {k}")
    result = IntMatrix.identity(M.rows)
    base = M
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result

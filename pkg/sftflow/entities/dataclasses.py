"""Dataclasses for the entities in sftflow.

Every value here is immutable. Matrices keep Python integers (unbounded), and
all products go through numpy object arrays so no fixed-width overflow can
occur.
"""

from dataclasses import asdict, dataclass

import numpy as np
from beartype.typing import Optional, Sequence

from sftflow.entities.enums import MoveKind, Transition
from sftflow.entities.exceptions import DimensionError, HypothesisError
from sftflow.utils.task_utils import dataclass_convertor

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Matrix over the integers, stored row-major.

    Attributes:
        rows: Number of rows.
        cols: Number of columns.
        entries: rows * cols integers in row-major order.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionError(f"Negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"Expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None
    ) -> "IntMatrix":
        """Builds a matrix from a list of rows."""
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        for row in rows:
            if len(row) != width:
                raise DimensionError(f"Ragged rows: expected width {width}")
        return cls(len(rows), width, tuple(x for row in rows for x in row))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        """The n x n identity matrix."""
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        """The all-zero rows x cols matrix."""
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def from_numpy(cls, array: np.ndarray) -> "IntMatrix":
        """Copies a 2-d integer array; entries become Python ints."""
        rows, cols = array.shape
        return cls(rows, cols, tuple(int(x) for x in array.reshape(-1)))

    def to_numpy(self) -> np.ndarray:
        """Object-dtype copy; arithmetic on it stays in Python integers."""
        array = np.empty(self.rows * self.cols, dtype=object)
        array[:] = list(self.entries)
        return array.reshape(self.rows, self.cols)

    def to_rows(self) -> list[list[int]]:
        """Nested lists, row by row."""
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        """True iff rows == cols."""
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        """Row i as a tuple."""
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        """Column j as a tuple."""
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        """Transpose."""
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def is_nonnegative(self) -> bool:
        """True iff no entry is negative."""
        return all(x >= 0 for x in self.entries)

    def is_zero(self) -> bool:
        """True iff every entry is 0."""
        return not any(self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        if self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix.from_numpy(np.dot(self.to_numpy(), other.to_numpy()))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(a - b for a, b in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, factor: int) -> "IntMatrix":
        """Entrywise multiple."""
        return IntMatrix(self.rows, self.cols, tuple(factor * x for x in self.entries))

    def mat_vec(self, vector: Sequence[int]) -> Vector:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise DimensionError(
                f"Vector of length {len(vector)} against {self.cols} columns"
            )
        return tuple(
            sum(a * b for a, b in zip(self.row(i), vector)) for i in range(self.rows)
        )

    def _check_same_shape(self, other: "IntMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError(
                f"Shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.to_rows())


@dataclass(frozen=True)
class SmithDecomposition:
    """D = U * M * V with U, V unimodular and D in Smith normal form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> Vector:
        """Diagonal entries of D, the invariant factors padded with zeros."""
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in t, coefficients in ascending degree.

    The zero polynomial has no coefficients.
    """

    coefficients: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        coefficients = [int(c) for c in self.coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        """True for the zero polynomial."""
        return not self.coefficients

    def evaluate(self, t: int) -> int:
        """Horner evaluation at an integer t."""
        value = 0
        for c in reversed(self.coefficients):
            value = value * t + c
        return value

    def strip_t_powers(self) -> tuple["IntPolynomial", int]:
        """Splits off the largest power of t: self = t^z * p with p(0) != 0."""
        z = 0
        while z < len(self.coefficients) and self.coefficients[z] == 0:
            z += 1
        return IntPolynomial(self.coefficients[z:]), z

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            magnitude = abs(c)
            if power == 0:
                body = str(magnitude)
            else:
                monomial = "t" if power == 1 else f"t^{power}"
                body = monomial if magnitude == 1 else f"{magnitude}{monomial}"
            if not terms:
                terms.append(f"-{body}" if c < 0 else body)
            else:
                terms.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(terms)


@dataclass(frozen=True)
class BinMatrix:
    """Square 0-1 transition matrix of a topological Markov shift.

    States are 0-based internally; labels default to "1".."N".

    Attributes:
        size: Number of states N >= 1.
        entries: N * N zeros and ones, row-major.
        labels: Optional state labels.
    """

    size: int
    entries: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.size < 1:
            raise DimensionError(f"Matrix size must be at least 1, got {self.size}")
        if len(self.entries) != self.size * self.size:
            raise DimensionError(
                f"Expected {self.size * self.size} entries, got {len(self.entries)}"
            )
        if any(x not in (0, 1) for x in self.entries):
            raise HypothesisError("matrix", "entries must be 0 or 1")
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if self.labels is not None:
            if len(self.labels) != self.size:
                raise DimensionError(
                    f"Expected {self.size} labels, got {len(self.labels)}"
                )
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None
    ) -> "BinMatrix":
        """Builds a 0/1 transition matrix from square rows; labels are optional."""
        for row in rows:
            if len(row) != len(rows):
                raise DimensionError("Transition matrix must be square")
        return cls(
            len(rows),
            tuple(x for row in rows for x in row),
            tuple(labels) if labels is not None else None,
        )

    @classmethod
    def from_int_matrix(
        cls, matrix: IntMatrix, labels: Optional[Sequence[str]] = None
    ) -> "BinMatrix":
        """Reinterprets a square 0/1 IntMatrix, optionally labelled."""
        if not matrix.is_square:
            raise DimensionError("Transition matrix must be square")
        return cls(
            matrix.rows, matrix.entries, tuple(labels) if labels is not None else None
        )

    def to_int_matrix(self) -> IntMatrix:
        """Drops the labels and the 0/1 check."""
        return IntMatrix(self.size, self.size, self.entries)

    def to_rows(self) -> list[list[int]]:
        """Nested lists, row by row."""
        return [list(self.row(i)) for i in range(self.size)]

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.size + j]

    def row(self, i: int) -> Vector:
        """Row i as a tuple."""
        return self.entries[i * self.size : (i + 1) * self.size]

    def successors(self, i: int) -> list[int]:
        """States j with A(i, j) = 1, ascending."""
        return [j for j, x in enumerate(self.row(i)) if x]

    def out_degree(self, i: int) -> int:
        """Number of edges leaving state i."""
        return sum(self.row(i))

    def label(self, i: int) -> str:
        """Display label of state i; 1-based index when unlabelled."""
        return self.labels[i] if self.labels is not None else str(i + 1)

    def transpose(self) -> "BinMatrix":
        """Transpose; the time-reversed shift with the same labels."""
        return BinMatrix.from_int_matrix(self.to_int_matrix().transpose(), self.labels)

    def without_labels(self) -> "BinMatrix":
        """Same matrix, labels dropped."""
        return BinMatrix(self.size, self.entries)

    def __str__(self) -> str:
        return str(self.to_int_matrix())


@dataclass(frozen=True)
class WordPresentation:
    """Higher block presentation: states are the admissible k-words.

    Attributes:
        k: Block length.
        words: Admissible words of length k, 0-based symbols, lexicographic.
        matrix: Transition matrix over the words.
    """

    k: int
    words: tuple[tuple[int, ...], ...]
    matrix: BinMatrix


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """Canonical form Z^r + Z/d_1 + ... + Z/d_s with d_1 | d_2 | ... | d_s."""

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError(f"Negative free rank {self.free_rank}")
        if any(d < 2 for d in self.invariant_factors):
            raise ValueError(
                f"Invariant factors must be at least 2: {self.invariant_factors}"
            )
        for d, e in zip(self.invariant_factors, self.invariant_factors[1:]):
            if e % d:
                raise ValueError(f"Invariant factor {d} does not divide {e}")

    def is_trivial(self) -> bool:
        """True for the zero group."""
        return not self.invariant_factors and self.free_rank == 0

    @property
    def order(self) -> Optional[int]:
        """Group order, or None when the group is infinite."""
        if self.free_rank:
            return None
        order = 1
        for d in self.invariant_factors:
            order *= d
        return order

    def __str__(self) -> str:
        summands = []
        if self.free_rank == 1:
            summands.append("Z")
        elif self.free_rank > 1:
            summands.append(f"Z^{self.free_rank}")
        summands.extend(f"Z/{d}" for d in self.invariant_factors)
        return " ⊕ ".join(summands) if summands else "0"


@dataclass(frozen=True)
class SpectrumFingerprint:
    """char_poly(A) = t^zero_multiplicity * poly with poly(0) != 0."""

    poly: IntPolynomial
    zero_multiplicity: int

    def __str__(self) -> str:
        return str(self.poly)


@dataclass(frozen=True)
class FlowInvariants:
    """Franks's complete invariant pair."""

    determinant: int
    bowen_franks: AbelianGroupPresentation

    def as_dict(self) -> dict:
        return {"det": self.determinant, "bowen_franks": str(self.bowen_franks)}


@dataclass(frozen=True)
class SpectralImplicationReport:
    """Spectral implication chain for a pair of matrices.

    kronecker_equal implies spectrum_equal implies determinant_equal; a set
    violation flag means that chain was falsified.
    """

    kronecker_equal: bool
    spectrum_equal: bool
    determinant_equal: bool
    violation: bool

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CeilingFunction:
    """Ceiling function depending on coordinate 0 only: f = sum f_j chi_{U_j(0)}."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        bad = [v for v in self.values if v < 1]
        if bad:
            raise HypothesisError("ceiling", f"non-positive ceiling values {bad}")

    @property
    def size(self) -> int:
        """Number of states the ceiling is defined on."""
        return len(self.values)

    @property
    def m(self) -> tuple[int, ...]:
        """Chain lengths m_j = f_j - 1."""
        return tuple(v - 1 for v in self.values)

    def __call__(self, state: int) -> int:
        """Value on a 0-based state."""
        return self.values[state]


@dataclass(frozen=True)
class DimElement:
    """Class [v, n] in the inductive limit lim(Z^N, T).

    T is A^t for Transition.TRANSPOSE (Delta_A) and A for Transition.DIRECT
    (Delta_{A^t}); (v, n) ~ (T v, n + 1).
    """

    context: BinMatrix
    transition: Transition
    vector: Vector
    level: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))
        if len(self.vector) != self.context.size:
            raise DimensionError(
                f"Vector of length {len(self.vector)} over a "
                f"{self.context.size}-state matrix"
            )
        if self.level < 0:
            raise DimensionError(f"Negative level {self.level}")


@dataclass(frozen=True)
class QuadElement:
    """Element of Delta_{A^t} (x) Delta_A stored at one common level.

    The vector is the row-major flattening of sum u (x) v, the first factor in
    lim(Z^N, A) and the second in lim(Z^N, A^t); raising the level applies
    A (x) A^t.
    """

    context: BinMatrix
    vector: Vector
    level: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))
        n = self.context.size
        if len(self.vector) != n * n:
            raise DimensionError(
                f"Vector of length {len(self.vector)}, expected {n * n}"
            )
        if self.level < 0:
            raise DimensionError(f"Negative level {self.level}")


@dataclass(frozen=True)
class SECertificate:
    """Shift-equivalence witness: A^lag = HK, B^lag = KH, AH = HB, KA = BK."""

    H: IntMatrix
    K: IntMatrix
    lag: int

    def as_dict(self) -> dict:
        return {"H": self.H.to_rows(), "K": self.K.to_rows(), "lag": self.lag}


@dataclass(frozen=True)
class ElementarySSE:
    """Elementary strong shift equivalence A = RS, B = SR."""

    R: IntMatrix
    S: IntMatrix


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of a certificate check; truthy iff it passed."""

    passed: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class FlowMove:
    """One-step flow-equivalent neighbour of a matrix."""

    label: str
    kind: MoveKind
    matrix: BinMatrix
    witness: Optional[ElementarySSE] = None

    def as_dict(self) -> dict:
        return asdict(
            self, dict_factory=lambda x: {k: dataclass_convertor(v) for k, v in x}
        )



@dataclass(frozen=True)
class MatrixFile:
    """Contents of a matrix file: the transition matrix and an optional ceiling."""

    matrix: BinMatrix
    ceiling: Optional[CeilingFunction] = None

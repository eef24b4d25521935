"""Shift-equivalence certificates: verification, bounded witness search and
one-step flow-equivalence moves.

Deciding shift equivalence in general is out of reach here; the search only
explores a bounded box and a miss says nothing about non-equivalence.
"""

import itertools

from beartype import beartype
from beartype.typing import Optional, Sequence
from joblib import Parallel, delayed
from tqdm import tqdm
from tqdm_joblib import tqdm_joblib

from sftflow.entities.dataclasses import (
    BinMatrix,
    CeilingFunction,
    ElementarySSE,
    FlowMove,
    IntMatrix,
    SECertificate,
    VerificationResult,
)
from sftflow.entities.enums import MoveKind
from sftflow.entities.exceptions import (
    ArgumentError,
    DimensionError,
    SearchSpaceError,
)
from sftflow.services.flow_invariants import check_hypothesis
from sftflow.services.suspension import suspend
from sftflow.utils.intlin import kronecker, mat_pow
from sftflow.utils.logger_utils import structured_logger
from sftflow.utils.task_utils import get_search_limit, get_worker_count

PASSED = VerificationResult(passed=True)


def _as_int(M: IntMatrix | BinMatrix) -> IntMatrix:
    return M.to_int_matrix() if isinstance(M, BinMatrix) else M


def _check_shape(name: str, M: IntMatrix, rows: int, cols: int) -> None:
    if (M.rows, M.cols) != (rows, cols):
        structured_logger.error(
            message="Certificate shape mismatch",
            matrix=name,
            shape=[M.rows, M.cols],
            expected=[rows, cols],
        )
        raise DimensionError(
            f"{name} is {M.rows}x{M.cols}, expected {rows}x{cols}"
        )


def _first_failure(checks: Sequence[tuple[bool, str]]) -> VerificationResult:
    for ok, reason in checks:
        if not ok:
            structured_logger.info(message="Certificate check failed", reason=reason)
            return VerificationResult(passed=False, reason=reason)
    return PASSED


@beartype
def verify_shift_equivalence(
    A: IntMatrix | BinMatrix, B: IntMatrix | BinMatrix, cert: SECertificate
) -> VerificationResult:
    """Checks A^l = HK, B^l = KH, AH = HB, KA = BK with H, K >= 0.

    Returns:
        A result that is truthy iff every relation holds; otherwise its
        reason names the first violated relation.

    Raises:
        DimensionError: If the shapes are incompatible.
    """
    a, b = _as_int(A), _as_int(B)
    if not a.is_square or not b.is_square:
        raise DimensionError("Shift equivalence needs square matrices")
    _check_shape("H", cert.H, a.rows, b.rows)
    _check_shape("K", cert.K, b.rows, a.rows)
    if not (cert.H.is_nonnegative() and cert.K.is_nonnegative()):
        return _first_failure([(False, "nonnegativity: H and K must be >= 0")])
    if cert.lag < 1:
        return _first_failure([(False, f"lag must be positive, got {cert.lag}")])
    H, K = cert.H, cert.K
    return _first_failure(
        [
            (mat_pow(a, cert.lag) == H @ K, "A^l ≠ HK"),
            (mat_pow(b, cert.lag) == K @ H, "B^l ≠ KH"),
            (a @ H == H @ b, "AH ≠ HB"),
            (K @ a == b @ K, "KA ≠ BK"),
        ]
    )


@beartype
def verify_elementary_sse(
    A: IntMatrix | BinMatrix,
    B: IntMatrix | BinMatrix,
    R: IntMatrix,
    S: IntMatrix,
) -> VerificationResult:
    """Checks A = RS and B = SR with R, S >= 0.

    Raises:
        DimensionError: If the shapes are incompatible.
    """
    a, b = _as_int(A), _as_int(B)
    if not a.is_square or not b.is_square:
        raise DimensionError("Elementary equivalence needs square matrices")
    _check_shape("R", R, a.rows, b.rows)
    _check_shape("S", S, b.rows, a.rows)
    return _first_failure(
        [
            (
                R.is_nonnegative() and S.is_nonnegative(),
                "nonnegativity: R and S must be >= 0",
            ),
            (a == R @ S, "A ≠ RS"),
            (b == S @ R, "B ≠ SR"),
        ]
    )


@beartype
def certificate_from_elementary(sse: ElementarySSE) -> SECertificate:
    """A = RS, B = SR gives the lag-1 certificate (R, S, 1)."""
    return SECertificate(H=sse.R, K=sse.S, lag=1)


@beartype
def kronecker_certificate(cert: SECertificate) -> SECertificate:
    """Lifts (H, K, l) for (A, B) to (K^t (x) H, H^t (x) K, l) for
    (A^t (x) A, B^t (x) B)."""
    return SECertificate(
        H=kronecker(cert.K.transpose(), cert.H),
        K=kronecker(cert.H.transpose(), cert.K),
        lag=cert.lag,
    )


@beartype
def verify_kronecker_se(
    A: BinMatrix, B: BinMatrix, cert: SECertificate
) -> VerificationResult:
    """Checks the six relations between A^t (x) A and B^t (x) B.

    (A^t (x) A)^l = HK, (B^t (x) B)^l = KH, (1 (x) A)H = H(1 (x) B),
    K(1 (x) A) = (1 (x) B)K, (A^t (x) 1)H = H(B^t (x) 1),
    K(A^t (x) 1) = (B^t (x) 1)K, with H, K >= 0.

    Raises:
        DimensionError: If H is not N^2 x M^2 or K is not M^2 x N^2.
    """
    n, m = A.size, B.size
    _check_shape("H", cert.H, n * n, m * m)
    _check_shape("K", cert.K, m * m, n * n)
    if not (cert.H.is_nonnegative() and cert.K.is_nonnegative()):
        return _first_failure([(False, "nonnegativity: H and K must be >= 0")])
    if cert.lag < 1:
        return _first_failure([(False, f"lag must be positive, got {cert.lag}")])
    a, b = A.to_int_matrix(), B.to_int_matrix()
    one_a, one_b = IntMatrix.identity(n), IntMatrix.identity(m)
    H, K = cert.H, cert.K
    right_a, right_b = kronecker(one_a, a), kronecker(one_b, b)
    left_a, left_b = kronecker(a.transpose(), one_a), kronecker(b.transpose(), one_b)
    square_a = mat_pow(kronecker(a.transpose(), a), cert.lag)
    square_b = mat_pow(kronecker(b.transpose(), b), cert.lag)
    return _first_failure(
        [
            (square_a == H @ K, "(A^t⊗A)^l ≠ HK"),
            (square_b == K @ H, "(B^t⊗B)^l ≠ KH"),
            (right_a @ H == H @ right_b, "(1⊗A)H ≠ H(1⊗B)"),
            (K @ right_a == right_b @ K, "K(1⊗A) ≠ (1⊗B)K"),
            (left_a @ H == H @ left_b, "(A^t⊗1)H ≠ H(B^t⊗1)"),
            (K @ left_a == left_b @ K, "K(A^t⊗1) ≠ (B^t⊗1)K"),
        ]
    )


def _decode(index: int, base: int, rows: int, cols: int) -> IntMatrix:
    """index-th matrix in lexicographic (row-major, big-endian) order."""
    digits = []
    for _ in range(rows * cols):
        index, digit = divmod(index, base)
        digits.append(digit)
    return IntMatrix(rows, cols, tuple(reversed(digits)))


class _ElementarySearch:
    """Enumerates R lexicographically and solves A = RS column by column."""

    def __init__(self, A: BinMatrix, B: BinMatrix, entry_max: int) -> None:
        self.a = A.to_int_matrix()
        self.b = B.to_int_matrix()
        self.n = A.size
        self.m = B.size
        self.base = entry_max + 1
        self.columns = list(itertools.product(range(self.base), repeat=self.m))

    @property
    def r_count(self) -> int:
        """Number of n x m matrices R with entries in [0, entry_max]."""
        return self.base ** (self.n * self.m)

    def candidate_count(self) -> int:
        """Worst-case work: per R, n column scans plus every S the columns allow.

        Each column of S has at most (entry_max + 1)^m solutions, so the S
        product contributes at most that to the power n.
        """
        width = len(self.columns)
        return self.r_count * (self.n * width + width**self.n)

    def match(self, index: int) -> Optional[ElementarySSE]:
        """Solves for S given the R decoded from index; None if no S fits."""
        R = _decode(index, self.base, self.n, self.m)
        per_column = []
        for j in range(self.n):
            target = self.a.column(j)
            solutions = [c for c in self.columns if R.mat_vec(c) == target]
            if not solutions:
                return None
            per_column.append(solutions)
        for choice in itertools.product(*per_column):
            S = IntMatrix.from_rows(
                [[choice[j][i] for j in range(self.n)] for i in range(self.m)],
                cols=self.n,
            )
            if S @ R == self.b:
                return ElementarySSE(R=R, S=S)
        return None

    def scan(self, start: int, stop: int) -> Optional[tuple[int, ElementarySSE]]:
        """First matching index in [start, stop) with its witness, or None."""
        for index in range(start, stop):
            found = self.match(index)
            if found is not None:
                return index, found
        return None


@beartype
def search_elementary_sse(
    A: BinMatrix, B: BinMatrix, inner_dim_max: int, entry_max: int
) -> Optional[ElementarySSE]:
    """First (R, S) with A = RS, B = SR inside the bounds, or None.

    The inner dimension is forced to be the size of B. Candidates are R
    matrices in lexicographic order with entries in 0..entry_max; S is solved
    column by column. With SFTFLOW_WORKER > 1 the R range is split into
    contiguous chunks scanned in threads, and the lowest-index hit wins, so
    the answer matches the sequential scan.

    Raises:
        ArgumentError: If a bound is out of range.
        SearchSpaceError: If the candidate count exceeds SFTFLOW_SEARCH_LIMIT.
    """
    if entry_max < 0 or inner_dim_max < 1:
        raise ArgumentError("entry_max must be >= 0 and inner_dim_max >= 1")
    if B.size > inner_dim_max:
        structured_logger.info(
            message="Inner dimension out of bounds",
            inner_dim=B.size,
            inner_dim_max=inner_dim_max,
        )
        return None
    search = _ElementarySearch(A, B, entry_max)
    limit = get_search_limit()
    if search.candidate_count() > limit:
        structured_logger.error(
            message="Search space too large",
            candidates=search.candidate_count(),
            limit=limit,
        )
        raise SearchSpaceError(
            f"{search.candidate_count()} candidates exceed the limit {limit}"
        )
    workers = get_worker_count()
    structured_logger.info(
        message="Starting elementary equivalence search",
        source_size=A.size,
        target_size=B.size,
        entry_max=entry_max,
        candidates=search.candidate_count(),
        workers=workers,
    )
    if workers > 1:
        step = -(-search.r_count // (workers * 4))
        chunks = [
            (start, min(start + step, search.r_count))
            for start in range(0, search.r_count, step)
        ]
        with tqdm_joblib(tqdm(desc="Searching factorizations", total=len(chunks))):
            results = Parallel(n_jobs=workers, backend="threading")(
                delayed(search.scan)(start, stop) for start, stop in chunks
            )
        hits = [hit for hit in results if hit is not None]
        hit = min(hits, key=lambda h: h[0]) if hits else None
    else:
        hit = search.scan(0, search.r_count)
    structured_logger.info(
        message="Finished elementary equivalence search",
        found=hit is not None,
        index=hit[0] if hit else None,
    )
    return hit[1] if hit else None


def _split_labels(A: BinMatrix, j: int) -> list[str]:
    labels = [A.label(i) for i in range(A.size)]
    return labels[:j] + [f"{labels[j]}.1", f"{labels[j]}.2"] + labels[j + 1 :]


@beartype
def out_split(
    A: BinMatrix, j: int, part: Sequence[int]
) -> tuple[BinMatrix, ElementarySSE]:
    """Splits state j by partitioning its out-edges into `part` and the rest.

    The copies j.1 (edges to `part`) and j.2 (remaining edges) take the
    places j and j + 1; both inherit every in-edge of j. States are 0-based.

    Returns:
        The split matrix B and the witness A = RS, B = SR.

    Raises:
        ArgumentError: If `part` is not a proper nonempty subset of the
            successors of j.
    """
    successors = set(A.successors(j))
    first = set(part)
    second = successors - first
    if not first or not second or not first <= successors:
        raise ArgumentError(
            f"Partition {sorted(first)} does not split the out-edges of state {j}"
        )
    n = A.size
    parents = list(range(j + 1)) + list(range(j, n))
    R = IntMatrix.from_rows(
        [[int(parents[p] == i) for p in range(n + 1)] for i in range(n)], cols=n + 1
    )
    rows = []
    for p, i in enumerate(parents):
        if i != j:
            rows.append(list(A.row(i)))
        else:
            keep = first if p == j else second
            rows.append([int(k in keep) for k in range(n)])
    S = IntMatrix.from_rows(rows, cols=n)
    B = BinMatrix.from_int_matrix(S @ R, labels=_split_labels(A, j))
    return B, ElementarySSE(R=R, S=S)


@beartype
def in_split(
    A: BinMatrix, j: int, part: Sequence[int]
) -> tuple[BinMatrix, ElementarySSE]:
    """Splits state j by partitioning its in-edges; the transpose of out_split."""
    Bt, sse = out_split(A.transpose(), j, part)
    B = BinMatrix.from_int_matrix(Bt.to_int_matrix().transpose(), labels=Bt.labels)
    return B, ElementarySSE(R=sse.S.transpose(), S=sse.R.transpose())


def _partitions(edges: list[int]) -> list[tuple[int, ...]]:
    """First blocks of the two-block partitions, the first edge always in it."""
    head, rest = edges[0], edges[1:]
    blocks = [
        (head,) + combo
        for size in range(len(rest))
        for combo in itertools.combinations(rest, size)
    ]
    return sorted(blocks)


def _part_label(part: Sequence[int], edges: Sequence[int]) -> str:
    first = ",".join(str(k + 1) for k in part)
    second = ",".join(str(k + 1) for k in edges if k not in part)
    return f"{{{first}}} | {{{second}}}"


@beartype
def flow_moves(A: BinMatrix) -> list[FlowMove]:
    """One-step flow-equivalent neighbours of A.

    Symbol expansions by state, then out-splittings, then in-splittings,
    each by state and lexicographic partition.

    Raises:
        HypothesisError: If A is reducible or a permutation matrix.
    """
    check_hypothesis(A, "A")
    moves = []
    for j in range(A.size):
        f = CeilingFunction(tuple(2 if i == j else 1 for i in range(A.size)))
        moves.append(
            FlowMove(
                label=f"symbol expansion at {j + 1}",
                kind=MoveKind.SYMBOL_EXPANSION,
                matrix=suspend(A, f),
            )
        )
    for kind, matrix, splitter in (
        (MoveKind.OUT_SPLIT, A, out_split),
        (MoveKind.IN_SPLIT, A.transpose(), in_split),
    ):
        for j in range(A.size):
            edges = matrix.successors(j)
            if len(edges) < 2:
                continue
            for part in _partitions(edges):
                B, witness = splitter(A, j, part)
                moves.append(
                    FlowMove(
                        label=f"{kind.value} {j + 1}: {_part_label(part, edges)}",
                        kind=kind,
                        matrix=B,
                        witness=witness,
                    )
                )
    structured_logger.debug(message="Generated flow moves", count=len(moves))
    return moves

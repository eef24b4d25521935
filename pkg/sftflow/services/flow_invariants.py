"""Flow-equivalence invariants and Franks's decision procedure.

Nonzero spectra are compared through exact characteristic polynomials with
the powers of t removed, never through numerical eigenvalues.
"""

from beartype import beartype

from sftflow.entities.dataclasses import (
    AbelianGroupPresentation,
    BinMatrix,
    FlowInvariants,
    IntMatrix,
    SpectralImplicationReport,
    SpectrumFingerprint,
)
from sftflow.entities.exceptions import HypothesisError
from sftflow.services.markov_core import is_irreducible, is_permutation
from sftflow.utils.intlin import char_poly, det, kronecker, smith_normal_form
from sftflow.utils.logger_utils import structured_logger


def _one_minus(A: BinMatrix) -> IntMatrix:
    return IntMatrix.identity(A.size) - A.to_int_matrix()


@beartype
def check_hypothesis(A: BinMatrix, name: str = "A") -> None:
    """Franks's standing hypothesis: irreducible and not a permutation.

    Raises:
        HypothesisError: Naming the matrix and the failed condition.
    """
    reason = None
    if not is_irreducible(A):
        reason = "matrix is reducible"
    elif is_permutation(A):
        reason = "matrix is a permutation matrix"
    if reason is not None:
        structured_logger.error(
            message="Hypothesis violated", matrix=name, reason=reason, size=A.size
        )
        raise HypothesisError(name, reason)


@beartype
def ps_determinant(A: BinMatrix) -> int:
    """Parry-Sullivan invariant det(I - A)."""
    return det(_one_minus(A))


@beartype
def bowen_franks(A: BinMatrix) -> AbelianGroupPresentation:
    """Bowen-Franks group Z^N / (I - A) Z^N in canonical form."""
    diagonal = smith_normal_form(_one_minus(A)).diagonal
    return AbelianGroupPresentation(
        invariant_factors=tuple(d for d in diagonal if d > 1),
        free_rank=sum(1 for d in diagonal if d == 0),
    )


@beartype
def flow_invariants(A: BinMatrix) -> FlowInvariants:
    """Franks's pair (det(I - A), BF(A))."""
    return FlowInvariants(determinant=ps_determinant(A), bowen_franks=bowen_franks(A))


def _fingerprint(M: IntMatrix) -> SpectrumFingerprint:
    poly, zeros = char_poly(M).strip_t_powers()
    return SpectrumFingerprint(poly=poly, zero_multiplicity=zeros)


@beartype
def spectrum_fingerprint(A: BinMatrix) -> SpectrumFingerprint:
    """char_poly(A) = t^z * p(t) with p(0) != 0, returned as (p, z).

    p determines the multiset of nonzero eigenvalues; since
    det(I - A) = char_poly(A)(1) = p(1), it also fixes the determinant.
    """
    return _fingerprint(A.to_int_matrix())


@beartype
def same_nonzero_spectrum(A: BinMatrix, B: BinMatrix) -> bool:
    """Equal nonzero eigenvalue multisets; zero multiplicities may differ."""
    return spectrum_fingerprint(A).poly == spectrum_fingerprint(B).poly


def kronecker_square(A: BinMatrix) -> IntMatrix:
    """A^t (x) A."""
    a = A.to_int_matrix()
    return kronecker(a.transpose(), a)


@beartype
def kronecker_spectrum_equal(A: BinMatrix, B: BinMatrix) -> bool:
    """Equal nonzero spectra of A^t (x) A and B^t (x) B."""
    return (
        _fingerprint(kronecker_square(A)).poly == _fingerprint(kronecker_square(B)).poly
    )


@beartype
def spectral_implication_report(
    A: BinMatrix, B: BinMatrix
) -> SpectralImplicationReport:
    """Evaluates the chain kronecker spectra => nonzero spectra => det(I - .).

    Raises:
        HypothesisError: If A or B is reducible or a permutation matrix.
    """
    check_hypothesis(A, "A")
    check_hypothesis(B, "B")
    kronecker_equal = kronecker_spectrum_equal(A, B)
    spectrum_equal = same_nonzero_spectrum(A, B)
    determinant_equal = ps_determinant(A) == ps_determinant(B)
    violation = (kronecker_equal and not spectrum_equal) or (
        spectrum_equal and not determinant_equal
    )
    if violation:
        structured_logger.error(
            message="Spectral implication chain falsified",
            kronecker_equal=kronecker_equal,
            spectrum_equal=spectrum_equal,
            determinant_equal=determinant_equal,
        )
    return SpectralImplicationReport(
        kronecker_equal=kronecker_equal,
        spectrum_equal=spectrum_equal,
        determinant_equal=determinant_equal,
        violation=violation,
    )


@beartype
def flow_equivalent(A: BinMatrix, B: BinMatrix) -> bool:
    """Franks: equal det(I - .) and isomorphic Bowen-Franks groups.

    Raises:
        HypothesisError: If A or B is reducible or a permutation matrix.
    """
    check_hypothesis(A, "A")
    check_hypothesis(B, "B")
    left = flow_invariants(A)
    right = flow_invariants(B)
    structured_logger.debug(
        message="Compared flow invariants",
        left=left.as_dict(),
        right=right.as_dict(),
    )
    return left == right

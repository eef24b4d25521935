"""Tests for flow-equivalence invariants."""

import pytest

from sftflow.entities.dataclasses import AbelianGroupPresentation, BinMatrix
from sftflow.entities.exceptions import HypothesisError
from sftflow.services.flow_invariants import (
    bowen_franks,
    check_hypothesis,
    flow_equivalent,
    flow_invariants,
    kronecker_spectrum_equal,
    ps_determinant,
    same_nonzero_spectrum,
    spectral_implication_report,
    spectrum_fingerprint,
)
from sftflow.services.suspension import suspend
from tests.sftflow.testing_utils import (
    random_bin_matrix,
    random_ceiling,
    random_irreducible,
)


def full_shift(n: int) -> BinMatrix:
    return BinMatrix(n, (1,) * (n * n))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_full_shift_invariants(n):
    """det(I - A) = 1 - n and BF = Z/(n - 1) for the full n-shift."""
    A = full_shift(n)
    assert ps_determinant(A) == 1 - n
    expected = (n - 1,) if n > 2 else ()
    assert bowen_franks(A) == AbelianGroupPresentation(invariant_factors=expected)


def test_golden_mean_invariants(golden):
    assert ps_determinant(golden) == -1
    assert bowen_franks(golden).is_trivial()
    assert str(spectrum_fingerprint(golden)) == "t^2 - t - 1"


def test_bowen_franks_free_part():
    """Eigenvalue 1 makes I - A singular and adds a free summand."""
    A = BinMatrix.from_rows([[1, 1], [0, 1]])
    assert ps_determinant(A) == 0
    assert bowen_franks(A).free_rank == 1
    assert bowen_franks(A).order is None


def test_group_text():
    assert str(AbelianGroupPresentation()) == "0"
    assert str(AbelianGroupPresentation((2, 4), 1)) == "Z ⊕ Z/2 ⊕ Z/4"
    assert str(AbelianGroupPresentation((3,), 2)) == "Z^2 ⊕ Z/3"
    with pytest.raises(ValueError):
        AbelianGroupPresentation((2, 3))


def test_spectrum_fingerprint_zero_multiplicity():
    A = BinMatrix.from_rows([[1, 1, 0], [0, 0, 1], [1, 1, 0]])
    fingerprint = spectrum_fingerprint(A)
    assert str(fingerprint.poly) == "t^2 - t - 1"
    assert fingerprint.zero_multiplicity == 1


@pytest.mark.parametrize(
    "rows, reason",
    [
        ([[1, 1], [0, 1]], "matrix is reducible"),
        ([[0, 1], [1, 0]], "matrix is a permutation matrix"),
    ],
)
def test_check_hypothesis(rows, reason):
    with pytest.raises(HypothesisError) as e:
        check_hypothesis(BinMatrix.from_rows(rows), "B")
    assert e.value.matrix_name == "B"
    assert e.value.reason == reason


def test_flow_equivalent(full2, full3, golden):
    assert flow_equivalent(full2, golden)
    assert not flow_equivalent(full2, full3)
    assert flow_invariants(full3).as_dict() == {"det": -2, "bowen_franks": "Z/2"}


def test_flow_equivalent_rejects_reducible(golden):
    with pytest.raises(HypothesisError):
        flow_equivalent(golden, BinMatrix.from_rows([[1, 1], [0, 1]]))


def test_suspension_preserves_invariants(rng):
    for _ in range(200):
        A = random_irreducible(rng)
        A_f = suspend(A, random_ceiling(rng, A.size))
        assert ps_determinant(A_f) == ps_determinant(A)
        assert bowen_franks(A_f) == bowen_franks(A)


def test_bowen_franks_order_is_determinant(rng):
    for _ in range(100):
        A = random_irreducible(rng)
        determinant = ps_determinant(A)
        if determinant:
            assert bowen_franks(A).order == abs(determinant)
        else:
            assert bowen_franks(A).free_rank > 0


def test_spectra_of_shift_equivalent_pair(golden, golden_split):
    assert kronecker_spectrum_equal(golden, golden_split)
    assert same_nonzero_spectrum(golden, golden_split)
    assert ps_determinant(golden) == ps_determinant(golden_split)


def test_spectral_implication_report_example(golden, full2):
    report = spectral_implication_report(golden, full2)
    assert not report.kronecker_equal
    assert not report.spectrum_equal
    assert report.determinant_equal
    assert not report.violation


def test_spectral_implication_report_never_violated(rng):
    for _ in range(100):
        A, B = random_irreducible(rng), random_irreducible(rng)
        report = spectral_implication_report(A, B)
        assert not report.violation
        if report.spectrum_equal:
            assert report.determinant_equal


def test_spectrum_fingerprint_of_transpose(rng):
    for _ in range(100):
        A = random_bin_matrix(rng, rng.randint(1, 6))
        assert spectrum_fingerprint(A.transpose()) == spectrum_fingerprint(A)


def test_flow_equivalent_reflexive_and_symmetric(rng):
    for _ in range(100):
        A, B = random_irreducible(rng), random_irreducible(rng)
        assert flow_equivalent(A, A)
        assert flow_equivalent(A, B) == flow_equivalent(B, A)


def test_flow_equivalent_to_suspension(rng):
    for _ in range(100):
        A = random_irreducible(rng)
        assert flow_equivalent(A, suspend(A, random_ceiling(rng, A.size)))

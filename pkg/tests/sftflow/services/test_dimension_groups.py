"""Tests for dimension triplets and quadruplets."""

from unittest.mock import patch

import pytest

from sftflow.entities.dataclasses import (
    BinMatrix,
    CeilingFunction,
    IntMatrix,
    SECertificate,
)
from sftflow.entities.enums import KClassVariant, Transition
from sftflow.entities.exceptions import (
    ArgumentError,
    CertificateError,
    ContextMismatchError,
)
from sftflow.services.dimension_groups import (
    delta,
    delta_inv,
    delta_tilde,
    diagonal_class,
    dim_add,
    dim_element,
    dim_equal,
    lift,
    phi_l,
    phi_l_inv,
    phi_r,
    phi_r_inv,
    positive_at_level,
    quad_add,
    quad_element,
    quad_equal,
    quad_neg,
    se_induced_map,
    split_tensor,
    suspension_k_class,
    u_tilde,
    u_tilde_via_left,
    u_tilde_via_right,
    verify_induced_isomorphism,
)
from sftflow.services.equivalence_certificates import (
    certificate_from_elementary,
    flow_moves,
    verify_shift_equivalence,
)
from tests.sftflow.testing_utils import random_factorization, random_irreducible

SPLIT_CERT = SECertificate(
    H=IntMatrix.from_rows([[1, 1, 0], [0, 0, 1]]),
    K=IntMatrix.from_rows([[1, 0], [0, 1], [1, 0]]),
    lag=1,
)


@pytest.mark.parametrize("transition", list(Transition))
def test_defining_relation(golden, transition):
    T = golden.to_int_matrix()
    if transition is Transition.TRANSPOSE:
        T = T.transpose()
    a = dim_element(golden, (2, -1), 3, transition)
    b = dim_element(golden, T.mat_vec((2, -1)), 4, transition)
    assert dim_equal(a, b)
    assert dim_equal(lift(a, 5), a)


def test_dim_equal_examples(golden):
    e1 = dim_element(golden, (1, 0), 0, Transition.TRANSPOSE)
    e2 = dim_element(golden, (0, 1), 0, Transition.TRANSPOSE)
    assert not dim_equal(e1, e2)
    zero = dim_element(golden, (0, 0), 0, Transition.TRANSPOSE)
    assert dim_equal(zero, dim_element(golden, (0, 0), 7, Transition.TRANSPOSE))


def test_dim_equal_with_kernel():
    """A^t kills (1, -1) for the full 2-shift, so [(1, -1), n] is zero."""
    full2 = BinMatrix.from_rows([[1, 1], [1, 1]])
    a = dim_element(full2, (1, -1), 2, Transition.TRANSPOSE)
    assert dim_equal(a, dim_element(full2, (0, 0), 0, Transition.TRANSPOSE))


def test_delta_round_trip(golden):
    a = dim_element(golden, (3, -2), 2, Transition.TRANSPOSE)
    assert delta(a).level == 3
    assert delta_inv(a).vector == golden.to_int_matrix().transpose().mat_vec((3, -2))
    assert dim_equal(delta_inv(delta(a)), a)
    assert dim_equal(delta(delta_inv(a)), a)


def test_dim_add(golden):
    a = dim_element(golden, (1, 0), 0, Transition.TRANSPOSE)
    b = dim_element(golden, (0, 1), 1, Transition.TRANSPOSE)
    total = dim_add(a, b)
    assert total.level == 1
    assert total.vector == (1, 2)


def test_dim_context_mismatch(golden, full2):
    a = dim_element(golden, (1, 0), 0, Transition.TRANSPOSE)
    with pytest.raises(ContextMismatchError):
        dim_equal(a, dim_element(full2, (1, 0), 0, Transition.TRANSPOSE))
    with pytest.raises(ContextMismatchError):
        dim_equal(a, dim_element(golden, (1, 0), 0, Transition.DIRECT))


def test_positive_at_level(golden):
    a = dim_element(golden, (1, -1), 0, Transition.TRANSPOSE)
    assert not positive_at_level(a, 0)
    assert positive_at_level(a, 1)
    with pytest.raises(ArgumentError):
        positive_at_level(a, -1)


def test_phi_maps_invert(golden, golden_split):
    for vector, level in [((1, 0), 0), ((2, -3), 2), ((0, 1), 5)]:
        a = dim_element(golden, vector, level, Transition.TRANSPOSE)
        image = phi_r(SPLIT_CERT, a, golden, golden_split)
        assert image.context == golden_split
        assert dim_equal(phi_r_inv(SPLIT_CERT, image, golden, golden_split), a)
        c = dim_element(golden, vector, level, Transition.DIRECT)
        image = phi_l(SPLIT_CERT, c, golden, golden_split)
        assert image.level == level + 1
        assert dim_equal(phi_l_inv(SPLIT_CERT, image, golden, golden_split), c)
    b = dim_element(golden_split, (1, -1, 2), 1, Transition.TRANSPOSE)
    assert dim_equal(
        phi_r(
            SPLIT_CERT,
            phi_r_inv(SPLIT_CERT, b, golden, golden_split),
            golden,
            golden_split,
        ),
        b,
    )


def test_phi_rejects_wrong_limit(golden, golden_split):
    c = dim_element(golden, (1, 0), 0, Transition.DIRECT)
    with pytest.raises(ContextMismatchError):
        phi_r(SPLIT_CERT, c, golden, golden_split)


@pytest.mark.parametrize(
    "rows, vector",
    [
        ([[1, 1], [1, 0]], (1, 1, 1, 0)),
        ([[1, 1], [1, 1]], (1, 1, 1, 1)),
        ([[1]], (1,)),
    ],
)
def test_u_tilde(rows, vector):
    A = BinMatrix.from_rows(rows)
    element = u_tilde(A)
    assert element.level == 1
    assert element.vector == vector
    assert u_tilde_via_right(A) == element
    assert u_tilde_via_left(A) == element


def test_diagonal_class(golden):
    assert diagonal_class(golden).vector == (1, 0, 0, 1)


def test_delta_tilde_fixes_u_tilde(rng):
    for _ in range(100):
        A = random_irreducible(rng)
        assert quad_equal(delta_tilde(u_tilde(A)), u_tilde(A))


def test_delta_tilde_on_split_tensor(golden):
    q = split_tensor(golden, (1, 0), 1, (1, 0), 1)
    shifted = golden.to_int_matrix().mat_vec((1, 0))
    expected = split_tensor(golden, shifted, 1, (1, 0), 2)
    assert quad_equal(delta_tilde(q), expected)
    zero = quad_element(golden, (0, 0, 0, 0), 0)
    assert quad_equal(delta_tilde(zero), zero)


def test_quad_group_structure(golden, full2):
    q = u_tilde(golden)
    zero = quad_element(golden, (0, 0, 0, 0), 3)
    assert quad_equal(quad_add(q, quad_neg(q)), zero)
    assert quad_equal(quad_add(q, zero), q)
    assert not quad_equal(q, zero)
    with pytest.raises(ContextMismatchError):
        quad_equal(q, u_tilde(full2))


def test_transport_of_u_tilde(golden, golden_split):
    assert verify_induced_isomorphism(golden, golden_split, SPLIT_CERT)
    image = se_induced_map(SPLIT_CERT, u_tilde(golden), golden_split)
    assert image.level == 2
    assert image.context == golden_split


def test_transport_with_higher_lag(golden):
    """(A, I, 1) certifies A ~ A; so does (A^2, A, 3)."""
    a = golden.to_int_matrix()
    for cert in (
        SECertificate(H=a, K=IntMatrix.identity(2), lag=1),
        SECertificate(H=a @ a, K=a, lag=3),
    ):
        assert verify_induced_isomorphism(golden, golden, cert)


def test_transport_along_moves_and_factorizations(rng):
    pairs = []
    while len(pairs) < 30:
        A = random_irreducible(rng, max_size=4)
        pairs.extend(
            (A, move.matrix, move.witness)
            for move in flow_moves(A)
            if move.witness is not None
        )
    for _ in range(30):
        pairs.append(random_factorization(rng))
    assert len(pairs) >= 50
    for A, B, witness in pairs:
        cert = certificate_from_elementary(witness)
        assert verify_shift_equivalence(A, B, cert)
        assert verify_induced_isomorphism(A.without_labels(), B.without_labels(), cert)


def test_transport_rejects_bad_certificate(golden, golden_split):
    bad = SECertificate(H=SPLIT_CERT.K.transpose(), K=SPLIT_CERT.K, lag=1)
    with pytest.raises(CertificateError):
        verify_induced_isomorphism(golden, golden_split, bad)


def test_suspension_k_class(golden):
    zero = quad_element(golden, (0, 0, 0, 0), 0)
    assert quad_equal(suspension_k_class(golden, CeilingFunction((1, 1))), zero)
    assert quad_equal(
        suspension_k_class(golden, CeilingFunction((2, 2))), u_tilde(golden)
    )
    assert suspension_k_class(golden, CeilingFunction((2, 1))).vector == (1, 1, 0, 0)


def test_suspension_k_class_chain_variant(golden):
    chain = suspension_k_class(golden, CeilingFunction((1, 1)), KClassVariant.CHAIN)
    assert quad_equal(chain, u_tilde(golden))
    with patch.dict("os.environ", {"SFTFLOW_K_CLASS_VARIANT": "chain"}):
        k_class = suspension_k_class(golden, CeilingFunction((2, 1)))
        assert k_class.vector == (2, 2, 1, 0)


def _random_quad(rng, A):
    vector = [rng.randint(-3, 3) for _ in range(A.size * A.size)]
    return quad_element(A, vector, rng.randint(0, 2))


def test_se_induced_map_is_additive_and_commutes_with_delta_tilde(rng):
    checked = 0
    while checked < 50:
        found = random_factorization(rng)
        if found is None:
            continue
        A, B, witness = found
        cert = certificate_from_elementary(witness)
        p, q = _random_quad(rng, A), _random_quad(rng, A)
        assert quad_equal(
            se_induced_map(cert, quad_add(p, q), B),
            quad_add(se_induced_map(cert, p, B), se_induced_map(cert, q, B)),
        )
        assert quad_equal(
            se_induced_map(cert, delta_tilde(p), B),
            delta_tilde(se_induced_map(cert, p, B)),
        )
        checked += 1

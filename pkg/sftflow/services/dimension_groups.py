"""Dimension triplets and quadruplets as computable inductive limits.

Conventions, fixed here once:

* Delta_A = lim(Z^N, A^t) and Delta_{A^t} = lim(Z^N, A); a DimElement
  records which of the two it lives in through its Transition.
* Delta~_A = Delta_{A^t} (x) Delta_A. A QuadElement stores one vector of
  Z^N (x) Z^N at a common level: the split tensor [u, n] (x) [v, n] is the
  row-major flattening of u v^t, and raising the level applies A (x) A^t.
  Read as an N x N matrix W, (P (x) Q) acts as W -> P W Q^t.
* Equality in a limit: lift both sides to the larger level and test the
  difference against the eventual kernel of the connecting map.

The identity delta~(u~_A) = u~_A holds only under these conventions, which
makes it a self-check of the orientation.
"""

from beartype import beartype
from beartype.typing import Optional, Sequence

from sftflow.entities.dataclasses import (
    BinMatrix,
    CeilingFunction,
    DimElement,
    IntMatrix,
    QuadElement,
    SECertificate,
)
from sftflow.entities.enums import KClassVariant, Transition
from sftflow.entities.exceptions import (
    ArgumentError,
    CertificateError,
    ContextMismatchError,
    DimensionError,
)
from sftflow.services.equivalence_certificates import verify_shift_equivalence
from sftflow.utils.intlin import eventual_kernel_member, kronecker, mat_pow
from sftflow.utils.logger_utils import structured_logger
from sftflow.utils.task_utils import get_k_class_variant


def transition_matrix(context: BinMatrix, transition: Transition) -> IntMatrix:
    """A, or A^t for the transposed system."""
    a = context.to_int_matrix()
    return a.transpose() if transition is Transition.TRANSPOSE else a


def quad_transition(context: BinMatrix) -> IntMatrix:
    """A (x) A^t, the level-raising map of Delta~_A."""
    a = context.to_int_matrix()
    return kronecker(a, a.transpose())


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(n))


def _outer(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(x * y for x in u for y in v)


# Dimension triplet


@beartype
def dim_element(
    A: BinMatrix, vector: Sequence[int], level: int, transition: Transition
) -> DimElement:
    """The class of vector at the given level in the dimension group of A."""
    return DimElement(
        context=A, transition=transition, vector=tuple(vector), level=level
    )


def _check_dim_context(a: DimElement, b: DimElement) -> None:
    if a.context.entries != b.context.entries or a.transition != b.transition:
        structured_logger.error(
            message="Dimension group context mismatch",
            left_size=a.context.size,
            right_size=b.context.size,
            left_transition=a.transition.value,
            right_transition=b.transition.value,
        )
        raise ContextMismatchError("Elements live in different dimension groups")


@beartype
def lift(a: DimElement, steps: int) -> DimElement:
    """Same class written `steps` levels higher."""
    T = transition_matrix(a.context, a.transition)
    return DimElement(
        context=a.context,
        transition=a.transition,
        vector=mat_pow(T, steps).mat_vec(a.vector),
        level=a.level + steps,
    )


@beartype
def dim_add(a: DimElement, b: DimElement) -> DimElement:
    """Sum after lifting both summands to the higher level."""
    _check_dim_context(a, b)
    level = max(a.level, b.level)
    u = lift(a, level - a.level).vector
    v = lift(b, level - b.level).vector
    return DimElement(
        context=a.context,
        transition=a.transition,
        vector=tuple(x + y for x, y in zip(u, v)),
        level=level,
    )


@beartype
def dim_equal(a: DimElement, b: DimElement) -> bool:
    """Equality of classes: (v, n) ~ (T v, n + 1).

    Raises:
        ContextMismatchError: If the elements live in different groups.
    """
    _check_dim_context(a, b)
    level = max(a.level, b.level)
    u = lift(a, level - a.level).vector
    v = lift(b, level - b.level).vector
    return eventual_kernel_member(
        transition_matrix(a.context, a.transition),
        tuple(x - y for x, y in zip(u, v)),
    )


@beartype
def delta(a: DimElement) -> DimElement:
    """Dimension drop automorphism [v, n] -> [v, n + 1]."""
    return DimElement(
        context=a.context, transition=a.transition, vector=a.vector, level=a.level + 1
    )


@beartype
def delta_inv(a: DimElement) -> DimElement:
    """Inverse of delta: [v, n] -> [T v, n]."""
    T = transition_matrix(a.context, a.transition)
    return DimElement(
        context=a.context,
        transition=a.transition,
        vector=T.mat_vec(a.vector),
        level=a.level,
    )


@beartype
def positive_at_level(element: DimElement | QuadElement, k: int) -> bool:
    """All coordinates nonnegative after lifting k more levels.

    Positivity in the limit asks for some k, so a False here is not final.
    """
    if k < 0:
        raise ArgumentError(f"Negative lift {k}")
    if isinstance(element, DimElement):
        return all(x >= 0 for x in lift(element, k).vector)
    return all(x >= 0 for x in quad_lift(element, k).vector)


def _require_certificate(
    A: BinMatrix, B: BinMatrix, cert: SECertificate
) -> None:
    result = verify_shift_equivalence(A.to_int_matrix(), B.to_int_matrix(), cert)
    if not result:
        structured_logger.error(
            message="Invalid shift-equivalence certificate", reason=result.reason
        )
        raise CertificateError(result.reason or "shift equivalence")


def _check_source(a: DimElement, source: BinMatrix, transition: Transition) -> None:
    if a.context.entries != source.entries or a.transition is not transition:
        raise ContextMismatchError(
            f"Element must live in the {transition.value} limit of the source matrix"
        )


@beartype
def phi_r(
    cert: SECertificate, a: DimElement, source: BinMatrix, target: BinMatrix
) -> DimElement:
    """Delta_A -> Delta_B, [v, k] -> [H^t v, k].

    Raises:
        CertificateError: If cert does not certify source ~ target.
    """
    _require_certificate(source, target, cert)
    _check_source(a, source, Transition.TRANSPOSE)
    return DimElement(
        context=target,
        transition=Transition.TRANSPOSE,
        vector=cert.H.transpose().mat_vec(a.vector),
        level=a.level,
    )


@beartype
def phi_r_inv(
    cert: SECertificate, b: DimElement, source: BinMatrix, target: BinMatrix
) -> DimElement:
    """Delta_B -> Delta_A, [u, j] -> [K^t u, j + lag]."""
    _require_certificate(source, target, cert)
    _check_source(b, target, Transition.TRANSPOSE)
    return DimElement(
        context=source,
        transition=Transition.TRANSPOSE,
        vector=cert.K.transpose().mat_vec(b.vector),
        level=b.level + cert.lag,
    )


@beartype
def phi_l(
    cert: SECertificate, a: DimElement, source: BinMatrix, target: BinMatrix
) -> DimElement:
    """Delta_{A^t} -> Delta_{B^t}, [v, k] -> [K v, k + lag]."""
    _require_certificate(source, target, cert)
    _check_source(a, source, Transition.DIRECT)
    return DimElement(
        context=target,
        transition=Transition.DIRECT,
        vector=cert.K.mat_vec(a.vector),
        level=a.level + cert.lag,
    )


@beartype
def phi_l_inv(
    cert: SECertificate, b: DimElement, source: BinMatrix, target: BinMatrix
) -> DimElement:
    """Delta_{B^t} -> Delta_{A^t}, [u, j] -> [H u, j]."""
    _require_certificate(source, target, cert)
    _check_source(b, target, Transition.DIRECT)
    return DimElement(
        context=source,
        transition=Transition.DIRECT,
        vector=cert.H.mat_vec(b.vector),
        level=b.level,
    )


# Dimension quadruplet


@beartype
def quad_element(A: BinMatrix, vector: Sequence[int], level: int) -> QuadElement:
    """The class of a vector of length N^2 at the given level in Delta~_A."""
    return QuadElement(context=A, vector=tuple(vector), level=level)


@beartype
def split_tensor(
    A: BinMatrix, u: Sequence[int], n: int, v: Sequence[int], m: int
) -> QuadElement:
    """[u, n] (x) [v, m] written at the common level max(n, m)."""
    if len(u) != A.size or len(v) != A.size:
        raise DimensionError(f"Split tensor factors must have length {A.size}")
    level = max(n, m)
    a = A.to_int_matrix()
    u_lifted = mat_pow(a, level - n).mat_vec(u)
    v_lifted = mat_pow(a.transpose(), level - m).mat_vec(v)
    return QuadElement(context=A, vector=_outer(u_lifted, v_lifted), level=level)


def _check_quad_context(p: QuadElement, q: QuadElement) -> None:
    if p.context.entries != q.context.entries:
        structured_logger.error(
            message="Quadruplet context mismatch",
            left_size=p.context.size,
            right_size=q.context.size,
        )
        raise ContextMismatchError("Elements live over different matrices")


@beartype
def quad_lift(q: QuadElement, steps: int) -> QuadElement:
    """Pushes q forward by steps applications of A (x) A^t; same class."""
    return QuadElement(
        context=q.context,
        vector=mat_pow(quad_transition(q.context), steps).mat_vec(q.vector),
        level=q.level + steps,
    )


@beartype
def quad_add(p: QuadElement, q: QuadElement) -> QuadElement:
    """Sum in Delta~_A after lifting both terms to a common level."""
    _check_quad_context(p, q)
    level = max(p.level, q.level)
    u = quad_lift(p, level - p.level).vector
    v = quad_lift(q, level - q.level).vector
    return QuadElement(
        context=p.context, vector=tuple(x + y for x, y in zip(u, v)), level=level
    )


@beartype
def quad_neg(q: QuadElement) -> QuadElement:
    """Additive inverse."""
    return QuadElement(
        context=q.context, vector=tuple(-x for x in q.vector), level=q.level
    )


@beartype
def quad_equal(p: QuadElement, q: QuadElement) -> bool:
    """Equality in Delta~_A = lim(Z^{N^2}, A (x) A^t).

    Raises:
        ContextMismatchError: If the elements live over different matrices.
    """
    _check_quad_context(p, q)
    level = max(p.level, q.level)
    u = quad_lift(p, level - p.level).vector
    v = quad_lift(q, level - q.level).vector
    return eventual_kernel_member(
        quad_transition(p.context), tuple(x - y for x, y in zip(u, v))
    )


@beartype
def u_tilde(A: BinMatrix) -> QuadElement:
    """u~_A = sum_j [e_j, 1] (x) [A^t e_j, 1]."""
    a_t = A.to_int_matrix().transpose()
    vector = [0] * (A.size * A.size)
    for j in range(A.size):
        for index, x in enumerate(_outer(_unit(A.size, j), a_t.column(j))):
            vector[index] += x
    return QuadElement(context=A, vector=tuple(vector), level=1)


@beartype
def diagonal_class(A: BinMatrix) -> QuadElement:
    """sum_j [e_j, 1] (x) [e_j, 1]."""
    n = A.size
    return QuadElement(
        context=A,
        vector=tuple(int(i == j) for i in range(n) for j in range(n)),
        level=1,
    )


@beartype
def u_tilde_via_right(A: BinMatrix) -> QuadElement:
    """(id (x) delta_A^{-1}) applied to the diagonal class."""
    d = diagonal_class(A)
    right = kronecker(IntMatrix.identity(A.size), A.to_int_matrix().transpose())
    return QuadElement(context=A, vector=right.mat_vec(d.vector), level=d.level)


@beartype
def u_tilde_via_left(A: BinMatrix) -> QuadElement:
    """(delta_{A^t}^{-1} (x) id) applied to the diagonal class."""
    d = diagonal_class(A)
    left = kronecker(A.to_int_matrix(), IntMatrix.identity(A.size))
    return QuadElement(context=A, vector=left.mat_vec(d.vector), level=d.level)


@beartype
def delta_tilde(q: QuadElement) -> QuadElement:
    """delta~_A = delta_{A^t}^{-1} (x) delta_A.

    On split tensors [u, n] (x) [v, n] -> [A u, n] (x) [v, n + 1]; bringing
    the first factor up to n + 1 multiplies it by A once more, so the stored
    vector becomes (A^2 (x) I) w at level n + 1.
    """
    a = q.context.to_int_matrix()
    step = kronecker(a @ a, IntMatrix.identity(q.context.size))
    return QuadElement(
        context=q.context, vector=step.mat_vec(q.vector), level=q.level + 1
    )


@beartype
def se_induced_map(
    cert: SECertificate, q: QuadElement, target: BinMatrix
) -> QuadElement:
    """Phi = Phi_l (x) Phi_r : Delta~_A -> Delta~_B.

    [u, n] (x) [v, n] -> [K u, n + lag] (x) [H^t v, n]; lifting the second
    factor lag levels to re-align gives the stored map
    K (x) (B^t)^lag H^t with the common level raised by lag.

    Raises:
        CertificateError: If cert does not certify context(q) ~ target.
    """
    source = q.context
    _require_certificate(source, target, cert)
    b_t = target.to_int_matrix().transpose()
    right = mat_pow(b_t, cert.lag) @ cert.H.transpose()
    transform = kronecker(cert.K, right)
    return QuadElement(
        context=target, vector=transform.mat_vec(q.vector), level=q.level + cert.lag
    )


@beartype
def verify_induced_isomorphism(A: BinMatrix, B: BinMatrix, cert: SECertificate) -> bool:
    """Phi(u~_A) = u~_B for the map induced by a shift equivalence.

    Raises:
        CertificateError: If cert does not certify A ~ B.
    """
    image = se_induced_map(cert, u_tilde(A), B)
    result = quad_equal(image, u_tilde(B))
    if not result:
        structured_logger.error(
            message="Transported u~ differs from target u~",
            source_size=A.size,
            target_size=B.size,
            lag=cert.lag,
        )
    return result


@beartype
def suspension_k_class(
    A: BinMatrix,
    f: CeilingFunction,
    variant: Optional[KClassVariant] = None,
) -> QuadElement:
    """Class sum_j w_j [e_j, 1] (x) [A^t e_j, 1] of a suspension.

    DISPLAYED uses w_j = m_j = f_j - 1, CHAIN uses w_j = f_j (one term per
    chain vertex). The variant defaults to SFTFLOW_K_CLASS_VARIANT.

    Raises:
        DimensionError: If f does not have one value per state.
    """
    if f.size != A.size:
        raise DimensionError(f"Ceiling has {f.size} values for {A.size} states")
    chosen = get_k_class_variant(variant)
    weights = f.m if chosen is KClassVariant.DISPLAYED else f.values
    a_t = A.to_int_matrix().transpose()
    vector = [0] * (A.size * A.size)
    for j, w in enumerate(weights):
        if not w:
            continue
        for index, x in enumerate(_outer(_unit(A.size, j), a_t.column(j))):
            vector[index] += w * x
    return QuadElement(context=A, vector=tuple(vector), level=1)

"""Catalogue of named trace identities used by tests, suites and the ideal builders."""

from typing import Sequence

from .tracepoly import TracePolynomial, class_var, t
from .words import Word


def fundamental_relation(w1: Word, w2: Word) -> TracePolynomial:
    """(w1 w2) + (w1 w2^-1) - (w1)(w2)."""
    return class_var(w1 * w2) + class_var(w1 * w2.inverse()) - class_var(w1) * class_var(w2)


def triple_product_identity(i: int = 1, j: int = 2, k: int = 3) -> TracePolynomial:
    """(ai)(aj)(ak) - (ai aj)(ak) - (ai ak)(aj) - (aj ak)(ai) + (ai aj ak) + (ai ak aj)."""
    return (
        t(i) * t(j) * t(k)
        - t(i, j) * t(k)
        - t(i, k) * t(j)
        - t(j, k) * t(i)
        + t(i, j, k)
        + t(i, k, j)
    )


def fricke_triple(i: int = 1, j: int = 2, k: int = 3) -> TracePolynomial:
    """The cubic relation among the seven traces of three generators."""
    x, y, z = t(i), t(j), t(k)
    xy, xz, yz = t(i, j), t(i, k), t(j, k)
    xyz = t(i, j, k)
    return (
        x ** 2 + y ** 2 + z ** 2 + xy ** 2 + xz ** 2 + yz ** 2
        + xyz ** 2 + xy * xz * yz + xyz * x * y * z
        - xyz * x * yz - xyz * y * xz - xyz * z * xy
        - x * y * xy - x * z * xz - y * z * yz - 4
    )


def four_block_relation(i: int, j: int, k: int, alpha: Sequence[int]) -> TracePolynomial:
    """Relation expressing -2 t_{ijk alpha} through shorter subscripts.

    ``alpha`` is a nonempty sequence of indices distinct from i, j, k; each
    t_X below is the class of the positive word with subscript sequence X.
    """
    a = tuple(alpha)

    def c(*parts):
        indices = []
        for part in parts:
            indices.extend(part if isinstance(part, tuple) else (part,))
        return t(*indices)

    return (
        -2 * c(i, j, k, a)
        + c(i, k) * c(j) * c(a)
        - c(i) * c(j) * c(k, a)
        - c(j) * c(k) * c(a, i)
        - c(i, k) * c(j, a)
        + c(i, j) * c(k, a)
        + c(j, k) * c(a, i)
        - c(i, k, j) * c(a)
        + c(i) * c(j, k, a)
        + c(j) * c(k, a, i)
        + c(k) * c(a, i, j)
    )


def trace_power(x: TracePolynomial, k: int) -> TracePolynomial:
    """tr(A^k) in terms of x = tr(A): s0 = 2, s1 = x, s_{k+1} = x s_k - s_{k-1}."""
    if k < 0:
        k = -k
    previous, current = TracePolynomial.constant(2), x
    if k == 0:
        return previous
    for _ in range(k - 1):
        previous, current = current, x * current - previous
    return current


def commutator_trace(i: int = 1, j: int = 2) -> TracePolynomial:
    """tr(A B A^-1 B^-1) = x^2 + y^2 + z^2 - x y z - 2 with z = tr(AB)."""
    x, y, z = t(i), t(j), t(i, j)
    return x ** 2 + y ** 2 + z ** 2 - x * y * z - 2

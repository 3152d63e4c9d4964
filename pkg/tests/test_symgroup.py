import pytest

from src.core.errors import LetterSetMismatch, PreconditionError
from src.core.identities import triple_product_identity
from src.core.reduce import psi_normal_form
from src.core.repeval import SamplingMode, verify_identity
from src.core.symgroup import (
    GroupAlgebraElement,
    Permutation,
    Tableau,
    canonical_tableau,
    column_stabilizer,
    cycles_to_trace_poly,
    lemma3_decomposition,
    lemma6_identity,
    lemma7_identity,
    left_act,
    partitions,
    perm_mul,
    procesi_generators,
    row_stabilizer,
    sgn,
    young_symmetrizer,
)
from src.core.tracepoly import t


def test_composition_is_right_to_left():
    sigma = Permutation.from_cycles([1, 2, 3], [(1, 2)])
    tau = Permutation.from_cycles([1, 2, 3], [(2, 3)])
    product = perm_mul(sigma, tau)
    assert product(1) == 2
    assert product(2) == 3
    assert product(3) == 1
    assert product.cycles() == [(1, 2, 3)]
    assert str(product) == "(a1 a2 a3)"
    assert sgn(product) == 1
    assert sigma.sign() == -1
    assert (product * product.inverse()).is_identity()


def test_cycles_include_fixed_points():
    sigma = Permutation.from_cycles([1, 2, 3, 4], [(3, 1)])
    assert sigma.cycles() == [(1, 3), (2,), (4,)]
    assert str(Permutation.identity([1, 2])) == "()"


def test_letter_set_mismatch():
    with pytest.raises(LetterSetMismatch):
        perm_mul(Permutation.identity([1, 2]), Permutation.identity([1, 2, 3]))
    with pytest.raises(LetterSetMismatch):
        GroupAlgebraElement.of(Permutation.identity([1])) + GroupAlgebraElement.of(Permutation.identity([2]))
    with pytest.raises(LetterSetMismatch):
        Permutation.identity([1, 2, 3]).extend([1, 2])


def test_not_a_bijection():
    with pytest.raises(PreconditionError):
        Permutation((1, 2), (1, 1))


def test_extend_fixes_new_letters():
    sigma = Permutation.transposition([1, 2], 1, 2).extend([1, 2, 3])
    assert sigma.letters == (1, 2, 3)
    assert sigma(3) == 3


def test_group_algebra_arithmetic():
    e = GroupAlgebraElement.of(Permutation.identity([1, 2]))
    s = GroupAlgebraElement.of(Permutation.transposition([1, 2], 1, 2))
    assert len(e - e) == 0
    assert (e + s) * (e + s) == (e + s).scale(2)
    assert (e - s) * (e + s) == GroupAlgebraElement([1, 2])


def test_left_act_extends_to_union():
    tau = Permutation.transposition([1, 2, 3, 4], 3, 4)
    x = young_symmetrizer(canonical_tableau((1, 1, 1)))
    y = left_act(tau, x)
    assert y.letters == (1, 2, 3, 4)
    assert len(y) == len(x)


def test_tableau_validation_and_shape():
    Y = Tableau(((1, 2, 3), (4, 5), (6,)))
    assert Y.shape == (3, 2, 1)
    assert Y.columns == ((1, 4, 6), (2, 5), (3,))
    assert str(Y) == "(a1 a2 a3 / a4 a5 / a6)"
    with pytest.raises(PreconditionError):
        Tableau(((1,), (2, 3)))
    with pytest.raises(PreconditionError):
        Tableau(((1, 2), (2,)))


def test_stabilizer_sizes():
    Y = canonical_tableau((3, 2, 1))
    assert len(row_stabilizer(Y)) == 12
    assert len(column_stabilizer(Y)) == 12
    Y = canonical_tableau((3, 3, 2))
    assert len(row_stabilizer(Y)) == 72
    assert len(column_stabilizer(Y)) == 72
    Y = canonical_tableau((2, 1, 1))
    assert len(row_stabilizer(Y)) == 2
    assert len(column_stabilizer(Y)) == 6


@pytest.mark.parametrize("shape,count", [((1, 1, 1), 6), ((1,), 1), ((2, 1), 4)])
def test_symmetrizer_term_counts(shape, count):
    assert len(young_symmetrizer(canonical_tableau(shape))) == count


def test_column_symmetrizer_is_triple_product_identity():
    x = young_symmetrizer(canonical_tableau((1, 1, 1)))
    assert cycles_to_trace_poly(x) == triple_product_identity()


def test_lemma3_decomposition():
    Y = Tableau(((1, 2), (3, 4)))
    decomposition = lemma3_decomposition(Y, 4)
    assert len(decomposition.row_cosets) == 2
    assert len(decomposition.column_cosets) == 2
    assert sum(len(c) for c in decomposition.row_cosets) == 4
    assert sum(len(c) for c in decomposition.column_cosets) == 4



@pytest.mark.parametrize("corner, rows, cols", [(5, 12, 4), (3, 12, 4)])
def test_lemma3_decomposition_covers_both_stabilizers(corner, rows, cols):
    Y = canonical_tableau((3, 2))
    decomposition = lemma3_decomposition(Y, corner)
    assert sum(len(c) for c in decomposition.row_cosets) == rows == len(row_stabilizer(Y))
    assert sum(len(c) for c in decomposition.column_cosets) == cols == len(column_stabilizer(Y))

def test_lemma3_decomposition_rejects_inner_box():
    with pytest.raises(PreconditionError):
        lemma3_decomposition(Tableau(((1, 2), (3, 4))), 2)
    with pytest.raises(PreconditionError):
        lemma3_decomposition(Tableau(((1, 2), (3, 4))), 9)


def test_partitions():
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert partitions(5, min_parts=3) == [(3, 1, 1), (2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)]


def test_procesi_generator_counts():
    assert len(procesi_generators(3)) == 1
    assert len(procesi_generators(4)) == 2
    assert len(procesi_generators(5)) == 4


def test_procesi_generators_small_and_large():
    with pytest.warns(UserWarning):
        assert procesi_generators(2) == []
    with pytest.raises(PreconditionError):
        procesi_generators(6)


@pytest.mark.parametrize("m", [3, 4])
def test_procesi_polynomials_vanish_on_all_matrices(m, seed):
    for x in procesi_generators(m):
        report = verify_identity(cycles_to_trace_poly(x), trials=5, seed=seed, mode=SamplingMode.ANY)
        assert report.passed


def test_procesi_polynomials_reduce_to_zero():
    for m in (3, 4):
        for x in procesi_generators(m):
            assert psi_normal_form(cycles_to_trace_poly(x)).is_zero()


def test_negative_control_fails(seed):
    report = verify_identity(t(1) * t(2) + t(1, 2), trials=5, seed=seed)
    assert not report.passed
    assert report.counterexample


def test_determinant_identities_vanish(seed):
    assert verify_identity(lemma6_identity((1, 2, 3, 4), (5, 6, 7, 8)), trials=3, seed=seed, mode=SamplingMode.ANY).passed
    assert verify_identity(lemma7_identity((1, 2, 3), (4, 5, 6)), trials=5, seed=seed, mode=SamplingMode.ANY).passed


def test_determinant_identities_need_distinct_letters():
    with pytest.raises(PreconditionError):
        lemma6_identity((1, 2, 3, 4), (4, 5, 6, 7))
    with pytest.raises(PreconditionError):
        lemma7_identity((1, 2, 3), (3, 4))

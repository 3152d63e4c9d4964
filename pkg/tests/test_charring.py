import threading
from fractions import Fraction
from pathlib import Path

import pytest

from src.core.charring import (
    INFINITE,
    Ideal,
    MonomialOrder,
    Presentation,
    buchberger,
    bracket,
    bracket_syzygy,
    certifies_psi_zero,
    gm_generators,
    handlebody_ideal,
    kernel_normal_form,
    letter_count,
    labelled_gm_generators,
    load_presentation,
    m_entry,
    manifold_ideal,
    member,
    normal_form_mod,
    parse_presentation,
    quotient_dimension,
    relation_basis,
    relator_polynomials,
    t0_alphabet,
    trace_relation_ideal,
    variable_order,
)
from src.core.errors import ComputationCancelled, ParseError, PreconditionError, ResourceLimitExceeded
from src.core.identities import four_block_relation, fricke_triple
from src.core.orchestrator import LENS_DIMENSIONS, TREFOIL, lens
from src.core.repeval import verify_identity
from src.core.tracepoly import ONE, TVar, evaluate, t
from src.core.words import Word, parse_word

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "presentations"


def test_alphabet_and_order():
    assert len(t0_alphabet(3)) == 7
    assert len(t0_alphabet(4)) == 14
    assert variable_order(3)[0] == TVar((1, 2, 3))
    assert variable_order(3)[-1] == TVar((3,))


def test_m_entry():
    assert m_entry(1, 1) == t(1) ** 2 - 4
    assert m_entry(1, 2) == 2 * t(1, 2) - t(1) * t(2)
    with pytest.raises(PreconditionError):
        m_entry(0, 1)


def test_gm_generator_counts():
    assert [len(gm_generators(n)) for n in (1, 2, 3, 4)] == [0, 0, 2, 9]


def test_gm_generator_families():
    labelled = labelled_gm_generators(4)
    assert labelled[0].label == "q1(1,2,3)"
    assert labelled[0].polynomial == fricke_triple()
    labels = [g.label for g in labelled]
    assert "q2(3,4)" in labels
    assert [l for l in labels if l.startswith("q3")] == []
    q4 = dict(labelled)["q4(1,2,3)"]
    assert q4 == 4 * fricke_triple()


def test_handlebody_generators_stay_in_alphabet():
    ideal = handlebody_ideal(5)
    alphabet = set(t0_alphabet(5))
    assert all(set(p.variables()) <= alphabet for p in ideal.generators)


def test_relator_polynomials_of_projective_space():
    rp3 = Presentation(1, (parse_word("a1^2"),))
    assert relator_polynomials(rp3) == [t(1) ** 2 - 4, t(1) ** 3 - 4 * t(1)]


def test_relator_polynomials_include_products():
    P = Presentation(2, (parse_word("a1"),))
    polys = relator_polynomials(P)
    assert t(1) - 2 in polys
    assert t(1, 2) - t(2) in polys


def test_presentation_validation():
    with pytest.raises(PreconditionError):
        Presentation(0)
    with pytest.raises(PreconditionError):
        Presentation(1, (parse_word("a1 a1^-1"),))
    with pytest.raises(PreconditionError):
        Presentation(1, (parse_word("a2"),))
    P = Presentation(2, (parse_word("a2 a1 a2^-1"),))
    assert P.relators == (Word.positive([1]),)


def test_ideal_validation():
    with pytest.raises(PreconditionError):
        Ideal(2, (t(1, 2, 3),))
    with pytest.raises(PreconditionError):
        Ideal(1, (t(1, 2),))


def test_buchberger_small_cases():
    assert buchberger(Ideal(1, (t(1) ** 2 - 4,))).basis == (t(1) ** 2 - 4,)
    assert buchberger(Ideal(2)).basis == ()
    unit = buchberger(Ideal(1, (t(1) - 2, t(1) - 3)))
    assert unit.basis == (ONE,)
    assert unit.is_unit()
    assert quotient_dimension(unit) == 0


def test_basis_is_monic_and_reduced():
    basis = buchberger(manifold_ideal(lens(3)))
    # gcd of t1^3 - 3 t1 - 2 and t1^4 - 4 t1^2 - t1 + 2
    assert basis.basis == (t(1) ** 2 - t(1) - 2,)


def test_membership_and_normal_form():
    basis = buchberger(Ideal(1, (t(1) ** 2 - 4,)))
    assert member(basis, t(1) ** 3 - 4 * t(1))
    assert not member(basis, t(1) - 2)
    assert normal_form_mod(basis, t(1) ** 2) == 4


@pytest.mark.parametrize("p,dimension", sorted(LENS_DIMENSIONS.items()))
def test_lens_space_dimensions(p, dimension):
    assert quotient_dimension(buchberger(manifold_ideal(lens(p)))) == dimension


def test_free_groups_have_infinite_quotients(free3):
    assert quotient_dimension(buchberger(manifold_ideal(Presentation(1)))) == INFINITE
    assert quotient_dimension(buchberger(manifold_ideal(free3))) == INFINITE


def test_orders_agree_on_dimension():
    for order in MonomialOrder:
        assert quotient_dimension(buchberger(manifold_ideal(lens(4)), order)) == 3


def test_trefoil_components():
    ideal = manifold_ideal(Presentation(2, (parse_word(TREFOIL),)))
    x_var, y_var, z_var = TVar((1,)), TVar((2,)), TVar((1, 2))
    for x in (Fraction(0), Fraction(3), Fraction(-1, 2)):
        for z in (x * x - 2, Fraction(1)):
            values = {x_var: x, y_var: x, z_var: z}
            assert all(evaluate(g, values) == 0 for g in ideal.generators)
    values = {x_var: Fraction(1), y_var: Fraction(2), z_var: Fraction(1)}
    assert any(evaluate(g, values) != 0 for g in ideal.generators)


def test_certification(free3):
    assert certifies_psi_zero(fricke_triple(), free3)
    assert certifies_psi_zero(four_block_relation(1, 2, 3, (4,)), Presentation(4))
    assert not certifies_psi_zero(t(1) - 2, Presentation(1))
    assert certifies_psi_zero(t(1) ** 2 - 4, Presentation(1, (parse_word("a1^2"),)))


def test_budget_is_enforced():
    with pytest.raises(ResourceLimitExceeded) as info:
        buchberger(manifold_ideal(lens(5)), budget=1)
    assert info.value.budget == 1


def test_budget_counts_generators_and_pairs():
    # the two lens generators reduce without a single leading-term cancellation
    with pytest.raises(ResourceLimitExceeded) as info:
        buchberger(manifold_ideal(lens(5)), budget=2)
    assert info.value.steps == 3


def test_cancellation():
    cancel = threading.Event()
    cancel.set()
    with pytest.raises(ComputationCancelled):
        buchberger(manifold_ideal(lens(5)), cancel=cancel)


def test_parse_presentation():
    P = parse_presentation("# comment\ngenerators: 2\nrelator: a1 a2 a1^-1 a2^-1\n", name="torus")
    assert P.n == 2
    assert P.name == "torus"
    assert str(P) == "<a1, a2 | a1 a2 a1^-1 a2^-1>"


@pytest.mark.parametrize(
    "text,position",
    [
        ("generators: 2\nfoo", 14),
        ("generators: 1\nrelator: a1 b", 26),
        ("relator: a1", 0),
        ("generators: 1\ngenerators: 2", 14),
    ],
)
def test_parse_presentation_errors(text, position):
    with pytest.raises(ParseError) as info:
        parse_presentation(text)
    assert info.value.position == position


def test_bundled_presentations():
    rp3 = load_presentation(DATA_DIR / "rp3.pres")
    assert rp3.name == "rp3"
    assert rp3.relators == (Word.positive([1, 1]),)
    trefoil = load_presentation(DATA_DIR / "trefoil.pres")
    assert trefoil.relators == (parse_word(TREFOIL),)
    for path in sorted(DATA_DIR.glob("*.pres")):
        assert load_presentation(path).n >= 1


def test_bracket_is_the_commutator_trace_difference():
    assert bracket(1, 2, 3) == 2 * t(1, 2, 3) - t(1) * t(2, 3) - t(2) * t(1, 3) - t(3) * t(1, 2) + t(1) * t(2) * t(3)
    with pytest.raises(PreconditionError):
        bracket_syzygy(1, (1, 2, 3, 3))


def test_trace_relations_vanish_on_sl2():
    ideal = trace_relation_ideal(4)
    # 10 bracket products, 4 syzygies, 1 minor
    assert len(ideal) == 15
    for p in ideal.generators:
        assert verify_identity(p, trials=5, seed=3).passed, str(p)


def test_trace_relation_limit():
    with pytest.raises(PreconditionError):
        trace_relation_ideal(5)


def test_relation_basis_of_three_generators_is_the_fricke_relation():
    basis = relation_basis(3)
    assert len(basis) == 1
    assert member(basis, fricke_triple())
    assert quotient_dimension(basis) == INFINITE


def test_kernel_normal_form():
    assert kernel_normal_form(fricke_triple()).is_zero()
    assert kernel_normal_form(fricke_triple(1, 2, 4)).is_zero()
    assert kernel_normal_form(t(1, 2, 3)) == t(1, 2, 3)
    assert kernel_normal_form(t(1) * t(2) - 3) == t(1) * t(2) - 3
    assert letter_count(t(2, 4)) == 4
    assert letter_count(ONE) == 0


def test_weighted_order_agrees_on_dimension():
    for p in (3, 4):
        weighted = buchberger(manifold_ideal(lens(p)), MonomialOrder.WEIGHTED)
        assert quotient_dimension(weighted) == LENS_DIMENSIONS[p]

from fractions import Fraction

import pytest

from src.core.errors import ParseError, PreconditionError
from src.core.tracepoly import (
    ClassVar,
    TracePolynomial,
    TVar,
    class_var,
    evaluate,
    parse_poly,
    poly_det,
    substitute_generators,
    substitute_vars,
    t,
)
from src.core.words import Word, canonical_class, parse_word
from src.utils.sampling import random_polynomial, random_rational, random_substitution


def test_ascending_classes_become_coordinates():
    assert parse_poly("(a2 a1)") == t(1, 2)
    assert parse_poly("(a3 a1 a2)") == t(1, 2, 3)
    assert parse_poly("t12") == t(1, 2)
    assert parse_poly("t{1,2}") == t(1, 2)
    assert t(1, 2).variables() == (TVar((1, 2)),)


def test_trivial_class_is_two():
    assert class_var(Word()) == 2
    assert parse_poly("(1)") == 2
    assert parse_poly("(a1 a1^-1)") == 2


def test_class_var_rejects_coordinates_and_trivial():
    with pytest.raises(ValueError):
        ClassVar(canonical_class(parse_word("a1 a2")))
    with pytest.raises(ValueError):
        ClassVar(canonical_class(Word()))
    with pytest.raises(ValueError):
        TVar((2, 1))


def test_arithmetic():
    x = t(1)
    assert (x + 1) ** 2 == x * x + 2 * x + 1
    assert x - x == 0
    assert (x * 0).is_zero()
    assert (3 - x) + x == 3
    assert (x ** 2).degree() == 2


def test_ring_axioms_on_random_polynomials(rng):
    for _ in range(30):
        p, q, r = (random_polynomial(rng, 4, max_length=5) for _ in range(3))
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p - p == 0
        assert p * 1 == p and p + 0 == p


def test_format_orders_positive_negative_constant():
    assert str(t(1) ** 2 - 4) == "t1^2 - 4"
    assert str(2 * t(1, 2) - t(1) * t(2)) == "2 t12 - t1 t2"
    assert str(TracePolynomial()) == "0"
    assert str(-t(1)) == "-t1"
    assert str(Fraction(1, 2) * t(1)) == "1/2 t1"
    assert str(t(10, 11)) == "t{10,11}"


def test_parse_round_trip_of_format():
    p = parse_poly("3/2 (a1 a2^-1) t3 - t123 + 1")
    assert parse_poly(str(p)) == p


def test_parse_round_trip_on_random_polynomials(rng):
    for _ in range(200):
        p = random_rational(rng) * random_polynomial(rng, 4, max_length=6) + random_rational(rng)
        assert parse_poly(str(p)) == p, str(p)


def test_parse_coefficients_and_powers():
    p = parse_poly("3/2 t1^2 * t2 - 2")
    assert p.coefficient([TVar((1,)), TVar((1,)), TVar((2,))]) == Fraction(3, 2)
    assert p.constant_term() == -2


@pytest.mark.parametrize("text", ["t1 +", "(a1", "", "t1 $ t2", "1/0 t1", "(a1 b)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poly(text)


def test_parse_error_position_inside_class():
    with pytest.raises(ParseError) as info:
        parse_poly("t1 + (a1 b2)")
    assert info.value.position == 9


def test_zero_denominator_points_at_the_slash():
    with pytest.raises(ParseError) as info:
        parse_poly("t1 + 1/0 t2")
    assert info.value.position == 6


def test_evaluate():
    values = {TVar((1,)): 3, TVar((2,)): Fraction(1, 2)}
    assert evaluate(t(1) * t(2) + 1, values) == Fraction(5, 2)
    with pytest.raises(PreconditionError):
        evaluate(t(3), values)


def test_poly_det():
    assert poly_det([[t(1), 1], [1, t(2)]]) == t(1) * t(2) - 1
    assert poly_det([[2]]) == 2
    with pytest.raises(PreconditionError):
        poly_det([[1, 2]])


def test_substitute_vars_mapping_keeps_missing():
    p = t(1) * t(2)
    assert substitute_vars(p, {TVar((1,)): TracePolynomial.constant(3)}) == 3 * t(2)


def test_substitute_generators():
    assert substitute_generators(t(1, 2), {2: Word.positive([1])}) == parse_poly("(a1 a1)")
    assert substitute_generators(t(1, 2), {1: parse_word("a3^-1")}) == parse_poly("(a2 a3^-1)")
    assert substitute_generators(t(1, 2), {1: parse_word("a2^-1")}) == 2
    assert substitute_generators(t(1), {}) == t(1)


def test_substitute_generators_is_a_ring_map(rng):
    for _ in range(20):
        p, q = random_polynomial(rng, 3, max_length=4), random_polynomial(rng, 3, max_length=4)
        sub = random_substitution(rng, [1, 2, 3], 4)
        image_p, image_q = substitute_generators(p, sub), substitute_generators(q, sub)
        assert substitute_generators(p * q, sub) == image_p * image_q
        assert substitute_generators(p + q, sub) == image_p + image_q

import pytest

from src.core.errors import ParseError
from src.core.words import (
    Letter,
    Word,
    canonical_class,
    cyclic_reduce,
    format_word,
    free_reduce,
    parse_word,
    word_concat,
    word_inverse,
    word_power,
)
from src.utils.sampling import random_word


def test_parse_word_letters():
    w = parse_word("a1 a2^-1 a3")
    assert w.letters == (Letter(1), Letter(2, -1), Letter(3))
    assert str(w) == "a1 a2^-1 a3"


def test_parse_word_powers_and_identity():
    assert parse_word("a1^3") == Word.positive([1, 1, 1])
    assert parse_word("a1^-2") == Word((Letter(1, -1), Letter(1, -1)))
    assert parse_word("1") == Word()
    assert parse_word("   ") == Word()
    assert format_word(Word()) == "1"


def test_parse_word_reports_position():
    with pytest.raises(ParseError) as info:
        parse_word("a1 b2")
    assert info.value.position == 3


def test_parse_word_rejects_index_zero():
    with pytest.raises(ParseError):
        parse_word("a0")


def test_free_reduction_on_construction():
    w = Word((Letter(1), Letter(2), Letter(2, -1), Letter(1, -1), Letter(3)))
    assert w == Word.positive([3])
    assert free_reduce([Letter(1), Letter(1, -1)]) == Word()


def test_concat_inverse_power():
    u = parse_word("a1 a2")
    assert word_concat(u, word_inverse(u)) == Word()
    assert word_inverse(u) == parse_word("a2^-1 a1^-1")
    assert word_power(u, 2) == parse_word("a1 a2 a1 a2")
    assert word_power(u, -1) == u.inverse()
    assert u ** 0 == Word()


def test_cyclic_reduce():
    assert cyclic_reduce(parse_word("a2 a1 a2^-1")) == parse_word("a1")
    assert cyclic_reduce(parse_word("a1 a2 a1^-1 a2^-1")) == parse_word("a1 a2 a1^-1 a2^-1")


def test_canonical_class_examples():
    assert str(canonical_class(parse_word("a2 a1 a2^-1"))) == "a1"
    assert str(canonical_class(parse_word("a2 a1"))) == "a1 a2"
    # a1 < a1^-1 < a2 < a2^-1
    assert str(canonical_class(parse_word("a1^-1 a2"))) == "a1 a2^-1"
    assert canonical_class(parse_word("a1 a1^-1")).is_trivial()


def test_canonical_class_ascending_indices():
    assert canonical_class(parse_word("a3 a1 a2")).ascending_indices() == (1, 2, 3)
    assert canonical_class(parse_word("a1 a3 a2")).ascending_indices() is None
    assert canonical_class(parse_word("a1 a1")).ascending_indices() is None


def test_canonical_class_invariant_under_inversion_and_conjugation(rng):
    for _ in range(50):
        w = random_word(rng, 3, 6)
        g = random_word(rng, 3, 4)
        target = canonical_class(w)
        assert canonical_class(w.inverse()) == target
        assert canonical_class(g * w * g.inverse()) == target


def test_canonical_class_is_idempotent_and_rotation_invariant(rng):
    for _ in range(100):
        w = random_word(rng, 4, 8)
        target = canonical_class(w)
        assert canonical_class(target.word) == target
        assert cyclic_reduce(target.word) == target.word
        reduced = cyclic_reduce(w)
        for k in range(len(reduced)):
            rotation = reduced[k:] * reduced[:k]
            assert canonical_class(rotation) == target
            assert canonical_class(rotation.inverse()) == target


def test_square_free_and_counts():
    w = parse_word("a1 a2^-1 a1")
    assert not w.is_square_free()
    assert w.inverse_count() == 1
    assert not w.is_positive()
    assert w.indices == (1, 2, 1)

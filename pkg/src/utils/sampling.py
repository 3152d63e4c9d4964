"""Seeded random words, polynomials, substitutions and rational points."""

from fractions import Fraction
from typing import Dict, List, Sequence

import numpy as np

from ..core.tracepoly import TracePolynomial, ZERO, class_var
from ..core.words import Letter, Word


def random_word(rng: np.random.Generator, n: int, max_length: int, positive: bool = False) -> Word:
    """Freely reduced word over a1..an drawn from at most ``max_length`` letters."""
    length = int(rng.integers(1, max_length + 1))
    indices = rng.integers(1, n + 1, size=length)
    if positive:
        signs = np.ones(length, dtype=int)
    else:
        signs = rng.choice([1, -1], size=length)
    return Word(tuple(Letter(int(i), int(s)) for i, s in zip(indices, signs)))


def random_polynomial(
    rng: np.random.Generator,
    n: int,
    max_length: int = 8,
    terms: int = 3,
    max_degree: int = 2,
    positive: bool = False,
) -> TracePolynomial:
    """Sum of ``terms`` monomials in random classes with small integer coefficients."""
    result = ZERO
    for _ in range(terms):
        coeff = int(rng.integers(-3, 4)) or 1
        term = TracePolynomial.constant(coeff)
        for _ in range(int(rng.integers(1, max_degree + 1))):
            term = term * class_var(random_word(rng, n, max_length, positive))
        result = result + term
    return result


def random_rational(rng: np.random.Generator, bound: int = 5) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))


def random_substitution(rng: np.random.Generator, letters: Sequence[int], n: int, max_length: int = 2) -> Dict[int, Word]:
    """Map each letter to a random positive word over a1..an."""
    return {a: random_word(rng, n, max_length, positive=True) for a in letters}


def random_relabeling(rng: np.random.Generator, letters: Sequence[int]) -> Dict[int, Word]:
    """Bijective renaming of ``letters`` among themselves."""
    targets: List[int] = [int(x) for x in rng.permutation(list(letters))]
    return {a: Word.positive([b]) for a, b in zip(letters, targets)}

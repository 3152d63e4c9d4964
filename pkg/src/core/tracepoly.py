"""Trace polynomials: exact-rational polynomials in conjugacy-class variables.

A variable is either a coordinate ``t_{i1...im}`` (a ``TVar``, ascending
square-free positive word) or a general class ``(w)`` (a ``ClassVar``).
The class of an ascending positive word is always stored as a ``TVar`` and
the trivial class is replaced by the scalar 2 on construction.
"""

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from operator import attrgetter
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from .errors import ParseError, PreconditionError
from .words import ConjClass, Letter, Word, canonical_class, parse_word, word_inverse

Number = Union[int, Fraction]


@dataclass(frozen=True)
class TVar:
    """Coordinate t_{i1...im} with strictly ascending indices."""

    indices: Tuple[int, ...]
    sort_key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        indices = tuple(int(i) for i in self.indices)
        if not indices:
            raise ValueError("TVar needs at least one index")
        if indices[0] < 1 or any(a >= b for a, b in zip(indices, indices[1:])):
            raise ValueError(f"TVar indices must be positive and strictly ascending: {indices}")
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "sort_key", (0, len(indices), indices))

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def word(self) -> Word:
        return Word.positive(self.indices)

    def __str__(self) -> str:
        if all(i <= 9 for i in self.indices):
            return "t" + "".join(str(i) for i in self.indices)
        return "t{" + ",".join(str(i) for i in self.indices) + "}"


@dataclass(frozen=True)
class ClassVar:
    """Variable (w) for a nontrivial class that is not an ascending positive word."""

    conj: ConjClass
    sort_key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.conj.is_trivial():
            raise ValueError("The trivial class is the scalar 2, not a variable")
        if self.conj.ascending_indices() is not None:
            raise ValueError(f"Class ({self.conj}) must be represented as a TVar")
        object.__setattr__(self, "sort_key", (1, self.conj.key))

    def __len__(self) -> int:
        return len(self.conj)

    @property
    def word(self) -> Word:
        return self.conj.word

    def __str__(self) -> str:
        return f"({self.conj})"


TraceVar = Union[TVar, ClassVar]
Monomial = Tuple[TraceVar, ...]

_var_key = attrgetter("sort_key")


def monomial_key(monomial: Monomial) -> tuple:
    return tuple(v.sort_key for v in monomial)


def _merge(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, key=_var_key))


def var_of_class(conj: ConjClass) -> TraceVar:
    ascending = conj.ascending_indices()
    if ascending is not None:
        return TVar(ascending)
    return ClassVar(conj)


class TracePolynomial:
    """Immutable map from sorted monomials to nonzero Fraction coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Number]] = None):
        cleaned: Dict[Monomial, Fraction] = {}
        for monomial, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                monomial = tuple(sorted(monomial, key=_var_key))
                cleaned[monomial] = cleaned.get(monomial, Fraction(0)) + coeff
                if not cleaned[monomial]:
                    del cleaned[monomial]
        self._terms = cleaned
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: Dict[Monomial, Fraction]) -> "TracePolynomial":
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def constant(cls, c: Number) -> "TracePolynomial":
        return cls({(): c})

    @classmethod
    def from_var(cls, var: TraceVar) -> "TracePolynomial":
        return cls._from_clean({(var,): Fraction(1)})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def variables(self) -> Tuple[TraceVar, ...]:
        found = {v for monomial in self._terms for v in monomial}
        return tuple(sorted(found, key=_var_key))

    def degree(self) -> int:
        return max((len(m) for m in self._terms), default=0)

    def coefficient(self, monomial: Iterable[TraceVar]) -> Fraction:
        return self._terms.get(tuple(sorted(monomial, key=_var_key)), Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TracePolynomial.constant(other)
        if not isinstance(other, TracePolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "TracePolynomial":
        return poly_add(self, as_poly(other))

    __radd__ = __add__

    def __sub__(self, other) -> "TracePolynomial":
        return poly_sub(self, as_poly(other))

    def __rsub__(self, other) -> "TracePolynomial":
        return poly_sub(as_poly(other), self)

    def __neg__(self) -> "TracePolynomial":
        return poly_scale(-1, self)

    def __mul__(self, other) -> "TracePolynomial":
        if isinstance(other, (int, Fraction)):
            return poly_scale(other, self)
        return poly_mul(self, as_poly(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TracePolynomial":
        if k < 0:
            raise ValueError("Negative powers are not polynomials")
        result = TracePolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self) -> str:
        return f"TracePolynomial({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def as_poly(value: Union[TracePolynomial, TraceVar, Number]) -> TracePolynomial:
    if isinstance(value, TracePolynomial):
        return value
    if isinstance(value, (TVar, ClassVar)):
        return TracePolynomial.from_var(value)
    if isinstance(value, (int, Fraction)):
        return TracePolynomial.constant(value)
    raise TypeError(f"Cannot convert {type(value).__name__} to a trace polynomial")


ZERO = TracePolynomial()
ONE = TracePolynomial.constant(1)


def poly_add(p: TracePolynomial, q: TracePolynomial) -> TracePolynomial:
    terms = dict(p._terms)
    for monomial, coeff in q._terms.items():
        total = terms.get(monomial, Fraction(0)) + coeff
        if total:
            terms[monomial] = total
        else:
            terms.pop(monomial, None)
    return TracePolynomial._from_clean(terms)


def poly_scale(c: Number, p: TracePolynomial) -> TracePolynomial:
    c = Fraction(c)
    if not c:
        return ZERO
    return TracePolynomial._from_clean({m: c * coeff for m, coeff in p._terms.items()})


def poly_sub(p: TracePolynomial, q: TracePolynomial) -> TracePolynomial:
    return poly_add(p, poly_scale(-1, q))


def poly_mul(p: TracePolynomial, q: TracePolynomial) -> TracePolynomial:
    terms: Dict[Monomial, Fraction] = {}
    for m1, c1 in p._terms.items():
        for m2, c2 in q._terms.items():
            monomial = _merge(m1, m2)
            total = terms.get(monomial, Fraction(0)) + c1 * c2
            if total:
                terms[monomial] = total
            else:
                terms.pop(monomial, None)
    return TracePolynomial._from_clean(terms)


def class_var(w: Word) -> TracePolynomial:
    """The variable (w); the trivial class is the constant 2."""
    conj = canonical_class(w)
    if conj.is_trivial():
        return TracePolynomial.constant(2)
    return TracePolynomial.from_var(var_of_class(conj))


def t(*indices: int) -> TracePolynomial:
    """The class of the positive word a_{i1} a_{i2} ...; a TVar when ascending."""
    return class_var(Word.positive(indices))


def var_word(var: TraceVar) -> Word:
    return var.word


def substitute_vars(p: TracePolynomial, image: Callable[[TraceVar], TracePolynomial]) -> TracePolynomial:
    """Replace each variable v by ``image(v)`` and expand.

    ``image`` may also be a mapping; variables missing from it are kept.
    """
    if isinstance(image, Mapping):
        mapping = image
        image = lambda v: mapping.get(v) if v in mapping else TracePolynomial.from_var(v)

    cache: Dict[TraceVar, TracePolynomial] = {}
    result = ZERO
    for monomial, coeff in p.items():
        term = TracePolynomial.constant(coeff)
        for var, group in itertools.groupby(monomial):
            if var not in cache:
                cache[var] = as_poly(image(var))
            term = term * cache[var] ** len(list(group))
            if term.is_zero():
                break
        result = result + term
    return result


def substitute_generators(p: TracePolynomial, sub: Mapping[int, Word]) -> TracePolynomial:
    """Replace every generator a_i by the word ``sub[i]`` inside each variable.

    Indices absent from ``sub`` are left unchanged.
    """
    def image(var: TraceVar) -> TracePolynomial:
        letters = []
        for letter in var_word(var):
            target = sub.get(letter.index, Word((Letter(letter.index, 1),)))
            letters.extend(target.letters if letter.sign > 0 else word_inverse(target).letters)
        return class_var(Word(tuple(letters)))

    return substitute_vars(p, image)


def evaluate(p: TracePolynomial, values: Mapping[TraceVar, Number]) -> Fraction:
    """Evaluate at exact values assigned to the variables.

    Raises:
        PreconditionError: If a variable of ``p`` has no value.
    """
    total = Fraction(0)
    for monomial, coeff in p.items():
        term = coeff
        for var in monomial:
            if var not in values:
                raise PreconditionError(f"No value given for variable {var}")
            term *= Fraction(values[var])
        total += term
    return total


def permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


def poly_det(matrix: Sequence[Sequence[Union[TracePolynomial, Number]]]) -> TracePolynomial:
    """Determinant by Leibniz expansion over the polynomial ring."""
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise PreconditionError("Determinant needs a square matrix")
    entries = [[as_poly(x) for x in row] for row in matrix]
    result = ZERO
    for perm in itertools.permutations(range(size)):
        term = TracePolynomial.constant(permutation_sign(perm))
        for row, col in enumerate(perm):
            term = term * entries[row][col]
            if term.is_zero():
                break
        result = result + term
    return result


# Formatting

def _format_number(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(monomial: Monomial) -> str:
    parts = []
    for var, group in itertools.groupby(monomial):
        power = len(list(group))
        parts.append(str(var) if power == 1 else f"{var}^{power}")
    return " ".join(parts)


def format_poly(p: TracePolynomial) -> str:
    """Positive terms, then negative terms, then the constant; each by monomial order."""
    if p.is_zero():
        return "0"
    items = [(m, c) for m, c in p.items() if m]
    positive = sorted((x for x in items if x[1] > 0), key=lambda x: monomial_key(x[0]))
    negative = sorted((x for x in items if x[1] < 0), key=lambda x: monomial_key(x[0]))
    ordered = positive + negative
    if p.constant_term():
        ordered.append(((), p.constant_term()))

    out = []
    for position, (monomial, coeff) in enumerate(ordered):
        magnitude = abs(coeff)
        if not monomial:
            body = _format_number(magnitude)
        elif magnitude == 1:
            body = _format_monomial(monomial)
        else:
            body = f"{_format_number(magnitude)} {_format_monomial(monomial)}"
        if position == 0:
            out.append(body if coeff > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(out)


# Parsing

_NUMBER = re.compile(r"\d+(?:/\d+)?")
_TDIGITS = re.compile(r"t(\d+)")
_TBRACES = re.compile(r"t\{\s*(\d+(?:\s*,\s*\d+)*)\s*\}")
_POWER = re.compile(r"\^\s*(\d+)")


class _PolyParser:
    """Recursive-descent parser for the polynomial grammar."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> TracePolynomial:
        if not self.text.strip():
            raise self.error("Empty polynomial")
        sign = 1
        if self.peek() and self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        result = sign * self.term()
        while self.peek():
            op = self.peek()
            if op not in "+-":
                raise self.error(f"Expected '+' or '-', found '{op}'")
            self.pos += 1
            result = result + (-1 if op == "-" else 1) * self.term()
        return result

    def term(self) -> TracePolynomial:
        factors = []
        while True:
            char = self.peek()
            if char == "*" and factors:
                self.pos += 1
                char = self.peek()
            if char == "(" or char == "t" or char.isdigit():
                factors.append(self.factor())
            else:
                break
        if not factors:
            raise self.error("Expected a coefficient or factor")
        result = ONE
        for factor in factors:
            result = result * factor
        return result

    def factor(self) -> TracePolynomial:
        self.skip()
        char = self.text[self.pos]
        if char == "(":
            close = self.text.find(")", self.pos)
            if close < 0:
                raise self.error("Unclosed '('")
            inner = self.text[self.pos + 1:close]
            try:
                word = parse_word(inner)
            except ParseError as exc:
                offset = self.pos + 1 + (exc.position or 0)
                raise ParseError(f"Invalid word '{inner.strip()}'", self.text, offset) from exc
            self.pos = close + 1
            base = class_var(word)
        elif char == "t":
            match = _TBRACES.match(self.text, self.pos) or _TDIGITS.match(self.text, self.pos)
            if match is None:
                raise self.error("Malformed coordinate; use t123 or t{10,11}")
            if match.re is _TBRACES:
                indices = [int(x) for x in match.group(1).split(",")]
            else:
                indices = [int(d) for d in match.group(1)]
            if any(i < 1 for i in indices):
                raise self.error("Coordinate indices must be positive")
            self.pos = match.end()
            base = t(*indices)
        else:
            match = _NUMBER.match(self.text, self.pos)
            numerator, _, denominator = match.group(0).partition("/")
            if denominator and not int(denominator):
                raise ParseError("Zero denominator in coefficient", self.text, match.start() + len(numerator))
            value = Fraction(match.group(0))
            self.pos = match.end()
            base = TracePolynomial.constant(value)

        self.skip()
        power = _POWER.match(self.text, self.pos)
        if power is not None:
            self.pos = power.end()
            return base ** int(power.group(1))
        return base


def parse_poly(text: str) -> TracePolynomial:
    """Parse a polynomial such as ``3/2 (a1 a2) t3 - t123 + 1``.

    Raises:
        ParseError: With the offending position on malformed input.
    """
    return _PolyParser(text).parse()

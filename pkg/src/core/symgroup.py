"""Permutations, group-algebra elements, Young tableaux and the Procesi identities they produce.

Letters are generator indices: the letter 3 stands for a3. Permutations
compose right to left, (sigma * tau)(a) = sigma(tau(a)).
"""

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from .config import Config
from .errors import LetterSetMismatch, PreconditionError
from .tracepoly import TracePolynomial, ZERO, class_var, poly_det
from .words import Word

Number = Union[int, Fraction]


@dataclass(frozen=True)
class Permutation:
    """Bijection of an explicit letter set, fixed points included."""

    letters: Tuple[int, ...]
    images: Tuple[int, ...]

    def __post_init__(self):
        pairs = sorted(zip(self.letters, self.images))
        letters = tuple(a for a, _ in pairs)
        images = tuple(b for _, b in pairs)
        if len(set(letters)) != len(letters) or sorted(images) != list(letters):
            raise PreconditionError(f"Not a bijection of {letters}: {images}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "images", images)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "Permutation":
        return cls(tuple(mapping), tuple(mapping[a] for a in mapping))

    @classmethod
    def identity(cls, letters: Iterable[int]) -> "Permutation":
        letters = tuple(letters)
        return cls(letters, letters)

    @classmethod
    def from_cycles(cls, letters: Iterable[int], cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from cycles (x1 x2 ... xk), meaning x1 -> x2 -> ... -> xk -> x1."""
        mapping = {a: a for a in letters}
        for cycle in cycles:
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                if a not in mapping:
                    raise PreconditionError(f"Letter a{a} is not in the letter set")
                mapping[a] = b
        return cls.from_mapping(mapping)

    @classmethod
    def transposition(cls, letters: Iterable[int], a: int, b: int) -> "Permutation":
        return cls.from_cycles(letters, [(a, b)] if a != b else [])

    def __call__(self, a: int) -> int:
        return self.images[self.letters.index(a)]

    def as_dict(self) -> Dict[int, int]:
        return dict(zip(self.letters, self.images))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return perm_mul(self, other)

    def inverse(self) -> "Permutation":
        return Permutation(self.images, self.letters)

    def is_identity(self) -> bool:
        return self.letters == self.images

    def cycles(self) -> List[Tuple[int, ...]]:
        """Cycles including fixed points, each starting at its smallest letter."""
        mapping = self.as_dict()
        seen = set()
        out = []
        for start in self.letters:
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = mapping[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = mapping[nxt]
            out.append(tuple(cycle))
        return out

    def sign(self) -> int:
        return sgn(self)

    def extend(self, letters: Iterable[int]) -> "Permutation":
        """The same permutation on a larger letter set, fixing the new letters."""
        mapping = {a: a for a in letters}
        if not set(self.letters) <= set(mapping):
            raise LetterSetMismatch("Extension must contain the original letters")
        mapping.update(self.as_dict())
        return Permutation.from_mapping(mapping)

    def __str__(self) -> str:
        moving = [c for c in self.cycles() if len(c) > 1]
        if not moving:
            return "()"
        return "".join("(" + " ".join(f"a{a}" for a in c) + ")" for c in moving)


def perm_mul(sigma: Permutation, tau: Permutation) -> Permutation:
    """(sigma * tau)(a) = sigma(tau(a)).

    Raises:
        LetterSetMismatch: If the letter sets differ.
    """
    if sigma.letters != tau.letters:
        raise LetterSetMismatch(f"Letter sets differ: {sigma.letters} vs {tau.letters}")
    first = tau.as_dict()
    second = sigma.as_dict()
    return Permutation(tau.letters, tuple(second[first[a]] for a in tau.letters))


def sgn(sigma: Permutation) -> int:
    return -1 if sum(len(c) - 1 for c in sigma.cycles()) % 2 else 1


class GroupAlgebraElement:
    """Rational combination of permutations of one letter set."""

    __slots__ = ("letters", "_terms")

    def __init__(self, letters: Iterable[int], terms: Optional[Mapping[Permutation, Number]] = None):
        self.letters = tuple(sorted(letters))
        cleaned: Dict[Permutation, Fraction] = {}
        for perm, coeff in (terms or {}).items():
            if perm.letters != self.letters:
                raise LetterSetMismatch(f"{perm} does not act on {self.letters}")
            total = cleaned.get(perm, Fraction(0)) + Fraction(coeff)
            if total:
                cleaned[perm] = total
            else:
                cleaned.pop(perm, None)
        self._terms = cleaned

    @classmethod
    def of(cls, perm: Permutation, coeff: Number = 1) -> "GroupAlgebraElement":
        return cls(perm.letters, {perm: coeff})

    @property
    def terms(self) -> Dict[Permutation, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Permutation, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.letters == other.letters and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.letters, frozenset(self._terms.items())))

    def _check(self, other: "GroupAlgebraElement"):
        if self.letters != other.letters:
            raise LetterSetMismatch(f"Letter sets differ: {self.letters} vs {other.letters}")

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        terms = dict(self._terms)
        for perm, coeff in other._terms.items():
            terms[perm] = terms.get(perm, Fraction(0)) + coeff
        return GroupAlgebraElement(self.letters, terms)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + other.scale(-1)

    def scale(self, c: Number) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.letters, {p: c * x for p, x in self._terms.items()})

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return algebra_mul(self, other)

    def extend(self, letters: Iterable[int]) -> "GroupAlgebraElement":
        letters = tuple(sorted(set(letters) | set(self.letters)))
        return GroupAlgebraElement(letters, {p.extend(letters): c for p, c in self._terms.items()})

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{p}" for p, c in sorted(self._terms.items(), key=lambda x: x[0].images))
        return f"GroupAlgebraElement({body or '0'})"


def algebra_mul(x: GroupAlgebraElement, y: GroupAlgebraElement) -> GroupAlgebraElement:
    x._check(y)
    terms: Dict[Permutation, Fraction] = {}
    for p, a in x.items():
        for q, b in y.items():
            product = perm_mul(p, q)
            terms[product] = terms.get(product, Fraction(0)) + a * b
    return GroupAlgebraElement(x.letters, terms)


def left_act(tau: Permutation, x: GroupAlgebraElement) -> GroupAlgebraElement:
    """tau . x, embedding both into the union of their letter sets."""
    letters = tuple(sorted(set(tau.letters) | set(x.letters)))
    return algebra_mul(GroupAlgebraElement.of(tau.extend(letters)), x.extend(letters))


@dataclass(frozen=True)
class Tableau:
    """Young tableau; rows of letters with weakly decreasing lengths."""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in row) for row in self.rows)
        if not rows or any(not row for row in rows):
            raise PreconditionError("A tableau needs at least one box and no empty rows")
        if any(len(a) < len(b) for a, b in zip(rows, rows[1:])):
            raise PreconditionError(f"Row lengths must weakly decrease: {[len(r) for r in rows]}")
        letters = [a for row in rows for a in row]
        if len(set(letters)) != len(letters):
            raise PreconditionError("Tableau letters must be distinct")
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(row) for row in self.rows)

    @property
    def letters(self) -> Tuple[int, ...]:
        return tuple(sorted(a for row in self.rows for a in row))

    @property
    def columns(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(
            tuple(row[c] for row in self.rows if len(row) > c) for c in range(len(self.rows[0]))
        )

    def __str__(self) -> str:
        return "(" + " / ".join(" ".join(f"a{a}" for a in row) for row in self.rows) + ")"


def _block_permutations(blocks: Sequence[Sequence[int]], letters: Sequence[int]) -> List[Permutation]:
    """All permutations of ``letters`` that preserve every block and fix the rest."""
    out = []
    choices = [list(itertools.permutations(block)) for block in blocks]
    for images in itertools.product(*choices):
        mapping = {a: a for a in letters}
        for block, image in zip(blocks, images):
            mapping.update(zip(block, image))
        out.append(Permutation.from_mapping(mapping))
    return out


def row_stabilizer(Y: Tableau) -> List[Permutation]:
    return _block_permutations(Y.rows, Y.letters)


def column_stabilizer(Y: Tableau) -> List[Permutation]:
    return _block_permutations(Y.columns, Y.letters)


def young_symmetrizer(Y: Tableau) -> GroupAlgebraElement:
    """(sum of row stabilizer) * (signed sum of column stabilizer)."""
    rows = GroupAlgebraElement(Y.letters, {p: 1 for p in row_stabilizer(Y)})
    cols = GroupAlgebraElement(Y.letters, {q: sgn(q) for q in column_stabilizer(Y)})
    return algebra_mul(rows, cols)


def permutation_trace_poly(sigma: Permutation) -> TracePolynomial:
    result = TracePolynomial.constant(1)
    for cycle in sigma.cycles():
        result = result * class_var(Word.positive(cycle))
    return result


def cycles_to_trace_poly(x: GroupAlgebraElement) -> TracePolynomial:
    """Read each permutation as the product of the classes of its cycles."""
    result = ZERO
    for perm, coeff in x.items():
        result = result + coeff * permutation_trace_poly(perm)
    return result


class CosetDecomposition(NamedTuple):
    row_cosets: List[List[Permutation]]
    column_cosets: List[List[Permutation]]


def _is_partition_of(cosets: List[List[Permutation]], group: List[Permutation]) -> bool:
    seen = set()
    for coset in cosets:
        members = set(coset)
        if len(members) != len(coset) or members & seen:
            return False
        seen |= members
    return seen == set(group)


def lemma3_decomposition(Y: Tableau, corner: int) -> CosetDecomposition:
    """Split the stabilizers of Y into left cosets of the stabilizers of Y minus ``corner``.

    The row stabilizer is the disjoint union of (r a_m) * P' over the letters r of
    the corner's row, and likewise for columns.

    Raises:
        PreconditionError: If ``corner`` does not end both its row and its column.
    """
    row_index = next((r for r, row in enumerate(Y.rows) if corner in row), None)
    if row_index is None:
        raise PreconditionError(f"a{corner} is not in the tableau")
    row = Y.rows[row_index]
    col_index = row.index(corner)
    column = Y.columns[col_index]
    if row[-1] != corner or column[-1] != corner:
        raise PreconditionError(f"a{corner} is not a removable corner of {Y}")

    reduced_rows = [tuple(a for a in r if a != corner) for r in Y.rows]
    reduced_cols = [tuple(a for a in c if a != corner) for c in Y.columns]
    sub_rows = _block_permutations([r for r in reduced_rows if r], Y.letters)
    sub_cols = _block_permutations([c for c in reduced_cols if c], Y.letters)

    def cosets(line, subgroup):
        return [
            [perm_mul(Permutation.transposition(Y.letters, r, corner), s) for s in subgroup]
            for r in line
        ]

    decomposition = CosetDecomposition(cosets(row, sub_rows), cosets(column, sub_cols))

    expected_rows = len(row) * math.prod(math.factorial(len(r)) for r in reduced_rows if r)
    expected_cols = len(column) * math.prod(math.factorial(len(c)) for c in reduced_cols if c)
    assert _is_partition_of(decomposition.row_cosets, row_stabilizer(Y))
    assert _is_partition_of(decomposition.column_cosets, column_stabilizer(Y))
    assert sum(len(c) for c in decomposition.row_cosets) == expected_rows
    assert sum(len(c) for c in decomposition.column_cosets) == expected_cols
    return decomposition


def partitions(m: int, min_parts: int = 1) -> List[Tuple[int, ...]]:
    """Partitions of m in reverse lexicographic order, keeping those with enough parts."""
    def generate(remaining: int, largest: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in generate(remaining - part, part):
                yield (part,) + rest

    return [p for p in generate(m, m) if len(p) >= min_parts]


def canonical_tableau(shape: Sequence[int], letters: Optional[Sequence[int]] = None) -> Tableau:
    """Fill the diagram row by row with ``letters`` (default 1..m)."""
    m = sum(shape)
    letters = list(letters) if letters is not None else list(range(1, m + 1))
    if len(letters) != m:
        raise PreconditionError(f"Shape {tuple(shape)} needs {m} letters, got {len(letters)}")
    rows, start = [], 0
    for length in shape:
        rows.append(tuple(letters[start:start + length]))
        start += length
    return Tableau(tuple(rows))


def procesi_generators(m: int, letters: Optional[Sequence[int]] = None, allow_large: bool = False) -> List[GroupAlgebraElement]:
    """Young symmetrizers of canonical tableaux for every diagram of m with at least three rows.

    Raises:
        PreconditionError: If m exceeds ``Config.MAX_M`` without ``allow_large``.
    """
    if m < 3:
        warnings.warn(f"No diagram of {m} has three rows; returning no generators", stacklevel=2)
        return []
    if m > Config.MAX_M and not allow_large:
        raise PreconditionError(f"m = {m} exceeds the limit {Config.MAX_M}; pass allow_large to override")
    return [young_symmetrizer(canonical_tableau(shape, letters)) for shape in partitions(m, min_parts=3)]


def _require_distinct(letters: Sequence[int], count: int):
    if len(letters) != count or len(set(letters)) != count:
        raise PreconditionError(f"Expected {count} distinct letters, got {tuple(letters)}")


def lemma6_polynomial(xs: Sequence[Word], ys: Sequence[Word]) -> TracePolynomial:
    """det(2 (x_i y_j) - (x_i)(y_j)) for arbitrary words."""
    return poly_det([[2 * class_var(x * y) - class_var(x) * class_var(y) for y in ys] for x in xs])


def lemma6_identity(x_letters: Sequence[int], y_letters: Sequence[int]) -> TracePolynomial:
    """4x4 determinant Procesi identity on eight distinct letters."""
    _require_distinct(list(x_letters) + list(y_letters), 8)
    return lemma6_polynomial([Word.positive([a]) for a in x_letters], [Word.positive([b]) for b in y_letters])


def lemma7_polynomial(xs: Sequence[Word], ys: Sequence[Word]) -> TracePolynomial:
    """[(x1x2x3) - (x1x3x2)] * [2(y1y2y3) + ...] - det of the bordered trace matrix."""
    x1, x2, x3 = xs
    y1, y2, y3 = ys
    cv = class_var
    left = cv(x1 * x2 * x3) - cv(x1 * x3 * x2)
    right = (
        2 * cv(y1 * y2 * y3)
        + cv(y1) * cv(y2) * cv(y3)
        - cv(y1) * cv(y2 * y3)
        - cv(y2) * cv(y1 * y3)
        - cv(y3) * cv(y1 * y2)
    )
    matrix = [[cv(x)] + [cv(x * y) for y in ys] for x in xs]
    matrix.append([TracePolynomial.constant(2)] + [cv(y) for y in ys])
    return left * right - poly_det(matrix)


def lemma7_identity(x_letters: Sequence[int], y_letters: Sequence[int]) -> TracePolynomial:
    """Bordered-determinant Procesi identity on six distinct letters."""
    _require_distinct(list(x_letters) + list(y_letters), 6)
    return lemma7_polynomial([Word.positive([a]) for a in x_letters], [Word.positive([b]) for b in y_letters])

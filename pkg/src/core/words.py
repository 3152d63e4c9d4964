"""Free-group words and canonical representatives of conjugacy classes up to inversion."""

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple

from .errors import ParseError


class Letter(NamedTuple):
    """A generator a_i (sign +1) or its inverse (sign -1)."""

    index: int
    sign: int = 1

    @property
    def key(self) -> Tuple[int, int]:
        # a1 < a1^-1 < a2 < a2^-1 < ...
        return (self.index, 0 if self.sign > 0 else 1)

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)

    def __str__(self) -> str:
        return f"a{self.index}" if self.sign > 0 else f"a{self.index}^-1"


def _check_letter(letter: Letter) -> Letter:
    if letter.index < 1:
        raise ValueError(f"Generator index must be positive, got {letter.index}")
    if letter.sign not in (1, -1):
        raise ValueError(f"Letter sign must be +1 or -1, got {letter.sign}")
    return letter


def _cancel(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    stack = []
    for letter in letters:
        letter = _check_letter(Letter(*letter))
        if stack and stack[-1] == letter.inverse():
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """An element of the free group on a1, a2, ..., always freely reduced."""

    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _cancel(self.letters))

    @classmethod
    def positive(cls, indices: Iterable[int]) -> "Word":
        """The word a_{i1} a_{i2} ... with every letter positive."""
        return cls(tuple(Letter(i, 1) for i in indices))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __mul__(self, other: "Word") -> "Word":
        return word_concat(self, other)

    def __pow__(self, k: int) -> "Word":
        return word_power(self, k)

    def inverse(self) -> "Word":
        return word_inverse(self)

    @property
    def key(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(letter.key for letter in self.letters)

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(letter.index for letter in self.letters)

    def is_positive(self) -> bool:
        return all(letter.sign > 0 for letter in self.letters)

    def inverse_count(self) -> int:
        return sum(1 for letter in self.letters if letter.sign < 0)

    def is_square_free(self) -> bool:
        return len(set(self.indices)) == len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(str(letter) for letter in self.letters)


@dataclass(frozen=True)
class ConjClass:
    """Canonical representative of a conjugacy class up to inversion."""

    word: Word

    def __len__(self) -> int:
        return len(self.word)

    @property
    def key(self):
        return self.word.key

    def is_trivial(self) -> bool:
        return len(self.word) == 0

    def ascending_indices(self) -> Optional[Tuple[int, ...]]:
        """Indices of the class when it is a positive word with strictly ascending indices."""
        indices = self.word.indices
        if not self.word.is_positive() or not indices:
            return None
        if all(a < b for a, b in zip(indices, indices[1:])):
            return indices
        return None

    def __str__(self) -> str:
        return str(self.word)


def free_reduce(letters: Sequence[Letter]) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    return Word(tuple(letters))


def word_concat(u: Word, v: Word) -> Word:
    return Word(u.letters + v.letters)


def word_inverse(u: Word) -> Word:
    return Word(tuple(letter.inverse() for letter in reversed(u.letters)))


def word_power(u: Word, k: int) -> Word:
    if k < 0:
        return word_power(word_inverse(u), -k)
    return Word(u.letters * k)


def cyclic_reduce(w: Word) -> Word:
    """Strip mutually inverse first/last letters."""
    letters = w.letters
    start, end = 0, len(letters)
    while end - start >= 2 and letters[start] == letters[end - 1].inverse():
        start += 1
        end -= 1
    return Word(letters[start:end])


def _rotations(letters: Tuple[Letter, ...]) -> Iterator[Tuple[Letter, ...]]:
    for shift in range(len(letters)):
        yield letters[shift:] + letters[:shift]


def canonical_class(w: Word) -> ConjClass:
    """Least rotation of the cyclically reduced word or of its inverse.

    Rotations of the word itself are scanned first and only a strictly
    smaller rotation of the inverse replaces the current best.
    """
    reduced = cyclic_reduce(w)
    if not reduced.letters:
        return ConjClass(Word())

    best = None
    best_key = None
    for candidate in _rotations(reduced.letters):
        key = tuple(letter.key for letter in candidate)
        if best_key is None or key < best_key:
            best, best_key = candidate, key
    for candidate in _rotations(word_inverse(reduced).letters):
        key = tuple(letter.key for letter in candidate)
        if key < best_key:
            best, best_key = candidate, key
    return ConjClass(Word(best))


_TOKEN = re.compile(r"a(\d+)(?:\^(-?\d+))?")


def parse_word(text: str) -> Word:
    """Parse whitespace-separated tokens such as ``a1 a2^-1``; ``1`` is the empty word.

    Raises:
        ParseError: If a token is malformed.
    """
    stripped = text.strip()
    if stripped in ("", "1"):
        return Word()

    letters = []
    for match in re.finditer(r"\S+", text):
        token = match.group(0)
        parsed = _TOKEN.fullmatch(token)
        if parsed is None:
            raise ParseError(f"Invalid word token '{token}'", text, match.start())
        index = int(parsed.group(1))
        if index < 1:
            raise ParseError(f"Generator index must be positive in '{token}'", text, match.start())
        power = int(parsed.group(2)) if parsed.group(2) is not None else 1
        letter = Letter(index, 1 if power > 0 else -1)
        letters.extend([letter] * abs(power))
    return Word(tuple(letters))


def format_word(w: Word) -> str:
    return str(w)

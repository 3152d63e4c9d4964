"""Exact 2x2 matrix representations and evaluation of words and trace polynomials.

This is the numerical oracle the symbolic results are checked against:
everything is exact over the rationals.
"""

import enum
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Union

import numpy as np
from sympy import Matrix, Rational

from .config import Config
from .errors import NonInvertibleMatrix, ParseError, PreconditionError
from .schemas import IdentityReport
from .tracepoly import TracePolynomial, TraceVar, evaluate
from .words import Word

Number = Union[int, Fraction]
SeedLike = Union[int, np.random.SeedSequence, np.random.Generator, None]


@dataclass(frozen=True)
class Matrix2:
    """The matrix (a b / c d) with exact rational entries."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def identity(cls) -> "Matrix2":
        return cls(1, 0, 0, 1)

    @classmethod
    def upper_shear(cls, n: int) -> "Matrix2":
        return cls(1, n, 0, 1)

    @classmethod
    def lower_shear(cls, n: int) -> "Matrix2":
        return cls(1, 0, n, 1)

    def __mul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Fraction:
        return self.a + self.d

    def inverse(self) -> "Matrix2":
        det = self.det()
        if det == 0:
            raise NonInvertibleMatrix(f"Matrix {self} is singular")
        return Matrix2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def rows(self) -> List[List[Fraction]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in self.rows()) + "]"


class SamplingMode(str, enum.Enum):
    SL2 = "sl2"
    ANY = "any"


@dataclass(frozen=True)
class Representation:
    """Assignment of a matrix to each generator index."""

    assignment: Mapping[int, Matrix2]
    mode: SamplingMode = SamplingMode.SL2

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(sorted(self.assignment.items())))
        object.__setattr__(self, "mode", SamplingMode(self.mode))
        if self.mode is SamplingMode.SL2:
            for index, matrix in self.assignment.items():
                if matrix.det() != 1:
                    raise PreconditionError(f"a{index} has determinant {matrix.det()}, not 1")

    def __getitem__(self, index: int) -> Matrix2:
        if index not in self.assignment:
            raise PreconditionError(f"Generator a{index} has no assigned matrix")
        return self.assignment[index]

    def as_rows(self) -> Dict[str, List[List[str]]]:
        return {f"a{i}": [[str(x) for x in row] for row in m.rows()] for i, m in self.assignment.items()}

    def __str__(self) -> str:
        return "\n".join(f"a{i} = {m}" for i, m in self.assignment.items())


def _rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_sl2(seed: SeedLike = None, size_bound: int = Config.SIZE_BOUND) -> Matrix2:
    """Product of 2 to 6 alternating shears with integer parameters in [-size_bound, size_bound]."""
    if size_bound < 1:
        raise PreconditionError("size_bound must be at least 1")
    rng = _rng(seed)
    count = int(rng.integers(2, 7))
    upper = bool(rng.integers(0, 2))
    result = Matrix2.identity()
    for _ in range(count):
        n = int(rng.integers(-size_bound, size_bound + 1))
        result = result * (Matrix2.upper_shear(n) if upper else Matrix2.lower_shear(n))
        upper = not upper
    return result


def random_matrix(seed: SeedLike = None, size_bound: int = Config.SIZE_BOUND, invertible: bool = False) -> Matrix2:
    """Uniform integer entries; resamples a singular draw only when ``invertible``."""
    rng = _rng(seed)
    while True:
        entries = [int(x) for x in rng.integers(-size_bound, size_bound + 1, size=4)]
        matrix = Matrix2(*entries)
        if not invertible or matrix.det() != 0:
            return matrix


def random_representation(
    indices: Sequence[int],
    seed: SeedLike = None,
    mode: SamplingMode = SamplingMode.SL2,
    size_bound: int = Config.SIZE_BOUND,
    invertible: bool = False,
) -> Representation:
    rng = _rng(seed)
    mode = SamplingMode(mode)
    assignment = {}
    for index in sorted(set(indices)):
        if mode is SamplingMode.SL2:
            assignment[index] = random_sl2(rng, size_bound)
        else:
            assignment[index] = random_matrix(rng, size_bound, invertible)
    return Representation(assignment, mode)


def eval_word(rho: Representation, w: Word) -> Matrix2:
    """Ordered product of the assigned matrices; inverse letters use the exact inverse.

    Raises:
        NonInvertibleMatrix: If an inverse letter hits a singular matrix.
    """
    result = Matrix2.identity()
    for letter in w:
        matrix = rho[letter.index]
        result = result * (matrix if letter.sign > 0 else matrix.inverse())
    return result


def eval_var(rho: Representation, var: TraceVar) -> Fraction:
    return eval_word(rho, var.word).trace()


def eval_poly(rho: Representation, p: TracePolynomial) -> Fraction:
    values = {var: eval_var(rho, var) for var in p.variables()}
    return evaluate(p, values)


def _generator_indices(p: TracePolynomial) -> List[int]:
    return sorted({letter.index for var in p.variables() for letter in var.word})


def verify_identity(
    p: TracePolynomial,
    trials: int = Config.TRIALS,
    seed: int = Config.SEED,
    mode: SamplingMode = SamplingMode.SL2,
    size_bound: int = Config.SIZE_BOUND,
) -> IdentityReport:
    """Evaluate ``p`` on ``trials`` seeded random representations.

    Each trial draws from its own child stream of ``SeedSequence(seed)`` so
    trials are independent of execution order; the first failing trial by
    index is reported.

    Raises:
        PreconditionError: If ``mode`` is ANY and ``p`` has inverse letters.
    """
    mode = SamplingMode(mode)
    if mode is SamplingMode.ANY and any(not var.word.is_positive() for var in p.variables()):
        raise PreconditionError("Arbitrary-determinant sampling needs an inverse-free polynomial")

    indices = _generator_indices(p) or [1]
    streams = np.random.SeedSequence(seed).spawn(trials)

    def trial(stream: np.random.SeedSequence):
        rho = random_representation(indices, stream, mode, size_bound)
        return rho, eval_poly(rho, p)

    with ThreadPoolExecutor() as pool:
        outcomes = list(pool.map(trial, streams))

    for number, (rho, value) in enumerate(outcomes, start=1):
        if value != 0:
            return IdentityReport(
                passed=False,
                mode=mode.value,
                trials=trials,
                seed=seed,
                trials_run=number,
                counterexample=rho.as_rows(),
                value=str(value),
            )
    return IdentityReport(passed=True, mode=mode.value, trials=trials, seed=seed, trials_run=trials)


# 4x4 matrices M(A), J and J* from the determinant identities

def _rational(x: Fraction) -> Rational:
    return Rational(x.numerator, x.denominator)


def m4_of(matrices: Sequence[Matrix2]) -> Matrix:
    """4x4 matrix whose i-th row is (a_i, b_i, c_i, d_i)."""
    if len(matrices) != 4:
        raise PreconditionError(f"M(A) needs four matrices, got {len(matrices)}")
    return Matrix([[_rational(x) for x in (m.a, m.b, m.c, m.d)] for m in matrices])


def j_const() -> Matrix:
    """tr(A B) = row(A) J row(B)^t."""
    return Matrix([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])


def jstar_const() -> Matrix:
    """tr(A B) - tr(A) tr(B) = -row(A) J J* row(B)^t."""
    return Matrix([[0, 0, 0, 1], [0, -1, 0, 0], [0, 0, -1, 0], [1, 0, 0, 0]])


def det4(matrix: Matrix) -> Fraction:
    value = matrix.det(method="berkowitz")
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def to_fractions(matrix: Matrix) -> List[List[Fraction]]:
    return [[Fraction(int(Rational(x).p), int(Rational(x).q)) for x in matrix.row(r)] for r in range(matrix.rows)]


def trace_matrix(xs: Sequence[Matrix2], ys: Sequence[Matrix2]) -> List[List[Fraction]]:
    """The matrix (tr(x_i y_j))."""
    return [[(x * y).trace() for y in ys] for x in xs]


# Representation files

_LINE = re.compile(
    r"a(\d+)\s*=\s*\[\s*\[\s*([^,\]]+)\s*,\s*([^,\]]+)\s*\]\s*,\s*\[\s*([^,\]]+)\s*,\s*([^,\]]+)\s*\]\s*\]"
)


def parse_representation(text: str, mode: Optional[SamplingMode] = None) -> Representation:
    """Parse lines ``a<k> = [[p,q],[r,s]]``; ``#`` starts a comment.

    Without an explicit ``mode`` the representation is SL2 when every
    determinant is 1 and ANY otherwise.

    Raises:
        ParseError: On malformed lines, bad rationals or duplicate generators.
    """
    assignment: Dict[int, Matrix2] = {}
    offset = 0
    for line in text.splitlines(keepends=True):
        body = line.split("#", 1)[0]
        stripped = body.strip()
        if stripped:
            match = _LINE.fullmatch(stripped)
            if match is None:
                raise ParseError("Expected 'a<k> = [[p,q],[r,s]]'", text, offset + body.index(stripped[0]))
            index = int(match.group(1))
            if index < 1:
                raise ParseError("Generator index must be positive", text, offset)
            if index in assignment:
                raise ParseError(f"Generator a{index} assigned twice", text, offset)
            try:
                entries = [Fraction(match.group(g).strip()) for g in range(2, 6)]
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"Invalid rational entry: {exc}", text, offset) from exc
            assignment[index] = Matrix2(*entries)
        offset += len(line)

    if not assignment:
        raise ParseError("Representation file assigns no generators", text, 0)
    if mode is None:
        mode = SamplingMode.SL2 if all(m.det() == 1 for m in assignment.values()) else SamplingMode.ANY
    return Representation(assignment, mode)

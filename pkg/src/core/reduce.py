"""Terminating rewrite engine from class variables to the t-coordinates.

Each rule rewrites one variable into a polynomial in strictly smaller
variables, measured by ``class_measure``:

* R3 removes the last inverse letter via tr(XY^-1) = tr X tr Y - tr(XY).
* R4 splits a positive word at the first two occurrences of its smallest
  repeated generator.
* R5 swaps the first descending adjacent pair of a positive square-free
  word (EX1 when the word has three letters).
* L4 writes a coordinate with more than three indices through shorter ones.

R1, the replacement of the trivial class by 2, is performed by the ring
itself; traces log it whenever a replacement produced the trivial class.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from .errors import PreconditionError
from .tracepoly import (
    ClassVar,
    TracePolynomial,
    TraceVar,
    TVar,
    class_var,
    monomial_key,
    substitute_vars,
)
from .words import ConjClass, Letter, Word, canonical_class


class Rule(str, enum.Enum):
    R1 = "R1"
    R3 = "R3"
    R4 = "R4"
    R5 = "R5"
    EX1 = "EX1"
    L4 = "L4"


class Target(str, enum.Enum):
    """Terminal alphabet: all coordinates, or coordinates with at most three indices."""

    T = "T"
    T0 = "T0"


@dataclass(frozen=True)
class ReductionStep:
    rule: Rule
    variable: Optional[TraceVar]
    replacement: TracePolynomial

    def describe(self) -> str:
        variable = "(1)" if self.variable is None else str(self.variable)
        return f"{self.rule.value}: {variable} -> {self.replacement}"


@dataclass(frozen=True)
class ReductionTrace:
    input: TracePolynomial
    output: TracePolynomial
    steps: Tuple[ReductionStep, ...]


@dataclass(frozen=True)
class _Rewrite:
    rule: Rule
    replacement: TracePolynomial
    trivial_hits: int


def class_measure(var: TraceVar) -> Tuple[int, int, int]:
    """(length, min(#inverse letters, #positive letters), cyclic inversions)."""
    word = var.word
    inverses = word.inverse_count()
    balance = min(inverses, len(word) - inverses)
    inversions = 0
    if inverses == 0:
        indices = word.indices
        inversions = sum(
            1 for a in range(len(indices)) for b in range(a + 1, len(indices)) if indices[a] > indices[b]
        )
    return (len(word), balance, inversions)


def is_terminal(var: TraceVar, target: Target) -> bool:
    if not isinstance(var, TVar):
        return False
    return target is Target.T or len(var) <= 3


class _Builder:
    """Builds replacements while counting trivial classes met along the way."""

    def __init__(self):
        self.trivial_hits = 0

    def cls(self, *parts) -> TracePolynomial:
        letters = []
        for part in parts:
            letters.extend(part.letters if isinstance(part, Word) else (part,))
        word = Word(tuple(letters))
        if canonical_class(word).is_trivial():
            self.trivial_hits += 1
        return class_var(word)

    def coord(self, indices) -> TracePolynomial:
        return self.cls(Word.positive(indices))


def _inverse_elimination(word: Word) -> _Rewrite:
    """(u a_i^-1 v) -> (a_i)(v u) - (u a_i v) at the last inverse letter."""
    inverses = word.inverse_count()
    if inverses > len(word) - inverses:
        word = word.inverse()
    position = max(p for p, letter in enumerate(word) if letter.sign < 0)
    u, v = word[:position], word[position + 1:]
    a = Letter(word[position].index, 1)
    build = _Builder()
    replacement = build.cls(a) * build.cls(v, u) - build.cls(u, a, v)
    return _Rewrite(Rule.R3, replacement, build.trivial_hits)


def _duplicate_elimination(word: Word) -> _Rewrite:
    """(a_i u a_i v) -> (u a_i)(v a_i) - (u v^-1) for the smallest repeated index."""
    indices = word.indices
    repeated = min(i for i in set(indices) if indices.count(i) > 1)
    first = indices.index(repeated)
    second = indices.index(repeated, first + 1)
    a = Letter(repeated, 1)
    u = word[first + 1:second]
    v = word[second + 1:] * word[:first]
    build = _Builder()
    replacement = build.cls(u, a) * build.cls(v, a) - build.cls(u, v.inverse())
    return _Rewrite(Rule.R4, replacement, build.trivial_hits)


def _adjacent_sort(word: Word) -> _Rewrite:
    """(u A B v) -> -(u B A v) + (A)(B v u) + (B)(A v u) + (A B)(v u) - (A)(B)(v u)."""
    indices = word.indices
    k = next(p for p in range(1, len(indices) - 1) if indices[p] > indices[p + 1])
    a, b = word[k], word[k + 1]
    u, v = word[:k], word[k + 2:]
    build = _Builder()
    vu = build.cls(v, u)
    replacement = (
        -build.cls(u, b, a, v)
        + build.cls(a) * build.cls(b, v, u)
        + build.cls(b) * build.cls(a, v, u)
        + build.cls(a, b) * vu
        - build.cls(a) * build.cls(b) * vu
    )
    rule = Rule.EX1 if len(word) == 3 else Rule.R5
    return _Rewrite(rule, replacement, build.trivial_hits)


def _long_coordinate(var: TVar) -> _Rewrite:
    """Solve the four-block relation for t_{ijk alpha}, alpha the remaining indices."""
    i, j, k = var.indices[:3]
    alpha = var.indices[3:]
    build = _Builder()
    c = build.coord
    rest = (
        c((i, k)) * c((j,)) * c(alpha)
        - c((i,)) * c((j,)) * c((k,) + alpha)
        - c((j,)) * c((k,)) * c(alpha + (i,))
        - c((i, k)) * c((j,) + alpha)
        + c((i, j)) * c((k,) + alpha)
        + c((j, k)) * c(alpha + (i,))
        - c((i, k, j)) * c(alpha)
        + c((i,)) * c((j, k) + alpha)
        + c((j,)) * c((k,) + alpha + (i,))
        + c((k,)) * c(alpha + (i, j))
    )
    return _Rewrite(Rule.L4, rest * Fraction(1, 2), build.trivial_hits)


@lru_cache(maxsize=None)
def _rewrite(var: TraceVar) -> _Rewrite:
    if isinstance(var, TVar):
        if len(var) <= 3:
            raise PreconditionError(f"{var} is already a terminal coordinate")
        rewrite = _long_coordinate(var)
    else:
        word = var.word
        if word.inverse_count():
            rewrite = _inverse_elimination(word)
        elif not word.is_square_free():
            rewrite = _duplicate_elimination(word)
        else:
            rewrite = _adjacent_sort(word)

    bound = class_measure(var)
    assert all(class_measure(v) < bound for v in rewrite.replacement.variables()), (
        f"{rewrite.rule.value} on {var} does not decrease the measure"
    )
    return rewrite


def rewrite_step(var: TraceVar) -> ReductionStep:
    """One rewrite of a non-terminal variable."""
    rewrite = _rewrite(var)
    return ReductionStep(rewrite.rule, var, rewrite.replacement)


@lru_cache(maxsize=None)
def _normal_form(var: TraceVar, target: Target) -> TracePolynomial:
    if is_terminal(var, target):
        return TracePolynomial.from_var(var)
    replacement = _rewrite(var).replacement
    return substitute_vars(replacement, lambda v: _normal_form(v, target))


def reduce_class(w: ConjClass) -> TracePolynomial:
    """Express (w) through coordinates t_I of any length."""
    return reduce_to_T(class_var(w.word))


def reduce_to_T(p: TracePolynomial) -> TracePolynomial:
    return substitute_vars(p, lambda v: _normal_form(v, Target.T))


def reduce_to_T0(p: TracePolynomial) -> TracePolynomial:
    """Rewrite coordinates with more than three indices.

    Raises:
        PreconditionError: If ``p`` still contains class variables.
    """
    leftover = [v for v in p.variables() if isinstance(v, ClassVar)]
    if leftover:
        raise PreconditionError(f"reduce_to_T0 expects coordinates only, found {leftover[0]}")
    return substitute_vars(p, lambda v: _normal_form(v, Target.T0))


def psi_normal_form(p: TracePolynomial) -> TracePolynomial:
    """Normal form in coordinates with at most three indices."""
    return reduce_to_T0(reduce_to_T(p))


def _pick(p: TracePolynomial, target: Target) -> Optional[TraceVar]:
    candidates = [m for m, _ in p.items() if any(not is_terminal(v, target) for v in m)]
    if not candidates:
        return None
    monomial = max(candidates, key=monomial_key)
    return max((v for v in monomial if not is_terminal(v, target)), key=lambda v: v.sort_key)


def trace_reduction(p: TracePolynomial, target: Target = Target.T0) -> ReductionTrace:
    """Step-by-step reduction, rewriting the largest variable of the largest monomial.

    The output equals ``reduce_to_T`` (target T) or ``psi_normal_form`` (target T0).
    """
    steps: List[ReductionStep] = []
    current = p
    while True:
        var = _pick(current, target)
        if var is None:
            break
        rewrite = _rewrite(var)
        steps.append(ReductionStep(rewrite.rule, var, rewrite.replacement))
        steps.extend(
            ReductionStep(Rule.R1, None, TracePolynomial.constant(2)) for _ in range(rewrite.trivial_hits)
        )
        current = substitute_vars(current, {var: rewrite.replacement})
    return ReductionTrace(p, current, tuple(steps))


def replay_trace(trace: ReductionTrace) -> TracePolynomial:
    """Re-apply the recorded steps to the input; R1 steps are already applied by the ring."""
    current = trace.input
    for step in trace.steps:
        if step.rule is Rule.R1:
            continue
        current = substitute_vars(current, {step.variable: step.replacement})
    return current


def clear_caches():
    """Drop memoized rewrites and normal forms."""
    _rewrite.cache_clear()
    _normal_form.cache_clear()

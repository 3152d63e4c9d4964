"""Defining ideals of character varieties and a Groebner engine over the coordinates t_I, |I| <= 3.

Polynomials are converted to sympy's sparse rings over QQ for the Groebner
computation. The Buchberger loop itself (normal pair selection,
Gebauer-Moeller pair elimination, minimalization and interreduction) is
implemented here so that it can count reduction steps against a budget and
poll a cancellation token between S-polynomials.
"""

import enum
import itertools
import re
import threading
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Sequence, Set, Tuple, Union

from sympy import QQ
from sympy.polys import orderings
from sympy.polys.orderings import grevlex, lex
from sympy.polys.rings import PolyElement, PolyRing, ring

from .config import Config
from .errors import ComputationCancelled, ParseError, PreconditionError, ResourceLimitExceeded
from .identities import fricke_triple
from .reduce import psi_normal_form
from .symgroup import lemma7_polynomial
from .tracepoly import ZERO, TracePolynomial, TVar, class_var, poly_det, t
from .words import Word, cyclic_reduce, parse_word

INFINITE = "INFINITE"
Dimension = Union[int, str]


@dataclass(frozen=True)
class Presentation:
    """Generators a1..an and relator words, stored cyclically reduced."""

    n: int
    relators: Tuple[Word, ...] = ()
    name: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError(f"A presentation needs at least one generator, got {self.n}")
        relators = []
        for w in self.relators:
            reduced = cyclic_reduce(w)
            if not len(reduced):
                raise PreconditionError(f"Relator '{w}' is trivial")
            if max(reduced.indices) > self.n:
                raise PreconditionError(f"Relator '{w}' uses a generator beyond a{self.n}")
            relators.append(reduced)
        object.__setattr__(self, "relators", tuple(relators))

    def __str__(self) -> str:
        gens = ", ".join(f"a{i}" for i in range(1, self.n + 1))
        rels = ", ".join(str(w) for w in self.relators)
        return f"<{gens} | {rels}>"


_GENERATORS = re.compile(r"generators\s*:\s*(\d+)")
_RELATOR = re.compile(r"relator\s*:\s*(.*)")


def parse_presentation(text: str, name: str = "") -> Presentation:
    """Parse ``generators: <n>`` followed by ``relator: <word>`` lines.

    Raises:
        ParseError: On unknown lines, a missing or repeated generator count,
            or a malformed relator word.
    """
    n = None
    relators = []
    offset = 0
    for line in text.splitlines(keepends=True):
        body = line.split("#", 1)[0]
        stripped = body.strip()
        start = offset + (body.index(stripped[0]) if stripped else 0)
        offset += len(line)
        if not stripped:
            continue
        match = _GENERATORS.fullmatch(stripped)
        if match:
            if n is not None:
                raise ParseError("Generator count given twice", text, start)
            n = int(match.group(1))
            continue
        match = _RELATOR.fullmatch(stripped)
        if match:
            try:
                relators.append(parse_word(match.group(1)))
            except ParseError as exc:
                position = start + match.start(1) + (exc.position or 0)
                raise ParseError(f"Invalid relator '{match.group(1).strip()}'", text, position) from exc
            continue
        raise ParseError("Expected 'generators: <n>' or 'relator: <word>'", text, start)

    if n is None:
        raise ParseError("Missing 'generators: <n>' line", text, 0)
    return Presentation(n, tuple(relators), name)


def load_presentation(path: Union[str, Path]) -> Presentation:
    path = Path(path)
    return parse_presentation(path.read_text(encoding="utf-8"), name=path.stem)


def t0_alphabet(n: int) -> List[TVar]:
    """All coordinates t_I with I ascending in 1..n and |I| <= 3."""
    out = []
    for size in (1, 2, 3):
        out.extend(TVar(c) for c in itertools.combinations(range(1, n + 1), size))
    return out


def variable_order(n: int) -> List[TVar]:
    """Variables from largest to smallest: longer subscripts first, then lexicographic."""
    return sorted(t0_alphabet(n), key=lambda v: (-len(v), v.indices))


def m_entry(i: int, j: int) -> TracePolynomial:
    if i < 1 or j < 1:
        raise PreconditionError("Indices must be positive")
    if i == j:
        return t(i) ** 2 - 4
    return 2 * t(i, j) - t(i) * t(j)


def _m_det(rows: Sequence[int], cols: Sequence[int]) -> TracePolynomial:
    return poly_det([[m_entry(i, j) for j in cols] for i in rows])


class GMGenerator(NamedTuple):
    label: str
    polynomial: TracePolynomial


def labelled_gm_generators(n: int) -> List[GMGenerator]:
    """Generators of the handlebody ideal with their family labels, q1 to q4 in order."""
    if n < 1:
        raise PreconditionError(f"n must be at least 1, got {n}")
    triples = list(itertools.combinations(range(1, n + 1), 3))
    out = [GMGenerator(f"q1({i},{j},{k})", fricke_triple(i, j, k)) for i, j, k in triples]
    for i, j in itertools.combinations(range(3, n + 1), 2):
        out.append(GMGenerator(f"q2({i},{j})", _m_det((1, 2, i, j), (1, 2, i, j))))
    for i, j in itertools.combinations(range(4, n + 1), 2):
        out.append(GMGenerator(f"q3({i},{j})", _m_det((1, 2, 3, j), (1, 2, 3, i))))
    xs = [Word.positive([m]) for m in (1, 2, 3)]
    for i, j, k in triples:
        ys = [Word.positive([m]) for m in (i, j, k)]
        out.append(GMGenerator(f"q4({i},{j},{k})", psi_normal_form(lemma7_polynomial(xs, ys))))
    return out


def gm_generators(n: int) -> List[TracePolynomial]:
    return [g.polynomial for g in labelled_gm_generators(n)]


def _dedupe(polys: Sequence[TracePolynomial]) -> List[TracePolynomial]:
    seen: Set[TracePolynomial] = set()
    out = []
    for p in polys:
        if p.is_zero() or p in seen or -p in seen:
            continue
        seen.add(p)
        out.append(p)
    return out


def relator_polynomials(P: Presentation) -> List[TracePolynomial]:
    """(w) - 2 and (w g) - (g) for every relator w and ascending positive g with at most two letters."""
    gammas = [Word.positive(c) for size in (1, 2) for c in itertools.combinations(range(1, P.n + 1), size)]
    out = []
    for w in P.relators:
        out.append(psi_normal_form(class_var(w) - 2))
        for g in gammas:
            out.append(psi_normal_form(class_var(w * g) - class_var(g)))
    return _dedupe(out)


@dataclass(frozen=True)
class Ideal:
    """Finitely generated ideal in the coordinates t_I of n generators, |I| <= 3."""

    n: int
    generators: Tuple[TracePolynomial, ...] = ()

    def __post_init__(self):
        alphabet = set(t0_alphabet(self.n))
        for p in self.generators:
            outside = [v for v in p.variables() if v not in alphabet]
            if outside:
                raise PreconditionError(f"Generator {p} uses {outside[0]} outside the alphabet for n = {self.n}")
        object.__setattr__(self, "generators", tuple(self.generators))

    def __len__(self) -> int:
        return len(self.generators)


def handlebody_ideal(n: int) -> Ideal:
    return Ideal(n, tuple(gm_generators(n)))


def manifold_ideal(P: Presentation) -> Ideal:
    return Ideal(P.n, tuple(_dedupe(gm_generators(P.n) + relator_polynomials(P))))


RELATION_LIMIT = 4


def bracket(i: int, j: int, k: int) -> TracePolynomial:
    """t_ijk - t_ikj, the trace of a_i [a_j, a_k], in coordinates."""
    return psi_normal_form(t(i, j, k) - t(i, k, j))


def bracket_product_relation(I: Sequence[int], J: Sequence[int]) -> TracePolynomial:
    """4 [I][J] + det(M_ab), a in I, b in J, for two triples of generators."""
    return 4 * bracket(*I) * bracket(*J) + _m_det(I, J)


def bracket_syzygy(m: int, quad: Sequence[int]) -> TracePolynomial:
    """Alternating sum of M_ml times the bracket of the other three letters of ``quad``."""
    if len(set(quad)) != 4:
        raise PreconditionError(f"Expected four distinct letters, got {tuple(quad)}")
    quad = sorted(quad)
    total = ZERO
    for position, l in enumerate(quad):
        rest = [x for x in quad if x != l]
        total = total + (-1) ** position * m_entry(min(m, l), max(m, l)) * bracket(*rest)
    return total


def trace_relation_ideal(n: int) -> Ideal:
    """Every polynomial relation among the coordinates of n generators.

    Bracket products, bracket syzygies and the 4x4 minors of M. Their
    letter-weight leading forms generate the relations among rotation
    invariants of n vectors in three dimensions, so the ideal is the whole
    kernel of evaluation. Groebner bases are practical up to n = 4.

    Raises:
        PreconditionError: If n exceeds ``RELATION_LIMIT``.
    """
    if n > RELATION_LIMIT:
        raise PreconditionError(f"Trace relations are only built up to n = {RELATION_LIMIT}, got {n}")
    letters = range(1, n + 1)
    triples = list(itertools.combinations(letters, 3))
    quads = list(itertools.combinations(letters, 4))
    out = [bracket_product_relation(I, J) for I, J in itertools.combinations_with_replacement(triples, 2)]
    out += [bracket_syzygy(m, quad) for quad in quads for m in letters]
    out += [_m_det(R, C) for R, C in itertools.combinations_with_replacement(quads, 2)]
    return Ideal(n, tuple(_dedupe(out)))


class MonomialOrder(str, enum.Enum):
    GREVLEX = "grevlex"
    LEX = "lex"
    WEIGHTED = "weighted"


class LetterWeightOrder(orderings.MonomialOrder):
    """Total letter count first, t_I weighing |I|; grevlex on ties."""

    alias = "weighted"
    is_global = True

    def __init__(self, weights: Sequence[int]):
        self.weights = tuple(weights)

    def degree(self, monomial: Sequence[int]) -> int:
        return sum(w * e for w, e in zip(self.weights, monomial))

    def __call__(self, monomial):
        return (self.degree(monomial), tuple(reversed([-e for e in monomial])))

    def __eq__(self, other):
        return isinstance(other, LetterWeightOrder) and other.weights == self.weights

    def __hash__(self):
        return hash((LetterWeightOrder, self.weights))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis with monic leading coefficients."""

    n: int
    order: MonomialOrder
    basis: Tuple[TracePolynomial, ...]

    def __len__(self) -> int:
        return len(self.basis)

    def is_unit(self) -> bool:
        return any(p.is_constant() and not p.is_zero() for p in self.basis)


# Conversion to and from sympy rings

def _symbol(var: TVar) -> str:
    return "t_" + "_".join(str(i) for i in var.indices)


@lru_cache(maxsize=None)
def _ring(n: int, order: MonomialOrder) -> Tuple[PolyRing, Tuple[TVar, ...]]:
    variables = tuple(variable_order(n))
    if order is MonomialOrder.WEIGHTED:
        sympy_order = LetterWeightOrder(len(v) for v in variables)
    else:
        sympy_order = grevlex if order is MonomialOrder.GREVLEX else lex
    R = ring(",".join(_symbol(v) for v in variables), QQ, sympy_order)[0]
    return R, variables


def to_ring(p: TracePolynomial, n: int, order: MonomialOrder) -> PolyElement:
    R, variables = _ring(n, MonomialOrder(order))
    position = {v: k for k, v in enumerate(variables)}
    terms = {}
    for monomial, coeff in p.items():
        exponents = [0] * len(variables)
        for var in monomial:
            if var not in position:
                raise PreconditionError(f"{var} is outside the alphabet for n = {n}")
            exponents[position[var]] += 1
        terms[tuple(exponents)] = QQ(coeff.numerator, coeff.denominator)
    return R.from_dict(terms)


def from_ring(f: PolyElement, n: int, order: MonomialOrder) -> TracePolynomial:
    _, variables = _ring(n, MonomialOrder(order))
    terms = {}
    for exponents, coeff in f.terms():
        monomial = tuple(v for v, e in zip(variables, exponents) for _ in range(e))
        terms[monomial] = Fraction(int(coeff.numerator), int(coeff.denominator))
    return TracePolynomial(terms)


# Buchberger

class _Budget:
    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise ResourceLimitExceeded(self.steps, self.budget)


def s_polynomial(f: PolyElement, g: PolyElement) -> PolyElement:
    """S-polynomial of two monic polynomials."""
    R = f.ring
    lcm = R.monomial_lcm(f.LM, g.LM)
    return f.mul_monom(R.monomial_div(lcm, f.LM)) - g.mul_monom(R.monomial_div(lcm, g.LM))


def reduce_with_budget(f: PolyElement, G: Sequence[PolyElement], budget: Optional[_Budget] = None) -> PolyElement:
    """Remainder of f on division by G, one counted step per cancelled leading term."""
    R = f.ring
    remainder = R.zero
    p = f
    while p:
        monom, coeff = p.LT
        for g in G:
            quotient = R.monomial_div(monom, g.LM)
            if quotient is not None:
                p = p - g.mul_term((quotient, coeff / g.LC))
                if budget is not None:
                    budget.tick()
                break
        else:
            lead = R.from_dict({monom: coeff})
            remainder = remainder + lead
            p = p - lead
    return remainder


def _select(G: List[PolyElement], pairs: Set[Tuple[int, int]]) -> Tuple[int, int]:
    R = G[0].ring

    degree = getattr(R.order, "degree", sum)

    def key(pair):
        lcm = R.monomial_lcm(G[pair[0]].LM, G[pair[1]].LM)
        return (degree(lcm), R.order(lcm), pair)

    return min(pairs, key=key)


def _update(G: List[PolyElement], pairs: Set[Tuple[int, int]], f: PolyElement):
    """Add f to G and its new critical pairs, discarding pairs by the Gebauer-Moeller criteria."""
    R = f.ring
    lcm, mul, div = R.monomial_lcm, R.monomial_mul, R.monomial_div
    lmf = f.LM
    lmG = [g.LM for g in G]

    kept = {
        (i, j) for i, j in pairs
        if not div(lcm(lmG[i], lmG[j]), lmf)
        or lcm(lmG[i], lmG[j]) == lcm(lmG[i], lmf)
        or lcm(lmG[i], lmG[j]) == lcm(lmG[j], lmf)
    }
    by_lcm: Dict[tuple, List[int]] = {}
    for i in range(len(G)):
        by_lcm.setdefault(lcm(lmG[i], lmf), []).append(i)
    minimal = []
    for L in sorted(by_lcm, key=R.order):
        if all(not div(L, other) for other in minimal):
            minimal.append(L)
    new = set()
    for L in minimal:
        # Product criterion: coprime leading monomials give a zero remainder.
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in by_lcm[L]):
            new.add((min(by_lcm[L]), len(G)))
    return G + [f], kept | new


def _minimalize(G: List[PolyElement]) -> List[PolyElement]:
    if not G:
        return []
    R = G[0].ring
    out = []
    for f in sorted(G, key=lambda h: R.order(h.LM)):
        if all(not R.monomial_div(f.LM, g.LM) for g in out):
            out.append(f)
    return out


def _interreduce(G: List[PolyElement], budget: _Budget) -> List[PolyElement]:
    return [reduce_with_budget(g, G[:k] + G[k + 1:], budget).monic() for k, g in enumerate(G)]


def is_groebner(G: Sequence[PolyElement]) -> bool:
    return all(not reduce_with_budget(s_polynomial(f, g), G) for f, g in itertools.combinations(G, 2))


def buchberger(
    ideal: Ideal,
    order: MonomialOrder = MonomialOrder.GREVLEX,
    budget: int = Config.GB_BUDGET,
    cancel: Optional[threading.Event] = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal``.

    Pairs are processed by smallest lcm degree, ties broken by the monomial
    order and then by pair index, so runs are deterministic.

    Raises:
        ResourceLimitExceeded: When more than ``budget`` steps are needed. Each
            input generator, each critical pair and each cancelled leading term
            counts as one step.
        ComputationCancelled: When ``cancel`` is set between two S-polynomial reductions.
    """
    order = MonomialOrder(order)
    counter = _Budget(budget)
    polys = [to_ring(p, ideal.n, order) for p in ideal.generators if not p.is_zero()]

    G: List[PolyElement] = []
    pairs: Set[Tuple[int, int]] = set()
    for f in polys:
        counter.tick()
        G, pairs = _update(G, pairs, f.monic())

    while pairs:
        if cancel is not None and cancel.is_set():
            raise ComputationCancelled(f"Groebner basis cancelled after {counter.steps} steps")
        i, j = _select(G, pairs)
        pairs.remove((i, j))
        counter.tick()
        r = reduce_with_budget(s_polynomial(G[i], G[j]), G, counter)
        if r:
            G, pairs = _update(G, pairs, r.monic())

    reduced = _interreduce(_minimalize(G), counter)
    assert is_groebner(reduced), "Buchberger output fails the S-polynomial criterion"
    return GroebnerBasis(ideal.n, order, tuple(from_ring(g, ideal.n, order) for g in reduced))


def normal_form_mod(G: GroebnerBasis, p: TracePolynomial) -> TracePolynomial:
    """Remainder of p on division by the basis."""
    f = to_ring(p, G.n, G.order)
    basis = [to_ring(g, G.n, G.order) for g in G.basis]
    return from_ring(reduce_with_budget(f, basis), G.n, G.order)


def member(G: GroebnerBasis, p: TracePolynomial) -> bool:
    return normal_form_mod(G, p).is_zero()


def quotient_dimension(G: GroebnerBasis) -> Dimension:
    """Number of monomials outside the leading-term ideal, or INFINITE."""
    R, variables = _ring(G.n, G.order)
    leads = [to_ring(g, G.n, G.order).LM for g in G.basis]
    if any(not any(m) for m in leads):
        return 0
    for k in range(len(variables)):
        if not any(m[k] and sum(m) == m[k] for m in leads):
            return INFINITE

    def standard(m):
        return all(R.monomial_div(m, lead) is None for lead in leads)

    start = R.zero_monom
    seen = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for k in range(len(variables)):
            nxt = m[:k] + (m[k] + 1,) + m[k + 1:]
            if nxt not in seen and standard(nxt):
                seen.add(nxt)
                queue.append(nxt)
    return len(seen)


def certifies_psi_zero(
    p: TracePolynomial,
    P: Presentation,
    order: MonomialOrder = MonomialOrder.GREVLEX,
    budget: int = Config.GB_BUDGET,
    cancel: Optional[threading.Event] = None,
) -> bool:
    """True when the normal form of p lies in the manifold ideal of P.

    False only means membership was not established.
    """
    q = psi_normal_form(p)
    if q.is_zero():
        return True
    alphabet = set(t0_alphabet(P.n))
    if any(v not in alphabet for v in q.variables()):
        return False
    basis = buchberger(manifold_ideal(P), order, budget, cancel)
    return member(basis, q)


_relation_lock = threading.Lock()


@lru_cache(maxsize=None)
def _relation_basis(n: int, budget: int) -> GroebnerBasis:
    return buchberger(trace_relation_ideal(n), MonomialOrder.WEIGHTED, budget)


def relation_basis(n: int, budget: int = Config.GB_BUDGET) -> GroebnerBasis:
    """Weighted Groebner basis of ``trace_relation_ideal(n)``, computed once per n."""
    with _relation_lock:
        return _relation_basis(n, budget)


def letter_count(p: TracePolynomial) -> int:
    """Largest generator index among the variables of p, 0 for constants."""
    return max((max(v.word.indices) for v in p.variables()), default=0)


def kernel_normal_form(p: TracePolynomial, n: Optional[int] = None, budget: int = Config.GB_BUDGET) -> TracePolynomial:
    """Canonical form of p modulo every trace relation of n generators.

    Two polynomials have the same kernel normal form exactly when they agree
    on every SL(2) representation, so identities reduce to 0. ``n`` defaults
    to the largest generator index in p.

    Raises:
        PreconditionError: If n exceeds ``RELATION_LIMIT``.
        ResourceLimitExceeded: If the relation basis needs more than ``budget`` steps.
    """
    q = psi_normal_form(p)
    n = max(letter_count(q), n or 0)
    if n < 3 or q.is_constant():
        return q
    return normal_form_mod(relation_basis(n, budget), q)

"""Acceptance suites: named groups of independent checks run concurrently."""

import asyncio
import sys
import time
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Tuple

import numpy as np
from sympy import eye

from .charring import (
    INFINITE,
    Presentation,
    buchberger,
    certifies_psi_zero,
    gm_generators,
    kernel_normal_form,
    labelled_gm_generators,
    manifold_ideal,
    member,
    MonomialOrder,
    quotient_dimension,
    relator_polynomials,
)
from .config import Config
from .errors import TraceRingError
from .identities import commutator_trace, four_block_relation, fricke_triple, fundamental_relation, triple_product_identity
from .reduce import psi_normal_form, reduce_to_T
from .repeval import (
    Matrix2,
    Representation,
    SamplingMode,
    det4,
    eval_poly,
    j_const,
    jstar_const,
    m4_of,
    random_matrix,
    random_sl2,
    to_fractions,
    trace_matrix,
    verify_identity,
)
from .schemas import CheckResult, SuiteReport
from .symgroup import (
    Permutation,
    Tableau,
    cycles_to_trace_poly,
    left_act,
    lemma6_identity,
    lemma7_identity,
    procesi_generators,
    young_symmetrizer,
)
from .tracepoly import TracePolynomial, TVar, class_var, evaluate, substitute_generators, t
from .words import Word, parse_word
from ..utils.sampling import random_polynomial, random_rational, random_relabeling, random_substitution, random_word

CheckFn = Callable[[], Tuple[bool, str]]
SUITES = ("identities", "procesi", "gm", "charrings")


def _streams(seed: int, count: int) -> List[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def _verify_all(polys: Iterable[TracePolynomial], trials: int, seed: int, mode: SamplingMode) -> Tuple[bool, str]:
    checked = 0
    for p in polys:
        report = verify_identity(p, trials, seed, mode)
        checked += 1
        if not report.passed:
            return False, f"{p} fails at trial {report.trials_run} with value {report.value}"
    return True, f"{checked} polynomials vanish on {trials} {mode.value} assignments"


# identities

def _identity_checks(seed: int, trials: int, quick: bool) -> List[Tuple[str, CheckFn]]:
    pairs = 20 if quick else 200
    polys = 10 if quick else 100
    substitutions = 10 if quick else 50
    rng_pairs, rng_polys, rng_subs, rng_mats = _streams(seed, 4)

    def fundamental():
        for _ in range(pairs):
            n = int(rng_pairs.integers(1, 5))
            w1, w2 = random_word(rng_pairs, n, 6), random_word(rng_pairs, n, 6)
            residue = kernel_normal_form(fundamental_relation(w1, w2))
            if not residue.is_zero():
                return False, f"w1 = {w1}, w2 = {w2} leaves {residue}"
        return True, f"{pairs} word pairs reduce to 0 modulo the trace relations"

    def triple_product():
        residue = reduce_to_T(triple_product_identity())
        return residue.is_zero(), f"residue {residue}"

    def fricke():
        p = fricke_triple()
        if psi_normal_form(p) != p or p != gm_generators(3)[0]:
            return False, "normal form differs from the first handlebody generator"
        return _verify_all([p], max(trials, 50), seed, SamplingMode.SL2)

    def commutation():
        for _ in range(polys):
            n = int(rng_polys.integers(1, 5))
            p = random_polynomial(rng_polys, n, max_length=8)
            q = psi_normal_form(p)
            indices = range(1, n + 1)
            for _ in range(trials):
                rho = Representation({i: random_sl2(rng_polys) for i in indices})
                if eval_poly(rho, p) != eval_poly(rho, q):
                    return False, f"{p} and its normal form differ at\n{rho}"
        return True, f"{polys} polynomials x {trials} representations agree"

    def substitution():
        p = triple_product_identity()
        for _ in range(substitutions):
            sub = {a: random_word(rng_subs, 4, 3) for a in (1, 2, 3)}
            residue = kernel_normal_form(substitute_generators(p, sub))
            if not residue.is_zero():
                return False, f"substitution {sub} leaves {residue}"
        return True, f"{substitutions} substitutions reduce to 0 modulo the trace relations"

    def commutator():
        value = psi_normal_form(class_var(parse_word("a1 a2 a1^-1 a2^-1")))
        return value == commutator_trace(), str(value)

    def matrix_identities():
        J, Js = j_const(), jstar_const()
        if det4(eye(4) - Js) != 0:
            return False, "det(I - J*) is nonzero"
        for _ in range(20):
            xs = [random_matrix(rng_mats) for _ in range(4)]
            ys = [random_matrix(rng_mats) for _ in range(4)]
            gram = trace_matrix(xs, ys)
            if to_fractions(m4_of(xs) * J * m4_of(ys).T) != gram:
                return False, "tr(A_i B_j) differs from M(A) J M(B)^t"
            centered = [[gram[r][c] - xs[r].trace() * ys[c].trace() for c in range(4)] for r in range(4)]
            if to_fractions(-m4_of(xs) * J * Js * m4_of(ys).T) != centered:
                return False, "tr(A_i B_j) - tr(A_i) tr(B_j) differs from -M(A) J J* M(B)^t"
            a1, a2, a3 = xs[:3]
            expected = (a1 * a2 * a3).trace() - (a1 * a3 * a2).trace()
            if det4(m4_of([a1, a2, a3, Matrix2.identity()])) != expected:
                return False, "det M(A1, A2, A3, I) differs from tr(A1A2A3) - tr(A1A3A2)"
        return True, "20 random quadruples satisfy the Gram identities"

    return [
        ("fundamental relation", fundamental),
        ("triple product identity", triple_product),
        ("fricke triple", fricke),
        ("evaluation commutes with reduction", commutation),
        ("substitution stability", substitution),
        ("commutator trace", commutator),
        ("gram matrix identities", matrix_identities),
    ]


# procesi

def _procesi_checks(seed: int, trials: int, quick: bool) -> List[Tuple[str, CheckFn]]:
    sizes = (3, 4) if quick else (3, 4, 5)
    rngs = dict(zip(sizes, _streams(seed, len(sizes))))

    def symmetrizer_check(m: int) -> CheckFn:
        def check():
            rng = rngs[m]
            letters = list(range(1, m + 1))
            wider = list(range(1, m + 2))
            count = 0
            for sym in procesi_generators(m):
                p = cycles_to_trace_poly(sym)
                variants = [p]
                variants += [substitute_generators(p, random_substitution(rng, letters, m)) for _ in range(3)]
                for _ in range(3):
                    tau = Permutation(tuple(wider), tuple(int(x) for x in rng.permutation(wider)))
                    variants.append(cycles_to_trace_poly(left_act(tau, sym)))
                ok, detail = _verify_all(variants, trials, seed, SamplingMode.ANY)
                if not ok:
                    return False, detail
                count += len(variants)

                if m <= 4:
                    free = Presentation(m)
                    certified = [substitute_generators(p, random_relabeling(rng, letters)) for _ in range(3)]
                    for _ in range(3):
                        tau = Permutation(tuple(letters), tuple(int(x) for x in rng.permutation(letters)))
                        certified.append(cycles_to_trace_poly(left_act(tau, sym)))
                    for q in [p] + certified:
                        if not certifies_psi_zero(q, free):
                            return False, f"{q} is not certified in the handlebody ideal"
            return True, f"{count} identities vanish" + (" and are certified" if m <= 4 else "")
        return check

    def determinant_identities():
        ok, detail = _verify_all([lemma6_identity((1, 2, 3, 4), (5, 6, 7, 8))], trials, seed, SamplingMode.ANY)
        if not ok:
            return ok, detail
        return _verify_all([lemma7_identity((1, 2, 3), (4, 5, 6))], trials, seed, SamplingMode.ANY)

    def negative_control():
        p = cycles_to_trace_poly(young_symmetrizer(Tableau(((1, 2),))))
        report = verify_identity(p, trials, seed, SamplingMode.ANY)
        return not report.passed, f"{p} evaluates to {report.value}"

    checks = [(f"symmetrizers m={m}", symmetrizer_check(m)) for m in sizes]
    checks.append(("determinant identities", determinant_identities))
    checks.append(("two-row symmetrizer is not an identity", negative_control))
    return checks


# gm

def _gm_checks(seed: int, trials: int, quick: bool) -> List[Tuple[str, CheckFn]]:
    gm_trials = trials if quick else max(trials, 50)

    def counts():
        found = {n: len(gm_generators(n)) for n in (2, 3, 4)}
        return found == {2: 0, 3: 2, 4: 9}, f"generator counts {found}"

    def vanishing(n: int) -> CheckFn:
        def check():
            for label, p in labelled_gm_generators(n):
                report = verify_identity(p, gm_trials, seed, SamplingMode.SL2)
                if not report.passed:
                    return False, f"{label} fails at trial {report.trials_run}"
            return True, f"{len(gm_generators(n))} generators vanish on {gm_trials} representations"
        return check

    def four_block():
        q = four_block_relation(1, 2, 3, (4,))
        return certifies_psi_zero(q, Presentation(4)), "four-block relation in the handlebody ideal"

    def fricke_member():
        return certifies_psi_zero(fricke_triple(), Presentation(3)), "fricke triple in the handlebody ideal"

    def specialized_determinant():
        p = lemma6_identity((1, 2, 3, 4), (5, 6, 7, 8))
        diagonal = substitute_generators(p, {4 + i: Word.positive([i]) for i in (1, 2, 3, 4)})
        return _verify_all([diagonal], trials, seed, SamplingMode.SL2)

    def not_certified():
        certified = certifies_psi_zero(t(1) - 2, Presentation(1))
        return not certified, "(a1) - 2 is not certified"

    return [
        ("generator counts", counts),
        ("handlebody generators n=3", vanishing(3)),
        ("handlebody generators n=4", vanishing(4)),
        ("four-block relation certified", four_block),
        ("fricke triple certified", fricke_member),
        ("diagonal determinant specialization", specialized_determinant),
        ("(a1) - 2 not certified", not_certified),
    ]


# charrings

LENS_DIMENSIONS = {2: 2, 3: 2, 4: 3, 5: 3}
TREFOIL = "a1 a2 a1 a2^-1 a1^-1 a2^-1"

# Matrices A with A^p = I, used to check relator polynomials of <a | a^p>.
_FINITE_ORDER = {
    2: [Matrix2(1, 0, 0, 1), Matrix2(-1, 0, 0, -1)],
    3: [Matrix2(0, -1, 1, -1)],
    4: [Matrix2(0, -1, 1, 0)],
}


def lens(p: int) -> Presentation:
    return Presentation(1, (Word.positive([1] * p),), name=f"lens{p}")


def _charring_checks(seed: int, trials: int, quick: bool) -> List[Tuple[str, CheckFn]]:
    points = 5 if quick else 20
    rng_points, rng_orders = _streams(seed, 2)

    def lens_dimensions():
        found = {p: quotient_dimension(buchberger(manifold_ideal(lens(p)))) for p in LENS_DIMENSIONS}
        return found == LENS_DIMENSIONS, f"dimensions {found}"

    def free_rings():
        free2 = manifold_ideal(Presentation(2))
        free3 = manifold_ideal(Presentation(3))
        if free2.generators or quotient_dimension(buchberger(free2)) != INFINITE:
            return False, "free group on two generators has a nonzero ideal"
        ok = list(free3.generators) == gm_generators(3)
        return ok, f"free group on three generators has {len(free3.generators)} generators"

    def relator_vanishing():
        for p, matrices in _FINITE_ORDER.items():
            for matrix in matrices:
                rho = Representation({1: matrix})
                for q in relator_polynomials(lens(p)):
                    if eval_poly(rho, q) != 0:
                        return False, f"{q} does not vanish at {matrix}"
        return True, "relator polynomials vanish on finite-order matrices"

    def trefoil_points():
        ideal = manifold_ideal(Presentation(2, (parse_word(TREFOIL),)))
        x_var, y_var, z_var = TVar((1,)), TVar((2,)), TVar((1, 2))

        def vanishes(x, y, z):
            values = {x_var: x, y_var: y, z_var: z}
            return all(evaluate(g, values) == 0 for g in ideal.generators)

        for _ in range(points):
            x = random_rational(rng_points)
            if not vanishes(x, x, x * x - 2):
                return False, f"abelian point x = {x} is not a zero"
            if not vanishes(x, x, Fraction(1)):
                return False, f"nonabelian point x = {x} is not a zero"
            y = random_rational(rng_points)
            while y == x:
                y = random_rational(rng_points)
            if vanishes(x, y, random_rational(rng_points)):
                return False, f"off-variety point ({x}, {y}) is a zero"
        return True, f"{points} points per component and {points} off-variety points behave"

    def order_independence():
        presentations = [lens(3), lens(4), Presentation(2, (parse_word(TREFOIL),))]
        for P in presentations:
            bases = [buchberger(manifold_ideal(P), order) for order in MonomialOrder]
            for _ in range(5):
                q = psi_normal_form(random_polynomial(rng_orders, P.n, max_length=3, terms=2))
                verdicts = {member(G, q) for G in bases}
                if len(verdicts) != 1:
                    return False, f"orders disagree on {q} for {P}"
            for g in manifold_ideal(P).generators:
                if not all(member(G, g) for G in bases):
                    return False, f"generator {g} is not a member for {P}"
        return True, "lex and grevlex agree on membership"

    return [
        ("lens space dimensions", lens_dimensions),
        ("free character rings", free_rings),
        ("relator polynomials vanish", relator_vanishing),
        ("trefoil character variety", trefoil_points),
        ("order independence", order_independence),
    ]


_BUILDERS: Dict[str, Callable[[int, int, bool], List[Tuple[str, CheckFn]]]] = {
    "identities": _identity_checks,
    "procesi": _procesi_checks,
    "gm": _gm_checks,
    "charrings": _charring_checks,
}


async def run_check(name: str, check: CheckFn) -> CheckResult:
    """Run one check in a worker thread; library errors count as failures."""
    start = time.perf_counter()
    try:
        passed, detail = await asyncio.to_thread(check)
    except (TraceRingError, AssertionError) as exc:
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    mark = "✅" if passed else "❌"
    print(f"{mark} {name} ⏱️  {seconds:.2f}s", file=sys.stderr)
    return CheckResult(name=name, passed=passed, detail=detail, seconds=seconds)


async def run_suite(name: str, seed: int = Config.SEED, trials: int = Config.TRIALS, quick: bool = False) -> SuiteReport:
    """Run every check of a suite concurrently and report them in declaration order.

    Args:
        name: One of identities, procesi, gm, charrings
        seed: Seed for every randomized check
        trials: Random representations per identity check
        quick: Use reduced sample counts

    Returns:
        SuiteReport: Per-check results; ``passed`` only if all passed
    """
    if name not in _BUILDERS:
        raise ValueError(f"Unknown suite '{name}'; choose from {', '.join(SUITES)}")
    print(f"🚀 Running suite '{name}' with seed {seed}", file=sys.stderr)

    checks = _BUILDERS[name](seed, trials, quick)
    tasks = [asyncio.create_task(run_check(label, fn)) for label, fn in checks]
    results = await asyncio.gather(*tasks)

    passed = all(r.passed for r in results)
    print(("✅" if passed else "❌") + f" Suite '{name}' {'passed' if passed else 'failed'}", file=sys.stderr)
    return SuiteReport(suite=name, seed=seed, passed=passed, checks=list(results))

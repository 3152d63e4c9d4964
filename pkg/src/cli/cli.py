"""Command-line entry point for the TraceRing workbench."""

import argparse
import asyncio
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from ..core.charring import (
    MonomialOrder,
    Presentation,
    buchberger,
    certifies_psi_zero,
    kernel_normal_form,
    labelled_gm_generators,
    load_presentation,
    manifold_ideal,
    quotient_dimension,
)
from ..core.config import Config
from ..core.errors import ComputationCancelled, ParseError, PreconditionError, ResourceLimitExceeded
from ..core.orchestrator import SUITES, run_suite
from ..core.reduce import Target, psi_normal_form, reduce_to_T, trace_reduction
from ..core.repeval import SamplingMode, eval_poly, parse_representation, verify_identity
from ..core.symgroup import canonical_tableau, cycles_to_trace_poly, procesi_generators, young_symmetrizer
from ..core.tracepoly import parse_poly
from ..core.words import canonical_class, parse_word
from ..utils.tools import (
    command_output,
    format_identity_report,
    format_polynomials,
    format_suite,
    format_trace,
    ideal_report,
    to_json,
    trace_model,
)

DATA_DIR = Path(__file__).resolve().parents[2] / "data" / "presentations"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def resolve_presentation(name: str) -> Presentation:
    """Load a presentation file, falling back to the bundled ones (``rp3`` or ``rp3.pres``)."""
    for candidate in (Path(name), DATA_DIR / name, DATA_DIR / f"{name}.pres"):
        if candidate.is_file():
            return load_presentation(candidate)
    raise PreconditionError(f"Presentation file '{name}' not found")


def parse_letters(text: str) -> List[int]:
    letters = []
    for token in text.split(","):
        word = parse_word(token)
        if len(word) != 1 or not word.is_positive():
            raise ParseError(f"Expected a single letter, got '{token.strip()}'", text)
        letters.append(word[0].index)
    return letters


def parse_partition(text: str) -> List[int]:
    try:
        shape = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"Partition must be comma-separated integers: {exc}", text) from exc
    if any(x < 1 for x in shape) or shape != sorted(shape, reverse=True):
        raise PreconditionError(f"Partition parts must be positive and weakly decreasing: {shape}")
    return shape


def emit(args, command: str, text: str, result=None):
    """Print the human-readable text or the JSON envelope."""
    if args.json:
        print(to_json(command_output(command, text if result is None else result)))
    else:
        print(text)


# Commands

def cmd_canon(args) -> int:
    emit(args, "canon", str(canonical_class(parse_word(args.word))))
    return EXIT_OK


def _reduce(args, command: str, target: Target, reducer: Callable) -> int:
    p = parse_poly(args.poly)
    if args.trace:
        trace = trace_reduction(p, target)
        if args.json:
            print(to_json(command_output(command, trace_model(trace).model_dump())))
        else:
            print(format_trace(trace))
        return EXIT_OK
    emit(args, command, str(reducer(p)))
    return EXIT_OK


def cmd_reduce(args) -> int:
    return _reduce(args, "reduce", Target.T, reduce_to_T)


def cmd_reduce0(args) -> int:
    return _reduce(args, "reduce0", Target.T0, psi_normal_form)


def cmd_kernel(args) -> int:
    emit(args, "kernel", str(kernel_normal_form(parse_poly(args.poly), budget=args.budget)))
    return EXIT_OK


def cmd_symmetrizer(args) -> int:
    shape = parse_partition(args.partition)
    letters = parse_letters(args.letters) if args.letters else None
    tableau = canonical_tableau(shape, letters)
    emit(args, "symmetrizer", str(cycles_to_trace_poly(young_symmetrizer(tableau))))
    return EXIT_OK


def cmd_procesi_check(args) -> int:
    mode = SamplingMode(args.mode or SamplingMode.ANY)
    reports = []
    for sym in procesi_generators(args.m, allow_large=args.allow_large):
        reports.append(verify_identity(cycles_to_trace_poly(sym), args.trials, args.seed, mode))
    passed = all(r.passed for r in reports)
    if args.json:
        print(to_json(command_output("procesi-check", [r.model_dump(mode="json") for r in reports])))
    else:
        print(f"m = {args.m}: {len(reports)} symmetrizers, seed {args.seed}")
        for r in reports:
            print(format_identity_report(r))
    return EXIT_OK if passed else EXIT_FAILED


def cmd_gm(args) -> int:
    generators = labelled_gm_generators(args.n)
    if args.json:
        print(to_json(ideal_report([g.polynomial for g in generators])))
    else:
        print("\n".join(f"{g.label}: {g.polynomial}" for g in generators) or "(none)")
    return EXIT_OK


def cmd_ideal(args) -> int:
    ideal = manifold_ideal(resolve_presentation(args.pres))
    if args.json:
        print(to_json(ideal_report(ideal.generators)))
    else:
        print(format_polynomials(ideal.generators))
    return EXIT_OK


def _basis(args):
    ideal = manifold_ideal(resolve_presentation(args.pres))
    return ideal, buchberger(ideal, MonomialOrder(args.order), args.budget)


def cmd_gb(args) -> int:
    ideal, basis = _basis(args)
    if args.json:
        print(to_json(ideal_report(ideal.generators, basis)))
    else:
        print(format_polynomials(basis.basis))
    return EXIT_OK


def cmd_qdim(args) -> int:
    ideal, basis = _basis(args)
    dimension = quotient_dimension(basis)
    if args.json:
        print(to_json(ideal_report(ideal.generators, basis, dimension)))
    else:
        print(dimension)
    return EXIT_OK


def cmd_member(args) -> int:
    presentation = resolve_presentation(args.pres)
    certified = certifies_psi_zero(parse_poly(args.poly), presentation, MonomialOrder(args.order), args.budget)
    emit(args, "member", "true" if certified else "false", certified)
    return EXIT_OK


def cmd_eval(args) -> int:
    text = Path(args.rep).read_text(encoding="utf-8")
    rho = parse_representation(text, SamplingMode(args.mode) if args.mode else None)
    value = eval_poly(rho, parse_poly(args.poly))
    emit(args, "eval", str(value))
    return EXIT_OK


def cmd_verify(args) -> int:
    mode = SamplingMode(args.mode or SamplingMode.SL2)
    report = verify_identity(parse_poly(args.poly), args.trials, args.seed, mode)
    print(to_json(report) if args.json else format_identity_report(report))
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_suite(args) -> int:
    report = asyncio.run(run_suite(args.name, args.seed, args.trials, args.quick))
    print(to_json(report) if args.json else format_suite(report))
    return EXIT_OK if report.passed else EXIT_FAILED


COMMANDS: Dict[str, Callable] = {
    "canon": cmd_canon,
    "reduce": cmd_reduce,
    "reduce0": cmd_reduce0,
    "kernel": cmd_kernel,
    "symmetrizer": cmd_symmetrizer,
    "procesi-check": cmd_procesi_check,
    "gm": cmd_gm,
    "ideal": cmd_ideal,
    "gb": cmd_gb,
    "member": cmd_member,
    "qdim": cmd_qdim,
    "eval": cmd_eval,
    "verify": cmd_verify,
    "suite": cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=Config.SEED, help=f'Random seed (default: {Config.SEED})')
    common.add_argument('--trials', type=int, default=Config.TRIALS, help=f'Random assignments per check (default: {Config.TRIALS})')
    common.add_argument('--mode', choices=[m.value for m in SamplingMode], help='Matrix sampling: sl2 (det 1) or any')
    common.add_argument('--order', choices=[o.value for o in MonomialOrder], default=MonomialOrder.GREVLEX.value, help='Monomial order for Groebner bases')
    common.add_argument('--json', action='store_true', help='Emit structured JSON instead of text')
    common.add_argument('--trace', action='store_true', help='Show every rewrite step of a reduction')
    common.add_argument('--budget', type=int, default=Config.GB_BUDGET, help=f'Groebner reduction-step budget (default: {Config.GB_BUDGET})')

    parser = argparse.ArgumentParser(
        prog="tracering",
        description="TraceRing - SL(2,C) trace polynomials and character rings",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python run.py --cli canon "a2 a1 a2^-1"
  python run.py --cli reduce0 "(a1 a3 a2)" --trace
  python run.py --cli kernel "(a1 a2 a3)(a1 a3 a2) - (a1 a2 a3 a1 a3 a2)"
  python run.py --cli symmetrizer --partition 1,1,1
  python run.py --cli verify "(a1 a2) + (a1 a2^-1) - (a1)(a2)" --trials 50
  python run.py --cli qdim --pres rp3
  python run.py --cli suite gm --seed 7
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('canon', parents=[common], help='Canonical representative of a conjugacy class')
    p.add_argument('word', help='Word such as "a1 a2^-1"')

    for name, help_text in (('reduce', 'Reduce to coordinates t_I of any length'),
                            ('reduce0', 'Reduce to coordinates t_I with at most three indices')):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument('poly', help='Trace polynomial such as "(a1 a3 a2) - t123"')

    p = sub.add_parser('kernel', parents=[common], help='Canonical form modulo every trace relation (up to a4)')
    p.add_argument('poly', help='Trace polynomial')

    p = sub.add_parser('symmetrizer', parents=[common], help='Trace polynomial of a Young symmetrizer')
    p.add_argument('--partition', required=True, help='Row lengths, e.g. 3,1,1')
    p.add_argument('--letters', help='Letters filling the rows, e.g. a1,a2,a3,a4,a5')

    p = sub.add_parser('procesi-check', parents=[common], help='Check that all symmetrizers of size m vanish')
    p.add_argument('--m', type=int, required=True, help='Number of letters')
    p.add_argument('--allow-large', action='store_true', help=f'Allow m above {Config.MAX_M}')

    p = sub.add_parser('gm', parents=[common], help='Generators of the handlebody ideal')
    p.add_argument('--n', type=int, required=True, help='Number of generators')

    for name, help_text in (('ideal', 'Generators of the manifold ideal'),
                            ('gb', 'Reduced Groebner basis of the manifold ideal'),
                            ('qdim', 'Dimension of the quotient ring')):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument('--pres', required=True, help='Presentation file or bundled name (rp3, lens3, trefoil, ...)')

    p = sub.add_parser('member', parents=[common], help='Certify that a polynomial vanishes on the character variety')
    p.add_argument('--pres', required=True, help='Presentation file or bundled name')
    p.add_argument('--poly', required=True, help='Trace polynomial')

    p = sub.add_parser('eval', parents=[common], help='Evaluate a polynomial on a representation file')
    p.add_argument('--rep', required=True, help='File with lines a<k> = [[p,q],[r,s]]')
    p.add_argument('--poly', required=True, help='Trace polynomial')

    p = sub.add_parser('verify', parents=[common], help='Check a polynomial on random matrix assignments')
    p.add_argument('poly', help='Trace polynomial')

    p = sub.add_parser('suite', parents=[common], help='Run an acceptance suite')
    p.add_argument('name', choices=SUITES, help='Suite to run')
    p.add_argument('--quick', action='store_true', help='Use reduced sample counts')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point with command line argument parsing."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        return COMMANDS[args.command](args)
    except (ParseError, PreconditionError, OSError) as exc:
        return _fail(args, exc, EXIT_USAGE)
    except (ResourceLimitExceeded, ComputationCancelled) as exc:
        return _fail(args, exc, EXIT_RESOURCE)
    except KeyboardInterrupt:
        print("\n⚠️  Computation interrupted by user", file=sys.stderr)
        return EXIT_RESOURCE


def _fail(args, exc: Exception, code: int) -> int:
    if args.json:
        print(json.dumps({"error": str(exc), "type": type(exc).__name__}, indent=2, ensure_ascii=False))
    else:
        print(f"❌ {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    exit(main())

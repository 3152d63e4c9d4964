import json

import pytest

from src.cli.cli import EXIT_FAILED, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main, parse_letters, parse_partition
from src.core.errors import ParseError, PreconditionError
from src.core.identities import fricke_triple, triple_product_identity
from src.core.schemas import CommandOutput, IdealReport, IdentityReport, ReductionTraceModel


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out.strip()


def test_canon(capsys):
    assert run(capsys, "canon", "a2 a1 a2^-1") == (EXIT_OK, "a1")


def test_reduce_commands(capsys):
    assert run(capsys, "reduce", "(a1 a2^-1)") == (EXIT_OK, "t1 t2 - t12")
    assert run(capsys, "reduce0", "(a1 a3 a2)") == (EXIT_OK, "t1 t23 + t2 t13 + t3 t12 - t1 t2 t3 - t123")
    assert run(capsys, "reduce", "t1234") == (EXIT_OK, "t1234")


def test_kernel(capsys):
    assert run(capsys, "kernel", str(fricke_triple())) == (EXIT_OK, "0")
    assert run(capsys, "kernel", "t123") == (EXIT_OK, "t123")
    assert run(capsys, "kernel", "t12345")[0] == EXIT_USAGE


def test_reduce_is_deterministic(capsys):
    first = run(capsys, "reduce0", "(a1 a2 a1^-1 a2^-1) - (a3 a1 a1)")
    second = run(capsys, "reduce0", "(a1 a2 a1^-1 a2^-1) - (a3 a1 a1)")
    assert first == second


def test_reduce_trace_json(capsys):
    code, out = run(capsys, "reduce", "(a1 a1)", "--trace", "--json")
    assert code == EXIT_OK
    envelope = CommandOutput.model_validate(json.loads(out))
    trace = ReductionTraceModel.model_validate(envelope.result)
    assert [s.rule for s in trace.steps] == ["R4", "R1"]
    assert trace.output == "t1^2 - 2"


def test_reduce_trace_text(capsys):
    code, out = run(capsys, "reduce0", "(a1 a3 a2)", "--trace")
    assert code == EXIT_OK
    assert out.splitlines()[0].strip().startswith("1. EX1: (a1 a3 a2) ->")
    assert out.splitlines()[-1] == "=> t1 t23 + t2 t13 + t3 t12 - t1 t2 t3 - t123"


def test_symmetrizer(capsys):
    code, out = run(capsys, "symmetrizer", "--partition", "1,1,1")
    assert code == EXIT_OK
    assert out == str(triple_product_identity())
    code, out = run(capsys, "symmetrizer", "--partition", "1", "--letters", "a4")
    assert (code, out) == (EXIT_OK, "t4")


def test_symmetrizer_rejects_bad_partition(capsys):
    assert run(capsys, "symmetrizer", "--partition", "1,2")[0] == EXIT_USAGE
    assert run(capsys, "symmetrizer", "--partition", "1,x")[0] == EXIT_USAGE
    assert run(capsys, "symmetrizer", "--partition", "1,1", "--letters", "a1")[0] == EXIT_USAGE


def test_gm(capsys):
    code, out = run(capsys, "gm", "--n", "3")
    assert code == EXIT_OK
    assert out.splitlines()[0] == f"q1(1,2,3): {fricke_triple()}"
    assert run(capsys, "gm", "--n", "2") == (EXIT_OK, "(none)")


def test_qdim_and_gb(capsys):
    assert run(capsys, "qdim", "--pres", "rp3") == (EXIT_OK, "2")
    assert run(capsys, "gb", "--pres", "rp3") == (EXIT_OK, "t1^2 - 4")
    assert run(capsys, "qdim", "--pres", "free2") == (EXIT_OK, "INFINITE")


def test_qdim_json(capsys):
    code, out = run(capsys, "qdim", "--pres", "lens4", "--json", "--order", "lex")
    assert code == EXIT_OK
    report = IdealReport.model_validate(json.loads(out))
    assert report.dimension == 3
    assert report.order == "lex"
    assert len(report.basis) == 1


def test_ideal(capsys):
    code, out = run(capsys, "ideal", "--pres", "rp3")
    assert (code, out.splitlines()) == (EXIT_OK, ["t1^2 - 4", "t1^3 - 4 t1"])


def test_member(capsys):
    assert run(capsys, "member", "--pres", "free3", "--poly", str(fricke_triple())) == (EXIT_OK, "true")
    assert run(capsys, "member", "--pres", "rp3", "--poly", "t1 - 2") == (EXIT_OK, "false")
    code, out = run(capsys, "member", "--pres", "rp3", "--poly", "t1^2 - 4", "--json")
    assert json.loads(out) == {"command": "member", "result": True}


def test_eval(capsys, tmp_path):
    rep = tmp_path / "shears.rep"
    rep.write_text("a1 = [[1,1],[0,1]]\na2 = [[1,0],[1,1]]\n", encoding="utf-8")
    assert run(capsys, "eval", "--rep", str(rep), "--poly", "t12") == (EXIT_OK, "3")
    assert run(capsys, "eval", "--rep", str(rep), "--poly", "(a1 a2^-1) + 1/2") == (EXIT_OK, "3/2")


def test_verify_exit_codes(capsys):
    code, _ = run(capsys, "verify", "(a1 a2) + (a1 a2^-1) - (a1)(a2)", "--trials", "10")
    assert code == EXIT_OK
    code, out = run(capsys, "verify", "t1 - 2", "--trials", "10", "--json")
    assert code == EXIT_FAILED
    report = IdentityReport.model_validate(json.loads(out))
    assert not report.passed
    assert report.counterexample


def test_verify_any_mode_with_inverse_is_usage_error(capsys):
    code, out = run(capsys, "verify", "(a1 a2^-1)", "--mode", "any", "--json")
    assert code == EXIT_USAGE
    assert json.loads(out)["type"] == "PreconditionError"


def test_procesi_check(capsys):
    code, out = run(capsys, "procesi-check", "--m", "3", "--trials", "5")
    assert code == EXIT_OK
    assert out.startswith("m = 3: 1 symmetrizers")
    assert run(capsys, "procesi-check", "--m", "6")[0] == EXIT_USAGE


def test_usage_errors(capsys):
    assert run(capsys, "reduce", "t1 +")[0] == EXIT_USAGE
    assert run(capsys, "canon", "a1", "--bogus")[0] == EXIT_USAGE
    assert run(capsys, "qdim", "--pres", "no-such-presentation")[0] == EXIT_USAGE
    assert run(capsys, "eval", "--rep", "/no/such/file", "--poly", "t1")[0] == EXIT_USAGE


def test_parse_error_json(capsys):
    code, out = run(capsys, "canon", "a1 b2", "--json")
    assert code == EXIT_USAGE
    assert json.loads(out)["type"] == "ParseError"


def test_budget_exhaustion(capsys):
    assert run(capsys, "qdim", "--pres", "lens5", "--budget", "1")[0] == EXIT_RESOURCE


def test_argument_helpers():
    assert parse_letters("a1, a3,a2") == [1, 3, 2]
    assert parse_partition("3,1,1") == [3, 1, 1]
    with pytest.raises(ParseError):
        parse_letters("a1 a2")
    with pytest.raises(PreconditionError):
        parse_partition("1,3")

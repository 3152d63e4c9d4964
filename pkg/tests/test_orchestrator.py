import asyncio

import pytest

from src.core.errors import PreconditionError
from src.core.orchestrator import SUITES, lens, run_check, run_suite
from src.utils.tools import format_suite, to_json


def test_run_check_reports_success():
    result = asyncio.run(run_check("ok", lambda: (True, "fine")))
    assert result.passed
    assert result.detail == "fine"
    assert result.seconds >= 0


def test_run_check_turns_library_errors_into_failures():
    def broken():
        raise PreconditionError("bad input")

    result = asyncio.run(run_check("broken", broken))
    assert not result.passed
    assert result.detail == "PreconditionError: bad input"


def test_unknown_suite():
    with pytest.raises(ValueError):
        asyncio.run(run_suite("nope"))


def test_lens_presentation():
    P = lens(3)
    assert P.n == 1
    assert P.name == "lens3"
    assert P.relators[0].indices == (1, 1, 1)


def test_charrings_quick(seed):
    report = asyncio.run(run_suite("charrings", seed=seed, trials=3, quick=True))
    assert report.passed, format_suite(report)
    assert [c.name for c in report.checks][0] == "lens space dimensions"
    assert "seconds" not in to_json(report)


def test_identities_quick(seed):
    report = asyncio.run(run_suite("identities", seed=seed, trials=3, quick=True))
    assert report.passed, format_suite(report)
    assert len(report.checks) == 7


def test_suite_report_is_reproducible(seed):
    first = asyncio.run(run_suite("charrings", seed=seed, trials=3, quick=True))
    second = asyncio.run(run_suite("charrings", seed=seed, trials=3, quick=True))
    assert to_json(first) == to_json(second)


@pytest.mark.slow
@pytest.mark.parametrize("name", SUITES)
def test_full_suites(name, seed):
    report = asyncio.run(run_suite(name, seed=seed))
    assert report.passed, format_suite(report)

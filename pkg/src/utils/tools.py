"""Rendering helpers shared by the CLI and the web workbench."""

import json
from typing import Any, Optional, Sequence

from pydantic import BaseModel

from ..core.charring import Dimension, GroebnerBasis
from ..core.reduce import ReductionTrace
from ..core.schemas import (
    CommandOutput,
    IdealReport,
    IdentityReport,
    ReductionStepModel,
    ReductionTraceModel,
    SuiteReport,
)
from ..core.tracepoly import TracePolynomial


def to_json(model: BaseModel) -> str:
    """Serialize a report with stable formatting.

    Args:
        model: Any report model

    Returns:
        str: Indented JSON text
    """
    return json.dumps(model.model_dump(mode="json"), indent=2, ensure_ascii=False)


def command_output(command: str, result: Any) -> CommandOutput:
    return CommandOutput(command=command, result=result)


def trace_model(trace: ReductionTrace) -> ReductionTraceModel:
    return ReductionTraceModel(
        input=str(trace.input),
        output=str(trace.output),
        steps=[
            ReductionStepModel(
                rule=step.rule.value,
                variable=None if step.variable is None else str(step.variable),
                replacement=str(step.replacement),
            )
            for step in trace.steps
        ],
    )


def format_trace(trace: ReductionTrace) -> str:
    """Numbered steps followed by the result."""
    lines = [f"{k:>3}. {step.describe()}" for k, step in enumerate(trace.steps, start=1)]
    lines.append(f"=> {trace.output}")
    return "\n".join(lines)


def ideal_report(
    generators: Sequence[TracePolynomial],
    basis: Optional[GroebnerBasis] = None,
    dimension: Optional[Dimension] = None,
) -> IdealReport:
    return IdealReport(
        generators=[str(g) for g in generators],
        basis=None if basis is None else [str(g) for g in basis.basis],
        order=None if basis is None else basis.order.value,
        dimension=dimension,
    )


def format_polynomials(polys: Sequence[TracePolynomial]) -> str:
    if not polys:
        return "(none)"
    return "\n".join(str(p) for p in polys)


def format_identity_report(report: IdentityReport) -> str:
    if report.passed:
        return f"✅ Identity holds on {report.trials} {report.mode} assignments (seed {report.seed})"
    lines = [f"❌ Not an identity: trial {report.trials_run} gives {report.value} (seed {report.seed})"]
    for name, rows in (report.counterexample or {}).items():
        lines.append(f"   {name} = [{', '.join('[' + ','.join(row) + ']' for row in rows)}]")
    return "\n".join(lines)


def format_suite(report: SuiteReport) -> str:
    lines = [f"Suite {report.suite} (seed {report.seed})"]
    for check in report.checks:
        mark = "✅" if check.passed else "❌"
        lines.append(f"{mark} {check.name}: {check.detail}")
    lines.append("✅ All checks passed" if report.passed else "❌ Some checks failed")
    return "\n".join(lines)

"""Pydantic schemas for structured reports and JSON output of the trace-ring workbench."""

from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field


class ReductionStepModel(BaseModel):
    """One recorded rewrite."""

    rule: str = Field(
        description="Rule tag: R1, R3, R4, R5, EX1 or L4."
    )
    variable: Optional[str] = Field(
        default=None,
        description="The rewritten variable; empty for R1, which replaces a trivial class by 2."
    )
    replacement: str = Field(
        description="The polynomial substituted for the variable."
    )


class ReductionTraceModel(BaseModel):
    """Input, output and steps of a traced reduction."""

    input: str = Field(description="Polynomial before reduction.")
    output: str = Field(description="Normal form after reduction.")
    steps: List[ReductionStepModel] = Field(
        default_factory=list,
        description="Rewrites in the order they were applied."
    )


class IdentityReport(BaseModel):
    """Outcome of checking a polynomial on random matrix assignments."""

    passed: bool = Field(
        description="True when every sampled evaluation was exactly zero."
    )
    mode: Literal["sl2", "any"] = Field(
        description="sl2 samples determinant-one matrices; any samples arbitrary integer matrices."
    )
    trials: int = Field(description="Number of trials requested.", ge=0)
    seed: int = Field(description="Seed of the random streams; rerunning with it reproduces the report.")
    trials_run: int = Field(
        description="Trials evaluated up to and including the first counterexample.",
        ge=0
    )
    counterexample: Optional[Dict[str, List[List[str]]]] = Field(
        default=None,
        description="Matrices of the first failing assignment, keyed by generator name."
    )
    value: Optional[str] = Field(
        default=None,
        description="Exact nonzero value of the polynomial at the counterexample."
    )


class CheckResult(BaseModel):
    """Single check inside an acceptance suite."""

    name: str = Field(description="Short identifier of the check.")
    passed: bool = Field(description="Whether the check succeeded.")
    detail: str = Field(default="", description="Counts, counterexamples or error text.")
    seconds: float = Field(
        default=0.0,
        exclude=True,
        description="Wall-clock time; kept out of serialized output so reports stay reproducible."
    )


class SuiteReport(BaseModel):
    """All checks of one suite run."""

    suite: str = Field(description="Suite name: identities, procesi, gm or charrings.")
    seed: int = Field(description="Seed shared by every randomized check.")
    passed: bool = Field(description="True when every check passed.")
    checks: List[CheckResult] = Field(default_factory=list, description="Checks in declaration order.")


class IdealReport(BaseModel):
    """Generators, Groebner basis and quotient dimension of an ideal."""

    generators: List[str] = Field(description="Ideal generators over the coordinates t_I with |I| <= 3.")
    basis: Optional[List[str]] = Field(
        default=None,
        description="Reduced Groebner basis, when one was computed."
    )
    order: Optional[Literal["grevlex", "lex"]] = Field(
        default=None,
        description="Monomial order of the basis."
    )
    dimension: Optional[Union[int, Literal["INFINITE"]]] = Field(
        default=None,
        description="Number of standard monomials, or INFINITE."
    )


class InputCheck(BaseModel):
    """Results of validating user-supplied text before computing with it."""

    is_valid: bool = Field(
        description="Whether the input can be passed to the operation."
    )
    issues_found: List[str] = Field(
        default_factory=list,
        description="Problems detected in the input."
    )
    recommendations: List[str] = Field(
        default_factory=list,
        description="Suggestions for fixing the input."
    )


class CommandOutput(BaseModel):
    """Generic JSON envelope for commands with a single result."""

    command: str = Field(description="Subcommand that produced the result.")
    result: Any = Field(description="The command's result: a string, number, boolean or nested report.")

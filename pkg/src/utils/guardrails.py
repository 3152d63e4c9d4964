"""Input guardrails for text typed into the CLI and the web workbench.

Each check parses the text the same way the core does and turns failures
into an ``InputCheck`` report instead of raising.
"""

from ..core.config import Config
from ..core.errors import ParseError, PreconditionError
from ..core.schemas import InputCheck
from ..core.charring import parse_presentation
from ..core.repeval import parse_representation
from ..core.tracepoly import parse_poly
from ..core.words import parse_word


def _failed(issue: str, *recommendations: str) -> InputCheck:
    return InputCheck(is_valid=False, issues_found=[issue], recommendations=list(recommendations))


def check_word_text(text: str, max_length: int = Config.MAX_WORD_LENGTH) -> InputCheck:
    """Validate a word such as ``a1 a2^-1 a3``.

    Args:
        text: The word as typed
        max_length: Longest accepted word after free reduction

    Returns:
        InputCheck: Validation results
    """
    try:
        word = parse_word(text)
    except ParseError as exc:
        return _failed(
            f"Invalid word: {exc}",
            "Write letters as a<index> separated by spaces, e.g. 'a1 a2^-1 a3'",
            "Use '1' for the empty word",
        )

    if len(word) > max_length:
        return _failed(
            f"Word has {len(word)} letters, more than the limit {max_length}",
            "Shorten the word or raise TRACERING_MAX_WORD_LENGTH",
        )
    return InputCheck(is_valid=True)


def check_polynomial_text(text: str, max_length: int = Config.MAX_WORD_LENGTH) -> InputCheck:
    """Validate a trace polynomial such as ``2 (a1 a2) t3 - t123 + 1``."""
    try:
        p = parse_poly(text)
    except ParseError as exc:
        return _failed(
            f"Invalid polynomial: {exc}",
            "Write classes in parentheses, e.g. '(a1 a2^-1)'",
            "Write coordinates as t12 or t{10,11}, coefficients as 3 or 3/2",
        )

    longest = max((len(v) for v in p.variables()), default=0)
    if longest > max_length:
        return _failed(
            f"A class has {longest} letters, more than the limit {max_length}",
            "Use shorter words or raise TRACERING_MAX_WORD_LENGTH",
        )
    return InputCheck(is_valid=True)


def check_presentation_text(text: str) -> InputCheck:
    """Validate a presentation file body."""
    try:
        presentation = parse_presentation(text)
    except (ParseError, PreconditionError) as exc:
        return _failed(
            f"Invalid presentation: {exc}",
            "Start with 'generators: <n>' and give one 'relator: <word>' per line",
            "Relators must be nontrivial and use only a1..an",
        )

    if not presentation.relators:
        return InputCheck(
            is_valid=True,
            recommendations=["No relators given; the ideal is the one of the free group"],
        )
    return InputCheck(is_valid=True)


def check_representation_text(text: str) -> InputCheck:
    """Validate a representation file body."""
    try:
        parse_representation(text)
    except (ParseError, PreconditionError) as exc:
        return _failed(
            f"Invalid representation: {exc}",
            "Give one line per generator: 'a1 = [[1,1],[0,1]]'",
        )
    return InputCheck(is_valid=True)

"""Sender, pipe and receiver: classify a run as halting or diverging.

A computation halts only when the machine reaches a normal form *and* the
pipe has been drained.  Every other ending is a divergence of the modelled
machine; the reason is a diagnostic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

from .pipe import Pipe
from .reduction import Status, decode_bool_list, reduce
from .terms import Term, print_canonical

__all__ = [
    "Reason", "Halted", "Diverged", "RunOutcome",
    "run_with_pipe", "classify_divergence", "exit_code", "EXIT_HALT", "EXIT_USAGE",
]

EXIT_HALT = 0
EXIT_USAGE = 2


class Reason(enum.Enum):
    UNDERFLOW = "underflow"
    OVERFLOW = "overflow"
    SYNTAX_ERROR = "syntax-error"
    STEP_LIMIT = "step-limit"


_EXIT_CODES = {
    None: EXIT_HALT,
    Reason.UNDERFLOW: 10,
    Reason.OVERFLOW: 11,
    Reason.SYNTAX_ERROR: 12,
    Reason.STEP_LIMIT: 13,
}


@dataclass(frozen=True)
class Halted:
    """Output of a halting run, in three views.

    ``term`` is ``None`` for machines whose output is a bit string to begin
    with (the toy blank-endmarker machines); then ``text == bits``.
    """

    term: Term | None
    steps: int = 0
    raw: str | None = field(default=None, compare=False)

    @cached_property
    def text(self) -> str:
        if self.term is None:
            return self.raw or ""
        return print_canonical(self.term)

    @cached_property
    def bits(self) -> str:
        if self.term is None:
            return self.raw or ""
        return decode_bool_list(self.term)

    halted = True
    reason = None


@dataclass(frozen=True)
class Diverged:
    reason: Reason
    steps: int = 0
    partial: Term | None = field(default=None, compare=False)

    halted = False


RunOutcome = Halted | Diverged


def classify_divergence(reason: Reason | None) -> int:
    """Exit code: 0 for a halt, 10-13 for the divergence reasons."""
    return _EXIT_CODES[reason]


def exit_code(outcome: RunOutcome) -> int:
    return classify_divergence(outcome.reason)


def run_with_pipe(program: Term, input_bits: str, step_limit: int) -> RunOutcome:
    """Reduce ``program`` while the sender pushes ``input_bits``."""
    if program.fv:
        raise ValueError("program must be a closed term")
    if step_limit < 1:
        raise ValueError("step_limit must be at least 1")
    pipe = Pipe(input_bits)
    r = reduce(program, step_limit, pipe)
    return outcome_from(r, pipe)


def outcome_from(r, pipe: Pipe) -> RunOutcome:
    if r.status is Status.NORMAL_FORM:
        if pipe.empty():
            return Halted(r.term, r.steps)
        return Diverged(Reason.OVERFLOW, r.steps, r.term)
    if r.status is Status.UNDERFLOW:
        return Diverged(Reason.UNDERFLOW, r.steps, r.term)
    return Diverged(Reason.STEP_LIMIT, r.steps, r.term)

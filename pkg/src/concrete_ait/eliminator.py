"""Blank-endmarker machines and their conversion into Chaitin machines.

A blank-endmarker machine (BEM) reads symbols from ``{0, 1, ◇}`` and halts
only after the endmarker ``◇``.  It is given here as a *stepper*: an object
whose ``step(state)`` returns one of

* ``Running(state)``: one unit of work was done;
* ``NeedInput(resume)``: the machine asks for a symbol; ``resume(sym)`` is
  the next state;
* ``Halt(output)``: the machine stopped;
* ``Loop(reason)``: the machine is known to run forever from here (for
  instance an endmarker in the middle of a program).

States are immutable values, so one state can be resumed with several
symbols without copying.

``eliminate`` turns a stepper into a machine over ``{0, 1}`` alone.  At each
read request it speculates on all three symbols, dovetailing the branches
one step at a time.  If every branch halts with the same output, the outcome
cannot depend on the symbol, so it halts without reading.  Otherwise it
performs the real read and keeps the matching branch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, NamedTuple

from .encodings import ZOT_BITS, ZOT_EMPTY, blc_parse
from .keraia import keraia_translate
from .pipe import ENDMARKER, SYMBOLS, Pipe, clean_bits
from .reduction import Status, reduce
from .runtime import Diverged, Halted, Reason, RunOutcome
from .terms import App, Stream, Term, to_combinators
from .trees import ProgramSyntaxError, parse_tree, tree_prefix_length

__all__ = [
    "Running", "NeedInput", "Halt", "Loop", "MachineStepper",
    "Fixed3", "Parity", "Echo", "ZotStepper", "BlcStepper", "KeraiaStepper",
    "BEM_NAMES", "as_bem", "run_bem", "EliminatedMachine", "eliminate", "run_eliminated",
]


class Running(NamedTuple):
    state: Any


class NeedInput(NamedTuple):
    resume: Callable[[str], Any]


class Halt(NamedTuple):
    output: Any


class Loop(NamedTuple):
    reason: Reason = Reason.SYNTAX_ERROR


class MachineStepper:
    """Base class; subclasses provide ``initial`` and ``step``."""

    name = "stepper"

    def initial(self):
        raise NotImplementedError

    def step(self, state):
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name!r}>"


# ---------------------------------------------------------------------------
# Toy machines


class Fixed3(MachineStepper):
    """Reads three symbols and then one more, ignoring all values; outputs 1."""

    name = "fixed3"

    def initial(self):
        return 0

    def step(self, n):
        if n < 4:
            return NeedInput(lambda s: n + 1)
        return Halt("1")


class Parity(MachineStepper):
    """Reads up to the endmarker and outputs the number of 1s mod 2."""

    name = "parity"

    def initial(self):
        return ("read", 0)

    def step(self, state):
        tag, ones = state
        if tag == "halt":
            return Halt(str(ones % 2))

        def resume(s):
            if s == ENDMARKER:
                return ("halt", ones)
            return ("read", ones + (s == "1"))
        return NeedInput(resume)


class Echo(MachineStepper):
    """Reads up to the endmarker and outputs what it read."""

    name = "echo"

    def initial(self):
        return ("read", "")

    def step(self, state):
        tag, seen = state
        if tag == "halt":
            return Halt(seen)
        return NeedInput(lambda s: ("halt", seen) if s == ENDMARKER else ("read", seen + s))


# ---------------------------------------------------------------------------
# Lambda-language machines
#
# Shared evaluation phase.  State ("eval", term, symbols, consumed): the
# term may contain Stream cells reading symbols[consumed:] and beyond.  A
# normal form is followed by one last read whose value is ignored, unless
# the program already consumed the endmarker itself.


class _LambdaStepper(MachineStepper):
    def __init__(self, chunk: int = 1):
        if chunk < 1:
            raise ValueError("chunk must be at least 1")
        self.chunk = chunk

    def finish(self, term: Term) -> Term:
        return term

    def _eval(self, state):
        _, term, symbols, consumed = state
        pipe = Pipe(symbols, consumed)
        r = reduce(term, self.chunk, pipe)
        if r.status is Status.NORMAL_FORM:
            out = self.finish(r.term)
            if symbols.endswith(ENDMARKER):
                return Running(("done", out))
            return Running(("final", out))
        nxt = ("eval", r.term, symbols, pipe.consumed)
        if r.status is Status.STEP_LIMIT:
            return Running(nxt)
        return NeedInput(lambda s: ("eval", r.term, symbols + s, pipe.consumed))

    def _common(self, state):
        tag = state[0]
        if tag == "eval":
            return self._eval(state)
        if tag == "final":
            out = state[1]
            return NeedInput(lambda s: ("done", out))
        if tag == "done":
            return Halt(state[1])
        if tag == "loop":
            return Loop(state[1])
        raise ValueError(f"unknown state {tag!r}")


class ZotStepper(_LambdaStepper):
    """Folds each bit into the continuation; the endmarker starts evaluation."""

    name = "zot"

    def initial(self):
        return ("fold", ZOT_EMPTY)

    def step(self, state):
        if state[0] != "fold":
            return self._common(state)
        acc = state[1]

        def resume(s):
            if s == ENDMARKER:
                # the endmarker was read by the fold, not by the program
                return ("eval", acc, ENDMARKER, 1)
            return ("fold", App(acc, ZOT_BITS[s]))
        return NeedInput(resume)


class BlcStepper(_LambdaStepper):
    """Parses a program bit by bit, then applies it to a lazily read list."""

    name = "blc"

    def initial(self):
        return ("prog", "")

    def step(self, state):
        if state[0] != "prog":
            return self._common(state)
        bits = state[1]

        def resume(s):
            if s == ENDMARKER:
                return ("loop", Reason.SYNTAX_ERROR)
            try:
                program, _ = blc_parse(bits + s)
            except ProgramSyntaxError:
                return ("prog", bits + s)
            if program.fv:
                return ("loop", Reason.SYNTAX_ERROR)
            return ("eval", App(program, Stream(0)), "", 0)
        return NeedInput(resume)


class KeraiaStepper(_LambdaStepper):
    """Reads one tree; its evaluation never looks at further input."""

    name = "keraia"

    def initial(self):
        return ("tree", "")

    def finish(self, term):
        return to_combinators(term)

    def step(self, state):
        if state[0] != "tree":
            return self._common(state)
        bits = state[1]

        def resume(s):
            if s == ENDMARKER:
                return ("loop", Reason.SYNTAX_ERROR)
            if tree_prefix_length(bits + s) is None:
                return ("tree", bits + s)
            return ("eval", keraia_translate(parse_tree(bits + s)), "", 0)
        return NeedInput(resume)


_BEMS = {
    "fixed3": Fixed3,
    "parity": Parity,
    "echo": Echo,
    "zot": ZotStepper,
    "blc": BlcStepper,
    "keraia": KeraiaStepper,
}
BEM_NAMES = tuple(_BEMS)


def as_bem(language: str, **options) -> MachineStepper:
    """Stepper for a BEM language (``zot``, ``blc``, ``keraia``) or a toy."""
    try:
        cls = _BEMS[language]
    except KeyError:
        raise ValueError(f"no blank-endmarker machine named {language!r}") from None
    return cls(**options)


def _halted(output, steps: int) -> Halted:
    if isinstance(output, Term):
        return Halted(output, steps)
    return Halted(None, steps, raw=str(output))


def run_bem(bem: MachineStepper, symbols: str, step_limit: int = 100_000) -> RunOutcome:
    """Feed ``symbols`` (which may include ``◇``) to the stepper directly."""
    symbols = clean_bits(symbols, allow_endmarker=True)
    state = bem.initial()
    pos = 0
    for steps in range(1, step_limit + 1):
        r = bem.step(state)
        if isinstance(r, Running):
            state = r.state
        elif isinstance(r, NeedInput):
            if pos == len(symbols):
                return Diverged(Reason.UNDERFLOW, steps)
            state = r.resume(symbols[pos])
            pos += 1
        elif isinstance(r, Halt):
            if pos < len(symbols):
                return Diverged(Reason.OVERFLOW, steps)
            return _halted(r.output, steps)
        else:
            return Diverged(r.reason, steps)
    return Diverged(Reason.STEP_LIMIT, step_limit)


# ---------------------------------------------------------------------------
# Elimination


@dataclass
class _Branch:
    symbol: str
    state: Any
    result: Any = None  # the non-Running step result once settled

    @property
    def stepping(self):
        return self.result is None


@dataclass
class EliminationStats:
    reads: int = 0
    rounds: int = 0
    silent_halts: int = 0
    max_branches: int = 0
    steps: int = 0
    history: list = field(default_factory=list)


class _OutOfSteps(Exception):
    pass


class EliminatedMachine:
    """A Chaitin machine over ``{0, 1}`` built from a stepper.

    ``round_budget`` bounds the stepper steps spent in one speculation
    round; ``step_limit`` in ``run`` bounds the whole run.
    """

    def __init__(self, bem: MachineStepper, round_budget: int = 10_000):
        if round_budget < 1:
            raise ValueError("round_budget must be at least 1")
        self.bem = bem
        self.round_budget = round_budget
        self.name = f"eliminated-{bem.name}"
        self.last_stats = EliminationStats()

    def __repr__(self):
        return f"EliminatedMachine({self.bem!r}, round_budget={self.round_budget})"

    def run(self, bits: str, step_limit: int = 100_000) -> RunOutcome:
        self.last_stats = stats = EliminationStats()
        pipe = Pipe(clean_bits(bits))
        bem = self.bem

        def tick():
            stats.steps += 1
            if stats.steps > step_limit:
                raise _OutOfSteps

        def settle(state):
            # run one line of computation until it reads, halts or loops
            while True:
                tick()
                r = bem.step(state)
                if not isinstance(r, Running):
                    return r
                state = r.state

        def finish(r) -> RunOutcome:
            if isinstance(r, Halt):
                if not pipe.empty():
                    return Diverged(Reason.OVERFLOW, stats.steps)
                return _halted(r.output, stats.steps)
            return Diverged(r.reason, stats.steps)

        try:
            r = settle(bem.initial())
            while isinstance(r, NeedInput):
                r = self._speculate(r, pipe, stats, tick, settle)
            return finish(r)
        except _OutOfSteps:
            return Diverged(Reason.STEP_LIMIT, step_limit)

    __call__ = run

    def _speculate(self, request: NeedInput, pipe: Pipe, stats, tick, settle):
        """One read request: returns the next non-Running result to act on."""
        branches = [_Branch(s, request.resume(s)) for s in SYMBOLS]
        stats.max_branches = max(stats.max_branches, len(branches))
        stats.rounds += 1
        spent = 0
        while True:
            for br in branches:
                if br.stepping:
                    tick()
                    spent += 1
                    r = self.bem.step(br.state)
                    if isinstance(r, Running):
                        br.state = r.state
                    else:
                        br.result = r
            results = [br.result for br in branches]
            if all(isinstance(x, Halt) for x in results):
                outs = [x.output for x in results]
                if all(_same_output(outs[0], o) for o in outs[1:]):
                    # the outcome does not depend on the symbol: skip the read
                    stats.silent_halts += 1
                    return results[0]
            settled = any(isinstance(x, (NeedInput, Halt)) for x in results)
            if settled and not self._silent_halt_possible(results):
                break
            if not any(br.stepping for br in branches):
                break
            if spent >= self.round_budget:
                raise _OutOfSteps
        sym = pipe.read()
        stats.reads += 1
        stats.history.append(sym)
        if sym is None:
            return Loop(Reason.UNDERFLOW)
        chosen = next(br for br in branches if br.symbol == sym)
        if chosen.stepping:
            return settle(chosen.state)
        return chosen.result

    @staticmethod
    def _silent_halt_possible(results) -> bool:
        halts = []
        for x in results:
            if isinstance(x, (NeedInput, Loop)):
                return False
            if isinstance(x, Halt):
                halts.append(x.output)
        return all(_same_output(halts[0], o) for o in halts[1:]) if halts else True


def _same_output(a, b) -> bool:
    if isinstance(a, Term) != isinstance(b, Term):
        return False
    return a == b


def eliminate(bem: MachineStepper, step_budget_per_round: int = 10_000) -> EliminatedMachine:
    return EliminatedMachine(bem, step_budget_per_round)


def run_eliminated(language: str, bits: str, step_limit: int = 100_000,
                   round_budget: int = 10_000) -> RunOutcome:
    return eliminate(as_bem(language), round_budget).run(bits, step_limit)

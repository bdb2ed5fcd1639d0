"""Registry of the bit languages by name."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .eliminator import BEM_NAMES, EliminatedMachine, as_bem, eliminate, run_bem
from .encodings import (
    FOKKER, IOTA, SIMPLE_CHAITIN, TreeMachine, blc_eval, blc_parse, extended_machine,
    fokker_eval, iota_eval, zot_eval, zot_term,
)
from .keraia import PF_KERAIA, keraia_eval, keraia_translate
from .pipe import ENDMARKER, clean_bits
from .runtime import RunOutcome
from .terms import App, Term, bool_list, to_combinators
from .trees import ProgramSyntaxError, parse_tree, split_tree_prefix, tree_term

__all__ = ["Language", "LANGUAGES", "get_language", "chaitin_machine", "CHAITIN_NAMES",
           "start_configuration"]

EXTENDED_IOTA = extended_machine(IOTA)


@dataclass(frozen=True)
class Language:
    """``run(bits, step_limit)``; ``prefix_free`` marks Chaitin machines.

    For blank-endmarker languages ``run`` takes the bits without the
    endmarker, which is implied at the end.
    """

    name: str
    run: Callable[[str, int], RunOutcome]
    prefix_free: bool
    bem: bool = False
    description: str = ""


def _bem_runner(name: str):
    def run(bits: str, step_limit: int = 100_000) -> RunOutcome:
        return run_bem(as_bem(name), bits + ENDMARKER, step_limit)
    return run


LANGUAGES: dict[str, Language] = {
    "iota": Language("iota", iota_eval, False, description="one tree, leaves are iota"),
    "fokker": Language("fokker", fokker_eval, False, description="one tree, leaves are Fokker's combinator"),
    "simple": Language("simple", SIMPLE_CHAITIN.run, True, description="tree program plus input read by R"),
    "ext": Language("ext", EXTENDED_IOTA.run, True, description="iota extended with Pair and R"),
    "pf-keraia": Language("pf-keraia", PF_KERAIA.run, True, description="Keraia with R leaves plus input"),
    "zot": Language("zot", zot_eval, False, True, "fold of bit continuations"),
    "blc": Language("blc", blc_eval, False, True, "binary lambda calculus applied to the rest as a list"),
    "keraia": Language("keraia", keraia_eval, False, True, "one tree of curried lambda syntax"),
}
for _toy in ("fixed3", "parity", "echo"):
    LANGUAGES[_toy] = Language(_toy, _bem_runner(_toy), False, True, "toy blank-endmarker machine")

_TREE_MACHINES: dict[str, TreeMachine] = {
    "simple": SIMPLE_CHAITIN,
    "ext": EXTENDED_IOTA,
    "pf-keraia": PF_KERAIA,
}

ELIMINATED_PREFIX = "eliminated-"
CHAITIN_NAMES = tuple(_TREE_MACHINES) + tuple(ELIMINATED_PREFIX + b for b in BEM_NAMES)


def get_language(name: str) -> Language:
    try:
        return LANGUAGES[name]
    except KeyError:
        known = ", ".join(LANGUAGES)
        raise ValueError(f"unknown language {name!r} (known: {known})") from None


def chaitin_machine(name: str, round_budget: int = 10_000) -> TreeMachine | EliminatedMachine:
    """A prefix-free machine by name.

    ``simple``, ``ext`` and ``pf-keraia`` are tree machines; any BEM name,
    bare or as ``eliminated-<name>``, gives the eliminated machine.
    """
    if name in _TREE_MACHINES:
        return _TREE_MACHINES[name]
    bem = name[len(ELIMINATED_PREFIX):] if name.startswith(ELIMINATED_PREFIX) else name
    if bem in BEM_NAMES:
        return eliminate(as_bem(bem), round_budget)
    raise ValueError(f"{name!r} is not a prefix-free machine (known: {', '.join(CHAITIN_NAMES)})")


def start_configuration(name: str, bits: str):
    """``(term, input_bits, finish)`` that ``run`` starts reducing from.

    ``finish`` post-processes the normal form (or is ``None``).  Raises
    ``ProgramSyntaxError`` for malformed programs and ``ValueError`` for the
    toy machines, which have no term.
    """
    bits = clean_bits(bits)
    finish = None
    if name in ("iota", "fokker"):
        term: Term = tree_term(parse_tree(bits), IOTA if name == "iota" else FOKKER)
        return term, "", finish
    if name in _TREE_MACHINES:
        machine = _TREE_MACHINES[name]
        tree, rest = split_tree_prefix(bits)
        return machine.program(tree), rest, machine.finish
    if name == "zot":
        return zot_term(bits), "", finish
    if name == "blc":
        program, rest = blc_parse(bits)
        if program.fv:
            raise ProgramSyntaxError("BLC program has free variables")
        return App(program, bool_list(rest)), "", finish
    if name == "keraia":
        return keraia_translate(parse_tree(bits)), "", to_combinators
    get_language(name)
    raise ValueError(f"{name!r} has no lambda-term configuration")

"""Keraia: binary curried-lambda programs, as a BEM and as a Chaitin machine.

A program is one full binary tree.  Read top-down, a subtree is

1. a variable, if its shape equals the pattern of an enclosing binder
   (most recently bound pattern wins);
2. a binder ``Node(Node(Leaf, P), B)``: the left leaf is the curried λ, ``P``
   is the variable pattern (any subtree) and ``B`` the body;
3. otherwise an application of left to right;
4. an unmatched leaf becomes the leaf constant: Keraia's 0 combinator
   ``λc. c Interpret``, or ``R`` in the prefix-free machine.

The translated term is reduced to normal form and bracket-abstracted into
an S/K/I combinator.
"""

from __future__ import annotations

import enum

from .encodings import TreeMachine
from .pipe import Pipe, clean_bits
from .reduction import reduce
from .runtime import Diverged, Halted, Reason, RunOutcome, outcome_from
from .terms import App, Lam, R, Term, Var, parse_curried, to_combinators
from .trees import BitTree, Leaf, Node, ProgramSyntaxError, parse_tree

__all__ = [
    "ZERO_LEAF", "LeafMeaning", "SELF_INTERPRETER_PREFIX",
    "keraia_translate", "keraia_interpret", "keraia_eval",
    "PF_KERAIA", "pf_keraia_eval", "substring_source", "substring_term", "KeraiaDiverged",
]

ZERO_LEAF = parse_curried("``^c `c Interpret")
SELF_INTERPRETER_PREFIX = "111000"


class LeafMeaning(enum.Enum):
    INTERPRET = "interpret"
    R = "R"

    @property
    def term(self) -> Term:
        return ZERO_LEAF if self is LeafMeaning.INTERPRET else R


class KeraiaDiverged(RuntimeError):
    def __init__(self, result):
        super().__init__(f"no normal form: {result.status.value} after {result.steps} steps")
        self.result = result


def keraia_translate(tree: BitTree, leaf: Term | LeafMeaning = LeafMeaning.INTERPRET) -> Term:
    """Translate a program tree to an (unreduced) lambda term."""
    if isinstance(leaf, LeafMeaning):
        leaf = leaf.term

    def go(node: BitTree, env: list[str]) -> Term:
        for k in range(len(env) - 1, -1, -1):
            if env[k] == node.bits:
                return Var(len(env) - 1 - k)
        if isinstance(node, Leaf):
            return leaf
        left = node.left
        # a left child that is itself a marked variable is not binder syntax
        if (isinstance(left, Node) and isinstance(left.left, Leaf)
                and left.bits not in env):
            return Lam(go(node.right, env + [left.right.bits]))
        return App(go(left, env), go(node.right, env))

    return go(tree, [])


def keraia_interpret(tree: BitTree, leaf_meaning: LeafMeaning = LeafMeaning.INTERPRET,
                     step_limit: int = 100_000, pipe: Pipe | None = None) -> Term:
    """Translate, reduce to normal form, and abstract into a combinator.

    Raises ``KeraiaDiverged`` if no normal form is reached.
    """
    r = reduce(keraia_translate(tree, leaf_meaning), step_limit, pipe)
    if not r.normal:
        raise KeraiaDiverged(r)
    return to_combinators(r.term)


def keraia_eval(bits: str, step_limit: int = 100_000) -> RunOutcome:
    """The BEM: ``bits`` is one complete tree, the endmarker is implicit."""
    try:
        tree = parse_tree(clean_bits(bits))
    except ProgramSyntaxError:
        return Diverged(Reason.SYNTAX_ERROR)
    pipe = Pipe()
    r = reduce(keraia_translate(tree), step_limit, pipe)
    out = outcome_from(r, pipe)
    if isinstance(out, Halted):
        return Halted(to_combinators(out.term), out.steps)
    return out


PF_KERAIA = TreeMachine(
    "pf-keraia",
    lambda tree: keraia_translate(tree, LeafMeaning.R),
    finish=to_combinators,
)


def pf_keraia_eval(codeword: str, step_limit: int = 100_000) -> RunOutcome:
    """First full tree is the program (leaves read as ``R``); the rest is input."""
    return PF_KERAIA.run(codeword, step_limit)


# ---------------------------------------------------------------------------
# Textual algorithm with raw substring replacement.  It agrees with the
# structural translation when no variable pattern occurs inside binder
# syntax; kept only to cross-check such programs.


def _subtree_end(x: str, pos: int) -> int:
    count = 0
    while count >= 0 and pos < len(x):
        count += 1 if x[pos] in "13" else -1
        pos += 1
    return pos


def _substring_parse(x: str) -> str:
    if "1" not in x:
        return "_" + x + " "
    mid = _subtree_end(x, 1)
    left = x[1:mid]
    right = x[mid:_subtree_end(x, mid)]
    if left[:2] == "10":
        pattern = left[2:]
        arg = pattern.replace("0", "2").replace("1", "3")
        return "``^_" + arg + " " + _substring_parse(right.replace(pattern, arg))
    return "`" + _substring_parse(left) + _substring_parse(right)


def substring_source(bits: str, prefix_free: bool = False) -> str:
    """Backtick source produced by the substring-replacement algorithm."""
    src = _substring_parse(clean_bits(bits))
    if prefix_free:
        src = src.replace("_0 ", "R ")
    return src


def substring_term(bits: str, prefix_free: bool = False) -> Term:
    return parse_curried(substring_source(bits, prefix_free), {"_0": ZERO_LEAF})

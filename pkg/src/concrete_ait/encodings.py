"""Bit-level languages built on the term core.

Tree languages read a preorder traversal (1 = application, 0 = a fixed leaf
combinator).  The Chaitin variants take the first complete traversal as the
program and push the remaining bits through the pipe, where ``R`` reads
them.
"""

from __future__ import annotations

from typing import Callable

from .pipe import Pipe, clean_bits
from .reduction import Status, reduce
from .runtime import Diverged, Halted, Reason, RunOutcome, run_with_pipe
from .terms import (
    App, Lam, Term, Var, bool_list, parse_curried,
)
from .trees import (
    BitTree, ProgramSyntaxError, iter_trees, parse_tree, split_tree_prefix, tree_term,
)

__all__ = [
    "IOTA", "FOKKER", "SIMPLE_ZERO", "PAIR_COMBINATOR",
    "fokker_combinator", "extend_universal",
    "iota_eval", "fokker_eval", "simple_chaitin_eval", "extended_eval",
    "ZOT_EMPTY", "ZOT_BITS", "zot_term", "zot_eval",
    "blc_parse", "blc_eval",
    "TreeMachine", "SIMPLE_CHAITIN", "extended_machine",
]

IOTA = parse_curried("``^f ``f S K")
FOKKER = parse_curried("``^f ``f S ``^x ``^y ``^z x")

# The Chaitin-universal leaf: A, B and C only exist to make
# 100 = K, 10100 = S and 1010100 = R.
_A = parse_curried("`K `K R")
_B = parse_curried("`K `K `K `K `K `K `K K")
_C = parse_curried("``^x `x B", {"B": _B})
SIMPLE_ZERO = parse_curried("``^x ````x C A `K I S", {"A": _A, "C": _C})

PAIR_COMBINATOR = parse_curried("``^x ``^y ``^z ``z x y")


def fokker_combinator() -> Term:
    return FOKKER


def extend_universal(universal: Term) -> Term:
    """Leaf combinator ``Pair (λxyz.U) R`` for a closed universal ``U``.

    Its tree language is a Chaitin machine: ``100`` evaluates to ``U`` and
    ``U``-programs run once every ``U`` leaf is replaced by ``100``.
    """
    if universal.fv:
        raise ValueError("the universal combinator must be closed")
    return parse_curried(
        "``Pair ``^x ``^y ``^z U R", {"Pair": PAIR_COMBINATOR, "U": universal}
    )


def _tree_program(bits: str, leaf: Term) -> Term:
    return tree_term(parse_tree(bits), leaf)


def _syntax_error() -> Diverged:
    return Diverged(Reason.SYNTAX_ERROR)


def iota_eval(bits: str, step_limit: int = 100_000, leaf: Term = IOTA) -> RunOutcome:
    """Plain Iota: the whole string must be one tree; there is no input."""
    bits = clean_bits(bits)
    try:
        program = _tree_program(bits, leaf)
    except ProgramSyntaxError:
        return _syntax_error()
    return run_with_pipe(program, "", step_limit)


def fokker_eval(bits: str, step_limit: int = 100_000) -> RunOutcome:
    return iota_eval(bits, step_limit, leaf=FOKKER)


class TreeMachine:
    """A Chaitin machine whose codewords are a tree traversal plus input.

    ``program`` maps the parsed tree to a closed term; ``finish`` (optional)
    post-processes a halted normal form.
    """

    def __init__(self, name: str, program: Callable[[BitTree], Term],
                 finish: Callable[[Term], Term] | None = None):
        self.name = name
        self.program = program
        self.finish = finish

    def __repr__(self):
        return f"TreeMachine({self.name!r})"

    def _halted(self, term: Term, steps: int) -> Halted:
        if self.finish is not None:
            term = self.finish(term)
        return Halted(term, steps)

    def run(self, codeword: str, step_limit: int = 100_000) -> RunOutcome:
        codeword = clean_bits(codeword)
        try:
            tree, rest = split_tree_prefix(codeword)
        except ProgramSyntaxError:
            return _syntax_error()
        out = run_with_pipe(self.program(tree), rest, step_limit)
        if isinstance(out, Halted):
            return self._halted(out.term, out.steps)
        return out

    __call__ = run

    def explore(self, max_len: int, step_limit: int, programs=None, on_limit=None):
        """Yield ``(codeword, Halted)`` for every halting codeword up to ``max_len``.

        Instead of running each string from scratch, a blocked reduction is
        resumed once per possible next bit; the contraction sequence (and so
        the step count) is the same as a fresh run.  Codewords come out
        grouped by program in length-lexicographic program order.

        ``on_limit(prefix)`` is called for each input prefix whose run hits
        the step limit; every extension of it hits the limit as well.
        """
        if programs is None:
            programs = (p for n in range(1, max_len + 1, 2) for p in iter_trees(n))
        for prog in programs:
            if len(prog) > max_len:
                continue
            yield from self.explore_program(prog, max_len, step_limit, on_limit)

    def explore_program(self, prog: str, max_len: int, step_limit: int, on_limit=None):
        term = self.program(parse_tree(prog))
        # (partial term, input so far, steps used, pending bit)
        work = [(term, "", 0, "")]
        while work:
            t, inp, used, pending = work.pop()
            pipe = Pipe(pending)
            r = reduce(t, step_limit - used, pipe)
            used += r.steps
            if r.status is Status.NORMAL_FORM:
                if pipe.empty():
                    yield prog + inp, self._halted(r.term, used)
            elif r.status is Status.UNDERFLOW:
                if len(prog) + len(inp) < max_len:
                    # push 1 first so 0 is explored first
                    work.append((r.term, inp + "1", used, "1"))
                    work.append((r.term, inp + "0", used, "0"))
            elif on_limit is not None:
                on_limit(prog + inp)


SIMPLE_CHAITIN = TreeMachine("simple", lambda tree: tree_term(tree, SIMPLE_ZERO))


def simple_chaitin_eval(codeword: str, step_limit: int = 100_000) -> RunOutcome:
    return SIMPLE_CHAITIN.run(codeword, step_limit)


def extended_machine(universal: Term) -> TreeMachine:
    leaf = extend_universal(universal)
    return TreeMachine("ext", lambda tree: tree_term(tree, leaf))


def extended_eval(codeword: str, universal: Term = IOTA, step_limit: int = 100_000) -> RunOutcome:
    return extended_machine(universal).run(codeword, step_limit)


# ---------------------------------------------------------------------------
# Zot (without the output monad)

ZOT_EMPTY = parse_curried("``^c `c I")
ZOT_BITS = {
    "0": parse_curried("``^c `c iota", {"iota": IOTA}),
    "1": parse_curried("``^c ``^L `L ``^l ``^M `M ``^r `c `l r"),
}


def zot_term(bits: str) -> Term:
    """Left fold: start from the empty continuation, apply each bit term."""
    acc = ZOT_EMPTY
    for b in clean_bits(bits):
        acc = App(acc, ZOT_BITS[b])
    return acc


def zot_eval(bits: str, step_limit: int = 100_000) -> RunOutcome:
    return run_with_pipe(zot_term(bits), "", step_limit)


# ---------------------------------------------------------------------------
# Binary lambda calculus
#
#   01 F0 F1  application
#   00 F      abstraction
#   1^k 0     variable with de Bruijn index k-1 (k >= 1, 0 = innermost)


def blc_parse(bits: str) -> tuple[Term, str]:
    bits = clean_bits(bits)
    pos = 0

    def need(n: int):
        if pos + n > len(bits):
            raise ProgramSyntaxError(f"truncated BLC program: {bits!r}")

    def term() -> Term:
        nonlocal pos
        need(1)
        if bits[pos] == "1":
            k = 0
            while True:
                need(1)
                if bits[pos] == "0":
                    pos += 1
                    return Var(k - 1)
                k += 1
                pos += 1
        need(2)
        tag = bits[pos + 1]
        pos += 2
        if tag == "0":
            return Lam(term())
        fn = term()
        return App(fn, term())

    t = term()
    return t, bits[pos:]


def blc_eval(bits: str, step_limit: int = 100_000) -> RunOutcome:
    """Parse a program, apply it to the remaining bits as a boolean list."""
    try:
        program, rest = blc_parse(bits)
    except ProgramSyntaxError:
        return _syntax_error()
    if program.fv:
        return _syntax_error()
    return run_with_pipe(App(program, bool_list(rest)), "", step_limit)

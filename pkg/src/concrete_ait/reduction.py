"""Normal-order reduction with delta rules and lazily read input.

Two independent implementations live here:

``reduce``
    the production path.  It head-reduces a spine kept as a Python list,
    then normalises arguments left to right, which performs exactly the
    leftmost-outermost contraction sequence without re-scanning the term.

``step``
    a naive one-contraction rewriter that searches the whole term for the
    next redex.  It drives traces and serves as the oracle for ``reduce``.

A step is one beta contraction, one S/K/I delta contraction, or one input
read (``R x`` or an input-list cell).
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass

from .pipe import ENDMARKER, Pipe
from .terms import (
    BIT_TERMS, NIL, PAIR, App, I, K, Lam, Prim, Stream, Term, Var,
    alpha_eq, expand_primitives, spine,
)

__all__ = [
    "Status", "ReductionResult", "reduce", "normal_form", "step",
    "Blocked", "trace", "redex_count", "shift", "subst",
    "decode_bool_list", "try_decode_bool_list", "combinator_eq",
]

_ARITY = {"S": 3, "K": 2, "I": 1, "R": 1}

if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)


class Status(enum.Enum):
    NORMAL_FORM = "normal-form"
    STEP_LIMIT = "step-limit"
    UNDERFLOW = "underflow"


@dataclass(frozen=True)
class ReductionResult:
    """``term`` is the normal form, or the partial term where work stopped.

    A partial term can be handed back to ``reduce`` to continue the same
    contraction sequence.
    """

    status: Status
    term: Term
    steps: int

    @property
    def normal(self) -> bool:
        return self.status is Status.NORMAL_FORM


# ---------------------------------------------------------------------------
# de Bruijn plumbing


def shift(t: Term, d: int, cutoff: int = 0) -> Term:
    """Add ``d`` to every free index >= ``cutoff``."""
    if t.fv <= cutoff or d == 0:
        return t
    memo: dict[tuple[int, int], Term] = {}

    def go(t: Term, c: int) -> Term:
        if t.fv <= c:
            return t
        key = (id(t), c)
        r = memo.get(key)
        if r is not None:
            return r
        if isinstance(t, Var):
            r = Var(t.index + d)
        elif isinstance(t, Lam):
            r = Lam(go(t.body, c + 1))
        else:
            r = App(go(t.fn, c), go(t.arg, c))
        memo[key] = r
        return r

    return go(t, cutoff)


def subst(body: Term, arg: Term) -> Term:
    """Contract ``(λ.body) arg``: replace index 0, lower the other free ones."""
    if body.fv == 0:
        return body
    memo: dict[tuple[int, int], Term] = {}
    shifted: dict[int, Term] = {}

    def arg_at(depth: int) -> Term:
        r = shifted.get(depth)
        if r is None:
            r = shifted[depth] = shift(arg, depth)
        return r

    def go(t: Term, depth: int) -> Term:
        if t.fv <= depth:
            return t
        key = (id(t), depth)
        r = memo.get(key)
        if r is not None:
            return r
        if isinstance(t, Var):
            r = arg_at(depth) if t.index == depth else Var(t.index - 1)
        elif isinstance(t, Lam):
            r = Lam(go(t.body, depth + 1))
        else:
            r = App(go(t.fn, depth), go(t.arg, depth))
        memo[key] = r
        return r

    return go(body, 0)


def _build(head: Term, args) -> Term:
    for a in args:
        head = App(head, a)
    return head


def _stream_cell(sym: str, pos: int) -> Term:
    if sym == ENDMARKER:
        return NIL
    return App(App(PAIR, BIT_TERMS[sym]), Stream(pos + 1))


# ---------------------------------------------------------------------------
# Fast path


class _Ctx:
    __slots__ = ("limit", "steps", "pipe", "exhausted", "blocked")

    def __init__(self, limit: int, pipe: Pipe):
        self.limit = limit
        self.steps = 0
        self.pipe = pipe
        self.exhausted = False
        self.blocked = False

    @property
    def stopped(self) -> bool:
        return self.exhausted or self.blocked

    def tick(self) -> bool:
        if self.steps >= self.limit:
            self.exhausted = True
            return False
        self.steps += 1
        return True


def _head_reduce(t: Term, ctx: _Ctx) -> tuple[Term, list[Term]]:
    """Contract head redexes until head normal form or a stop.

    Returns the head and its arguments, *last argument first* (a stack).
    """
    args: list[Term] = []
    head = t
    while True:
        if isinstance(head, App):
            args.append(head.arg)
            head = head.fn
            continue
        if isinstance(head, Lam):
            if not args or not ctx.tick():
                break
            head = subst(head.body, args.pop())
            continue
        if isinstance(head, Prim):
            name = head.name
            n = len(args)
            if name == "R" and n:
                if ctx.pipe.empty():
                    ctx.blocked = True
                    break
                if not ctx.tick():
                    break
                head = K if ctx.pipe.read() == "0" else App(K, I)
                continue
            arity = _ARITY.get(name)
            if arity is None or n < arity:
                break
            if not ctx.tick():
                break
            if name == "I":
                head = args.pop()
            elif name == "K":
                head = args.pop()
                args.pop()
            else:
                x = args.pop()
                y = args.pop()
                z = args.pop()
                args.append(App(y, z))
                args.append(z)
                head = x
            continue
        if isinstance(head, Stream):
            pipe = ctx.pipe
            if head.pos >= pipe.consumed and pipe.empty():
                ctx.blocked = True
                break
            if not ctx.tick():
                break
            head = _stream_cell(pipe.symbol_at(head.pos), head.pos)
            continue
        break
    return head, args


_LAM = object()


class _AppFrame:
    __slots__ = ("head", "args", "done")

    def __init__(self, head, args):
        self.head = head
        self.args = args
        self.done = []


def _normalize(t: Term, ctx: _Ctx) -> Term:
    frames: list = []
    cur = t
    while True:
        # descend
        if ctx.stopped:
            result = cur
        else:
            head, stack = _head_reduce(cur, ctx)
            if ctx.stopped:
                stack.reverse()
                result = _build(head, stack)
            elif isinstance(head, Lam) and not stack:
                frames.append(_LAM)
                cur = head.body
                continue
            elif stack:
                stack.reverse()
                frames.append(_AppFrame(head, stack))
                cur = stack[0]
                continue
            else:
                result = head
        # ascend
        while frames:
            f = frames.pop()
            if f is _LAM:
                result = Lam(result)
                continue
            f.done.append(result)
            n = len(f.done)
            if n < len(f.args):
                if not ctx.stopped:
                    frames.append(f)
                    cur = f.args[n]
                    break
                f.done.extend(f.args[n:])
            result = _build(f.head, f.done)
        else:
            return result


def reduce(term: Term, step_limit: int, pipe: Pipe | None = None) -> ReductionResult:
    """Normal-order reduction of ``term`` within ``step_limit`` contractions.

    ``R x`` reads a bit from ``pipe``: 0 gives ``K x``, 1 gives ``K I x``.
    When the next redex is a read and the pipe is empty the result is
    ``UNDERFLOW``; that check comes before the budget check.
    """
    if step_limit < 0:
        raise ValueError("step_limit must be non-negative")
    ctx = _Ctx(step_limit, pipe if pipe is not None else Pipe())
    out = _normalize(term, ctx)
    if ctx.blocked:
        status = Status.UNDERFLOW
    elif ctx.exhausted:
        status = Status.STEP_LIMIT
    else:
        status = Status.NORMAL_FORM
    return ReductionResult(status, out, ctx.steps)


def normal_form(term: Term, step_limit: int = 100_000) -> Term | None:
    """Normal form reached without input, or ``None``."""
    r = reduce(term, step_limit)
    return r.term if r.normal else None


# ---------------------------------------------------------------------------
# Naive path


class Blocked(Exception):
    """The next redex is a read and the pipe is empty."""


def _contract(head: Term, args: list[Term], pipe: Pipe) -> Term | None:
    """Contract the redex formed by ``head`` and a prefix of ``args``."""
    if isinstance(head, Lam):
        if args:
            return _build(subst(head.body, args[0]), args[1:])
        return None
    if isinstance(head, Prim):
        name = head.name
        if name == "R":
            if not args:
                return None
            sym = pipe.read()
            if sym is None:
                raise Blocked
            return _build(K if sym == "0" else App(K, I), args)
        arity = _ARITY.get(name)
        if arity is None or len(args) < arity:
            return None
        if name == "I":
            return _build(args[0], args[1:])
        if name == "K":
            return _build(args[0], args[2:])
        x, y, z = args[:3]
        return _build(App(App(x, z), App(y, z)), args[3:])
    if isinstance(head, Stream):
        if head.pos >= pipe.consumed and pipe.empty():
            raise Blocked
        return _build(_stream_cell(pipe.symbol_at(head.pos), head.pos), args)
    return None


def _is_redex(head: Term, nargs: int) -> bool:
    if isinstance(head, Lam):
        return nargs >= 1
    if isinstance(head, Stream):
        return True
    if isinstance(head, Prim):
        arity = _ARITY.get(head.name)
        return arity is not None and nargs >= arity
    return False


def _step_outermost(t: Term, pipe: Pipe) -> Term | None:
    if isinstance(t, Lam):
        b = _step_outermost(t.body, pipe)
        return None if b is None else Lam(b)
    head, args = spine(t)
    r = _contract(head, args, pipe)
    if r is not None:
        return r
    for i, a in enumerate(args):
        b = _step_outermost(a, pipe)
        if b is not None:
            return _build(head, args[:i] + [b] + args[i + 1:])
    return None


def _step_innermost(t: Term, pipe: Pipe) -> Term | None:
    if isinstance(t, Lam):
        b = _step_innermost(t.body, pipe)
        return None if b is None else Lam(b)
    if not isinstance(t, App):
        if isinstance(t, Stream):
            return _contract(t, [], pipe)
        return None
    f = _step_innermost(t.fn, pipe)
    if f is not None:
        return App(f, t.arg)
    a = _step_innermost(t.arg, pipe)
    if a is not None:
        return App(t.fn, a)
    head, args = spine(t)
    arity = 1 if isinstance(head, Lam) else _ARITY.get(getattr(head, "name", None))
    if arity is not None and len(args) == arity and _is_redex(head, len(args)):
        return _contract(head, args, pipe)
    return None


def step(term: Term, pipe: Pipe | None = None, strategy: str = "outermost") -> Term | None:
    """Perform one contraction; ``None`` if ``term`` is in normal form.

    ``strategy`` is ``"outermost"`` (leftmost-outermost, the machine's
    order) or ``"innermost"`` (leftmost-innermost).  Raises ``Blocked`` when
    the chosen redex needs input that is not there.
    """
    pipe = pipe if pipe is not None else Pipe()
    if strategy == "outermost":
        return _step_outermost(term, pipe)
    if strategy == "innermost":
        return _step_innermost(term, pipe)
    raise ValueError(f"unknown strategy {strategy!r}")


def trace(term: Term, step_limit: int, pipe: Pipe | None = None, strategy: str = "outermost"):
    """Yield the term after each contraction, starting with ``term`` itself.

    Returns (via ``StopIteration.value``) the final ``ReductionResult``.
    """
    pipe = pipe if pipe is not None else Pipe()
    yield term
    steps = 0
    while True:
        if steps >= step_limit:
            try:
                nxt = step(term, pipe.copy(), strategy)
            except Blocked:
                return ReductionResult(Status.UNDERFLOW, term, steps)
            if nxt is None:
                return ReductionResult(Status.NORMAL_FORM, term, steps)
            return ReductionResult(Status.STEP_LIMIT, term, steps)
        try:
            nxt = step(term, pipe, strategy)
        except Blocked:
            return ReductionResult(Status.UNDERFLOW, term, steps)
        if nxt is None:
            return ReductionResult(Status.NORMAL_FORM, term, steps)
        term = nxt
        steps += 1
        yield term


def redex_count(t: Term) -> int:
    """Number of redex positions in ``t`` (reads included)."""
    count = 0
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, Lam):
            stack.append(x.body)
            continue
        if isinstance(x, Stream):
            count += 1
            continue
        if not isinstance(x, App):
            continue
        head, args = spine(x)
        # every prefix h a1..ak with k >= arity is its own App node
        if isinstance(head, Lam):
            count += 1 if args else 0
            stack.append(head.body)
        elif isinstance(head, Stream):
            count += 1
        elif isinstance(head, Prim):
            arity = _ARITY.get(head.name)
            if arity is not None and len(args) >= arity:
                count += 1
        stack.extend(args)
    return count


# ---------------------------------------------------------------------------
# Observations on normal forms

_TRUE = Lam(Lam(Var(1)))
_FALSE = Lam(Lam(Var(0)))


def _pure_normal_form(t: Term, budget: int) -> Term | None:
    r = reduce(expand_primitives(t), budget)
    return r.term if r.normal else None


def combinator_eq(a: Term, b: Term, step_limit: int = 10_000) -> bool:
    """Compare two terms by the normal forms of their pure-lambda expansions.

    ``S K K`` and ``λx.x`` compare equal here although ``alpha_eq`` keeps
    them apart.  Terms without a normal form within the budget are unequal.
    """
    if alpha_eq(a, b):
        return True
    na = _pure_normal_form(a, step_limit)
    nb = _pure_normal_form(b, step_limit)
    return na is not None and nb is not None and alpha_eq(na, nb)


def decode_bool_list(term: Term, step_limit: int = 10_000, max_length: int = 1 << 16) -> str:
    """Read a normal form as a nil-terminated list of booleans.

    The term is expanded to pure lambda form and normalised; it must then be
    exactly ``λz. z h t`` cells with closed ``h`` equal to ``λxy.x`` (bit 0)
    or ``λxy.y`` (bit 1), ending in ``λxy.y``.  Anything else decodes to the
    empty string; use ``try_decode_bool_list`` to tell the two apart.
    """
    bits = try_decode_bool_list(term, step_limit, max_length)
    return "" if bits is None else bits


def try_decode_bool_list(term: Term, step_limit: int = 10_000,
                         max_length: int = 1 << 16) -> str | None:
    """Like ``decode_bool_list`` but ``None`` when the term is not a list."""
    t = _pure_normal_form(term, step_limit)
    bits = []
    while t is not None and len(bits) <= max_length:
        if alpha_eq(t, _FALSE):
            return "".join(bits)
        if not (isinstance(t, Lam) and isinstance(t.body, App)
                and isinstance(t.body.fn, App)):
            return None
        cell = t.body
        if not (isinstance(cell.fn.fn, Var) and cell.fn.fn.index == 0):
            return None
        h, rest = cell.fn.arg, cell.arg
        if h.fv or rest.fv:
            return None
        if alpha_eq(h, _TRUE):
            bits.append("0")
        elif alpha_eq(h, _FALSE):
            bits.append("1")
        else:
            return None
        t = rest
    return None

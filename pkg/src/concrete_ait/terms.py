"""Lambda/combinator terms.

Terms are immutable and hash-consed only in the weak sense that every node
caches its structural hash, its free-variable bound and its size.  Binders use
de Bruijn indices (0 = innermost).  Two extra leaf kinds sit next to the
primitives:

* ``Named`` -- a free named variable.  Used as an inert marker constant in
  reductions and as the variable form consumed by bracket abstraction.
* ``Stream`` -- a lazily read input list (the tail of a blank-endmarker
  program's input); only the stepper adaptors create these.

Equality of terms (``==``) is structural equality of the de Bruijn form, which
is alpha-equivalence.
"""

from __future__ import annotations

import itertools
import re
import string

__all__ = [
    "Term", "Var", "Lam", "App", "Prim", "Named", "Stream",
    "S", "K", "I", "R", "INTERPRET", "PRIMITIVE_NAMES",
    "apply", "spine", "alpha_eq", "is_closed",
    "parse_curried", "print_canonical", "CurriedSyntaxError",
    "lambda_abstract", "to_combinators", "expand_primitives",
    "contains_lambda", "named_variables",
    "PAIR", "NIL", "BIT_TERMS", "bool_list",
]


class Term:
    __slots__ = ("fv", "size", "_hash")

    def __eq__(self, other):
        if not isinstance(other, Term):
            return NotImplemented
        return alpha_eq(self, other)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{type(self).__name__} {_show(self)}>"

    def __str__(self):
        return _show(self)


class Var(Term):
    __slots__ = ("index",)

    def __init__(self, index: int):
        if index < 0:
            raise ValueError("de Bruijn index must be non-negative")
        self.index = index
        self.fv = index + 1
        self.size = 1
        self._hash = hash(("V", index))


class Lam(Term):
    __slots__ = ("body",)

    def __init__(self, body: Term):
        self.body = body
        self.fv = body.fv - 1 if body.fv else 0
        self.size = body.size + 1
        self._hash = hash(("L", body._hash))


class App(Term):
    __slots__ = ("fn", "arg")

    def __init__(self, fn: Term, arg: Term):
        self.fn = fn
        self.arg = arg
        self.fv = fn.fv if fn.fv > arg.fv else arg.fv
        self.size = fn.size + arg.size + 1
        self._hash = hash(("A", fn._hash, arg._hash))


class Prim(Term):
    """A primitive constant: S, K, I, R or Interpret."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self.fv = 0
        self.size = 1
        self._hash = hash(("P", name))


class Named(Term):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self.fv = 0
        self.size = 1
        self._hash = hash(("N", name))


class Stream(Term):
    """The unread part of an input list, starting at symbol ``pos``."""

    __slots__ = ("pos",)

    def __init__(self, pos: int):
        self.pos = pos
        self.fv = 0
        self.size = 1
        self._hash = hash(("T", pos))


S = Prim("S")
K = Prim("K")
I = Prim("I")  # noqa: E741
R = Prim("R")
INTERPRET = Prim("Interpret")
PRIMITIVE_NAMES = ("S", "K", "I", "R", "Interpret")
_PRIMS = {p.name: p for p in (S, K, I, R, INTERPRET)}


def apply(head: Term, *args: Term) -> Term:
    """Left-associated application ``head a1 a2 ...``."""
    for a in args:
        head = App(head, a)
    return head


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split ``h a1 ... an`` into ``(h, [a1, ..., an])``."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def is_closed(t: Term) -> bool:
    return t.fv == 0


def alpha_eq(a: Term, b: Term) -> bool:
    """Structural equality of de Bruijn forms.

    Primitives are compared by name only: ``K`` is not equal to ``λλ.1``.
    Normalise and expand first when extensional comparison is wanted.
    """
    stack = [(a, b)]
    seen = set()
    while stack:
        x, y = stack.pop()
        if x is y:
            continue
        if type(x) is not type(y) or x._hash != y._hash:
            return False
        key = (id(x), id(y))
        if key in seen:
            continue
        seen.add(key)
        if isinstance(x, App):
            stack.append((x.fn, y.fn))
            stack.append((x.arg, y.arg))
        elif isinstance(x, Lam):
            stack.append((x.body, y.body))
        elif isinstance(x, Var):
            if x.index != y.index:
                return False
        elif isinstance(x, Stream):
            if x.pos != y.pos:
                return False
        elif x.name != y.name:
            return False
    return True


def contains_lambda(t: Term) -> bool:
    seen = set()
    stack = [t]
    while stack:
        x = stack.pop()
        if id(x) in seen:
            continue
        seen.add(id(x))
        if isinstance(x, (Lam, Var)):
            return True
        if isinstance(x, App):
            stack.append(x.fn)
            stack.append(x.arg)
    return False


def named_variables(t: Term) -> set[str]:
    seen = set()
    names = set()
    stack = [t]
    while stack:
        x = stack.pop()
        if id(x) in seen:
            continue
        seen.add(id(x))
        if isinstance(x, Named):
            names.add(x.name)
        elif isinstance(x, App):
            stack.append(x.fn)
            stack.append(x.arg)
        elif isinstance(x, Lam):
            stack.append(x.body)
    return names


# ---------------------------------------------------------------------------
# Backtick dialect
#
#   ``^x B   abstraction binding x over B
#   `A B     application
#   name     bound variable, primitive, or caller-supplied definition


class CurriedSyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"`|\^[^\s`^]+|[^\s`^]+|\^")


def _tokenize(source: str) -> list[str]:
    tokens = []
    pos = 0
    for m in _TOKEN.finditer(source):
        gap = source[pos:m.start()]
        if gap.strip():
            raise CurriedSyntaxError(f"unexpected text {gap.strip()!r}")
        tokens.append(m.group())
        pos = m.end()
    if source[pos:].strip():
        raise CurriedSyntaxError(f"unexpected text {source[pos:].strip()!r}")
    return tokens


def parse_curried(source: str, defs: dict[str, Term] | None = None) -> Term:
    """Parse the backtick dialect into a de Bruijn term.

    Bound names shadow ``defs``, which shadow the primitive names.

    >>> parse_curried("``^x ``^y x") == Lam(Lam(Var(1)))
    True
    """
    defs = defs or {}
    tokens = _tokenize(source)
    pos = 0

    def expr(bound: list[str]) -> Term:
        nonlocal pos
        if pos >= len(tokens):
            raise CurriedSyntaxError("dangling application: missing operand")
        tok = tokens[pos]
        if tok == "`":
            if (pos + 2 < len(tokens) and tokens[pos + 1] == "`"
                    and tokens[pos + 2].startswith("^")):
                name = tokens[pos + 2][1:]
                if not name:
                    raise CurriedSyntaxError("binder without a name")
                pos += 3
                return Lam(expr(bound + [name]))
            pos += 1
            fn = expr(bound)
            return App(fn, expr(bound))
        if tok.startswith("^"):
            raise CurriedSyntaxError(f"binder {tok!r} outside ``^x B form")
        pos += 1
        for depth, name in enumerate(reversed(bound)):
            if name == tok:
                return Var(depth)
        if tok in defs:
            return defs[tok]
        if tok in _PRIMS:
            return _PRIMS[tok]
        raise CurriedSyntaxError(f"unbound name {tok!r}")

    term = expr([])
    if pos != len(tokens):
        raise CurriedSyntaxError(f"trailing tokens: {' '.join(tokens[pos:])}")
    return term


def _binder_names():
    letters = string.ascii_lowercase
    yield from letters
    for n in itertools.count(1):
        for c in letters:
            yield f"{c}{n}"


def print_canonical(term: Term) -> str:
    """Render a closed term in the backtick dialect.

    Binders are named by depth: a, b, c, ... (skipping names used by free
    ``Named`` markers), so output is deterministic.
    """
    if term.fv:
        raise ValueError("print_canonical needs a closed term")
    taken = named_variables(term)
    gen = (n for n in _binder_names() if n not in taken)
    names: list[str] = []

    def name_at(depth: int) -> str:
        while len(names) <= depth:
            names.append(next(gen))
        return names[depth]

    out = []
    # explicit stack: items are (term, depth) or literal strings
    stack: list = [(term, 0)]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        t, depth = item
        if isinstance(t, App):
            out.append("`")
            stack.append((t.arg, depth))
            stack.append(" ")
            stack.append((t.fn, depth))
        elif isinstance(t, Lam):
            out.append(f"``^{name_at(depth)} ")
            stack.append((t.body, depth + 1))
        elif isinstance(t, Var):
            out.append(name_at(depth - 1 - t.index))
        elif isinstance(t, Stream):
            raise ValueError("cannot print an unread input stream")
        else:
            out.append(t.name)
    return "".join(out)


def _show(t: Term) -> str:
    """Debug rendering that tolerates open terms."""
    if t.fv == 0:
        try:
            return print_canonical(t)
        except ValueError:
            pass
    if isinstance(t, App):
        return f"`{_show(t.fn)} {_show(t.arg)}"
    if isinstance(t, Lam):
        return f"λ.{_show(t.body)}"
    if isinstance(t, Var):
        return f"#{t.index}"
    if isinstance(t, Stream):
        return f"<input@{t.pos}>"
    return t.name


# ---------------------------------------------------------------------------
# Bracket abstraction


def lambda_abstract(variable: str, term: Term) -> Term:
    """Abstract the named ``variable`` out of ``term`` using S, K and I.

    Rules, first match wins: a subterm without the variable becomes ``K X``;
    the variable itself becomes ``I``; an application ``X Y`` becomes
    ``S [X] [Y]``.  Lambdas inside ``term`` are converted to combinators first.
    """
    if contains_lambda(term):
        term = to_combinators(term)
    mentions: dict[int, bool] = {}

    def has(t: Term) -> bool:
        key = id(t)
        if key not in mentions:
            if isinstance(t, Named):
                mentions[key] = t.name == variable
            elif isinstance(t, App):
                mentions[key] = has(t.fn) or has(t.arg)
            else:
                mentions[key] = False
        return mentions[key]

    memo: dict[int, Term] = {}

    def go(t: Term) -> Term:
        key = id(t)
        if key in memo:
            return memo[key]
        if not has(t):
            r = App(K, t)
        elif isinstance(t, Named):
            r = I
        else:
            r = App(App(S, go(t.fn)), go(t.arg))
        memo[key] = r
        return r

    return go(term)


_fresh = itertools.count()


def to_combinators(term: Term) -> Term:
    """Eliminate every lambda, innermost binder first."""

    def go(t: Term, env: tuple[str, ...]) -> Term:
        if isinstance(t, Var):
            if t.index >= len(env):
                raise ValueError("open term: unbound de Bruijn index")
            return Named(env[-1 - t.index])
        if isinstance(t, Lam):
            name = f"%{next(_fresh)}"
            return lambda_abstract(name, go(t.body, env + (name,)))
        if isinstance(t, App):
            return App(go(t.fn, env), go(t.arg, env))
        return t

    return go(term, ())


_EXPANSIONS = {
    "S": Lam(Lam(Lam(App(App(Var(2), Var(0)), App(Var(1), Var(0)))))),
    "K": Lam(Lam(Var(1))),
    "I": Lam(Var(0)),
}


def expand_primitives(term: Term) -> Term:
    """Replace S, K and I by their pure lambda definitions."""
    memo: dict[int, Term] = {}

    def go(t: Term) -> Term:
        key = id(t)
        if key in memo:
            return memo[key]
        if isinstance(t, Prim) and t.name in _EXPANSIONS:
            r = _EXPANSIONS[t.name]
        elif isinstance(t, App):
            f, a = go(t.fn), go(t.arg)
            r = t if (f is t.fn and a is t.arg) else App(f, a)
        elif isinstance(t, Lam):
            b = go(t.body)
            r = t if b is t.body else Lam(b)
        else:
            r = t
        memo[key] = r
        return r

    return go(term)


# Pairing and the boolean-list encoding: bit 0 is K, bit 1 and nil are `K I.
PAIR = Lam(Lam(Lam(App(App(Var(0), Var(2)), Var(1)))))
NIL = App(K, I)
BIT_TERMS = {"0": K, "1": App(K, I)}


def bool_list(bits: str) -> Term:
    """The nil-terminated pair list ``P b1 (P b2 (... nil))``."""
    t = NIL
    for b in reversed(bits):
        t = App(App(PAIR, BIT_TERMS[b]), t)
    return t

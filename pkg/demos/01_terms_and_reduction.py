"""Terms, reduction and bracket abstraction, one cell at a time."""

from concrete_ait.reduction import combinator_eq, reduce
from concrete_ait.terms import (
    App, I, K, Named, S, apply, lambda_abstract, parse_curried, print_canonical, to_combinators,
)

# %% Backtick source: ` is application, ``^x B binds x in B
k = parse_curried("``^x ``^y x")
print("K as a lambda:", print_canonical(k))

# %% S K K behaves like I on anything, here a free marker v
v = Named("v")
r = reduce(apply(S, K, K, v), 100)
print("S K K v ->", r.term, "in", r.steps, "steps")

# %% Omega never settles; the step limit gives a partial term back
omega = parse_curried("```^x `x x ``^x `x x")
r = reduce(omega, 1000)
print("omega:", r.status.value, "after", r.steps, "steps")

# %% Bracket abstraction: rule 3 (K X) first, then I, then S
t = lambda_abstract("x", lambda_abstract("y", App(Named("y"), Named("x"))))
print("abstract y then x from y x:", print_canonical(t))
print("same via to_combinators:", print_canonical(to_combinators(parse_curried("``^x ``^y `y x"))))

# %% I and S K K are different constants but the same function
print("S K K == I ?", apply(S, K, K) == I, "| extensionally:", combinator_eq(apply(S, K, K), I))

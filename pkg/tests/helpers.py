"""Seeded random terms shared by the property tests."""

from __future__ import annotations

import random

from concrete_ait.terms import App, I, K, Lam, S, Term, Var

PRIMS = (S, K, I)


def random_term(rng: random.Random, size: int, depth: int = 0, prims=PRIMS) -> Term:
    """A closed term with about ``size`` nodes (at most ``size``)."""
    if size <= 1:
        if depth and rng.random() < 0.6:
            return Var(rng.randrange(depth))
        return rng.choice(prims)
    if size == 2 or rng.random() < 0.3:
        return Lam(random_term(rng, size - 1, depth + 1, prims))
    left = rng.randint(1, size - 2)
    return App(random_term(rng, left, depth, prims), random_term(rng, size - 1 - left, depth, prims))


def random_terms(seed: int, count: int, max_size: int = 50, prims=PRIMS):
    rng = random.Random(seed)
    return [random_term(rng, rng.randint(1, max_size), prims=prims) for _ in range(count)]

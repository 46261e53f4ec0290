"""Random expressions for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .atoms import Atom, atom
from .expression import Expression
from .gaussian import GaussianRational

DEFAULT_POOL = (atom("X", 1), atom("X", 2), atom("Y"), atom("Y", primes=1), atom("c"))


def random_coefficient(rng: random.Random) -> GaussianRational:
    re = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    im = Fraction(rng.randint(-2, 2), rng.randint(1, 2)) if rng.random() < 0.3 else 0
    c = GaussianRational(re, im)
    return c if c else GaussianRational(1)


def random_expression(rng: random.Random, pool: tuple[Atom, ...] = DEFAULT_POOL,
                      max_terms: int = 3, max_len: int = 3, max_j: int = 1) -> Expression:
    """Sum of up to ``max_terms`` words of up to ``max_len`` atoms, optionally with J."""
    items = []
    for _ in range(rng.randint(1, max_terms)):
        atoms = tuple(rng.choice(pool) for _ in range(rng.randint(0, max_len)))
        jp = rng.randint(0, max_j)
        items.append((Expression.of(*atoms, jpower=0), jp, random_coefficient(rng)))
    out = Expression()
    for e, jp, c in items:
        # put J inside the word at a random position to exercise J-normalisation
        w = next(iter(e.items()))[0]
        k = rng.randint(0, len(w.atoms))
        left = Expression.of(*w.atoms[:k])
        right = Expression.of(*w.atoms[k:])
        out = out + (left * Expression.of(jpower=jp) * right).scale(c)
    return out

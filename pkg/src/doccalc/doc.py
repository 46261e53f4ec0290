"""DOC operators: classical difference, commutator derivative, q-calculus."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .ncalg import (
    FREE,
    J,
    Atom,
    CommutationTable,
    Expression,
    GaussianRational,
    commutator,
    normalize,
    prime_shift,
    Outcome,
    Rule,
)


def _same_series(a, b):
    return Expression() if a.indices == b.indices else None


@dataclass(frozen=True)
class DerivationHandle:
    """The derivation ``A -> [A, K] / tau`` for a fixed generator ``K``.

    With ``K = J`` and ``tau = 1`` this is the DOC derivative ``D``.  Any
    commutator-defined derivation satisfies the Leibniz rule exactly.
    """

    generator: Expression
    table: CommutationTable = FREE
    tau: Fraction | int = 1

    def __call__(self, e: Expression) -> Expression:
        e = Expression._lift(e)
        out = commutator(e, self.generator, self.table)
        if self.tau != 1:
            out = out.scale(GaussianRational(1) / GaussianRational(Fraction(self.tau)))
        return out


@dataclass(frozen=True)
class ClassicalDifference:
    """``d e = e' - e``; not a commutator, so Leibniz fails by ``d(a) d(b)``."""

    table: CommutationTable = FREE

    def __call__(self, e: Expression) -> Expression:
        return classical_difference(Expression._lift(e), self.table)


def doc_handle(table: CommutationTable = FREE, tau=1) -> DerivationHandle:
    return DerivationHandle(J, table, tau)


def classical_difference(e: Expression, table: CommutationTable = FREE) -> Expression:
    return normalize(prime_shift(e) - e, table)


def doc_derivative(e: Expression, table: CommutationTable = FREE, tau=1) -> Expression:
    """``D e = [e, J]`` (divided by ``tau`` when a time step is given)."""
    return doc_handle(table, tau)(e)


def leibniz_defect(h, a: Expression, b: Expression) -> Expression:
    """``h(ab) - h(a) b - a h(b)``, normalised under the handle's table."""
    a, b = Expression._lift(a), Expression._lift(b)
    return normalize(h(a * b) - h(a) * b - a * h(b), h.table)


def commuting_series_table(base: CommutationTable = FREE, *families: str) -> CommutationTable:
    """``base`` plus ``[X, X^(n)] = 0``: values of one series commute across time.

    Only same-family pairs with equal indices are affected.  Defaults to the
    coordinate family ``X``.
    """
    fams = families or ("X",)
    rules = []
    for f in fams:
        rules.append(Rule(f, f, Outcome.ZERO, _same_series, same_time=False))
    return base.extend(*rules, name=f"{base.name}+commuting-series")


def expected_xdx(x: Atom, commuting: bool = False) -> Expression:
    """``J(X'X' - 2X'X + XX)``, or ``J(X' - X)^2`` for commuting series."""
    xp = Expression.of(x.prime())
    xe = Expression.of(x)
    if commuting:
        d = xp - xe
        return J * d * d
    return J * (xp * xp - (xp * xe).scale(2) + xe * xe)


def xdx_commutator(x: Atom, commuting_series: bool = False) -> Expression:
    """Normal form of ``[X, DX]`` for a single variable.

    Raises ``AssertionError`` if the result disagrees with the closed form
    ``J((X' - X)^2 + [X, X'])``.
    """
    table = commuting_series_table(FREE, x.family) if commuting_series else FREE
    xe = Expression.of(x)
    got = commutator(xe, doc_derivative(xe, table), table)
    xp = Expression.of(x.prime())
    closed = normalize(J * ((xp - xe) * (xp - xe) + (xe * xp - xp * xe)), table)
    assert got == closed, f"[X,DX] = {got} but closed form gives {closed}"
    return got


# -- q-calculus --------------------------------------------------------------

X_SYM = sympy.Symbol("x")
Q_SYM = sympy.Symbol("q")


def _as_sympy(q):
    if isinstance(q, Fraction):
        return sympy.Rational(q.numerator, q.denominator)
    return sympy.sympify(q)


def q_integer(n: int, q=Q_SYM):
    """``[n]_q = 1 + q + ... + q^(n-1)``; ``[0]_q = 0`` by convention."""
    if n < 0:
        raise ValueError("q-integer needs n >= 0")
    q = _as_sympy(q)
    return sympy.expand(sum((q**j for j in range(n)), sympy.Integer(0)))


def q_derivative(p, q=Q_SYM, x=X_SYM) -> sympy.Poly:
    """``(f(qx) - f(x)) / (qx - x)`` for a polynomial ``f`` in ``x``.

    ``q = 1`` is the classical limit and returns the ordinary derivative.
    """
    q = _as_sympy(q)
    f = sympy.Poly(p, x) if not isinstance(p, sympy.Poly) else p
    if q == 1:
        return f.diff(x)
    expr = f.as_expr()
    num = sympy.expand(expr.subs(x, q * x) - expr)
    quotient = sympy.cancel(num / (x * (q - 1)))
    gens = (x,)
    return sympy.Poly(sympy.expand(quotient), *gens)

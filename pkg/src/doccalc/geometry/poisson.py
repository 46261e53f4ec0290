"""Exact Poisson brackets on polynomial phase-space functions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import sympy


def phase_symbols(n: int):
    qs = sympy.symbols(" ".join(f"q{i}" for i in range(1, n + 1)), seq=True)
    ps = sympy.symbols(" ".join(f"p{i}" for i in range(1, n + 1)), seq=True)
    return tuple(qs), tuple(ps)


@dataclass(frozen=True)
class PolyPhaseFunction:
    """A polynomial in ``q1..qn, p1..pn`` with rational coefficients."""

    poly: sympy.Poly
    n: int

    @classmethod
    def from_expr(cls, expr, n: int = 1) -> "PolyPhaseFunction":
        qs, ps = phase_symbols(n)
        loc = {str(s): s for s in qs + ps}
        if n == 1:
            loc.update(q=qs[0], p=ps[0])
        e = sympy.sympify(expr, locals=loc) if isinstance(expr, str) else sympy.sympify(expr)
        return cls(sympy.Poly(e, *qs, *ps, domain="QQ"), n)

    @property
    def q(self):
        return phase_symbols(self.n)[0]

    @property
    def p(self):
        return phase_symbols(self.n)[1]

    def _wrap(self, poly) -> "PolyPhaseFunction":
        return PolyPhaseFunction(poly, self.n)

    def dq(self, i: int) -> "PolyPhaseFunction":
        return self._wrap(self.poly.diff(self.q[i]))

    def dp(self, i: int) -> "PolyPhaseFunction":
        return self._wrap(self.poly.diff(self.p[i]))

    def __add__(self, o):
        return self._wrap(self.poly + _poly(o, self))

    def __sub__(self, o):
        return self._wrap(self.poly - _poly(o, self))

    def __mul__(self, o):
        return self._wrap(self.poly * _poly(o, self))

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.poly)

    def __eq__(self, o):
        if not isinstance(o, PolyPhaseFunction):
            return NotImplemented
        return self.n == o.n and (self.poly - o.poly).is_zero

    def __hash__(self):
        return hash((self.n, self.poly.as_expr()))

    def is_zero(self) -> bool:
        return self.poly.is_zero

    def as_expr(self):
        return self.poly.as_expr()

    def __str__(self):
        return str(self.as_expr())


def _poly(o, like: PolyPhaseFunction) -> sympy.Poly:
    if isinstance(o, PolyPhaseFunction):
        return o.poly
    return sympy.Poly(o, *like.poly.gens, domain="QQ")


def poisson_bracket(a: PolyPhaseFunction, b: PolyPhaseFunction) -> PolyPhaseFunction:
    """``sum_i dA/dq_i dB/dp_i - dA/dp_i dB/dq_i``."""
    out = a * 0
    for i in range(a.n):
        out = out + a.dq(i) * b.dp(i) - a.dp(i) * b.dq(i)
    return out


Flow = tuple[Sequence[PolyPhaseFunction], Sequence[PolyPhaseFunction]]


def time_derivative(f: PolyPhaseFunction, flow: Flow) -> PolyPhaseFunction:
    qdot, pdot = flow
    out = f * 0
    for i in range(f.n):
        out = out + f.dq(i) * qdot[i] + f.dp(i) * pdot[i]
    return out


def divergence(flow: Flow) -> PolyPhaseFunction:
    qdot, pdot = flow
    out = qdot[0] * 0
    for i in range(len(qdot)):
        out = out + qdot[i].dq(i) + pdot[i].dp(i)
    return out


def poisson_leibniz_defect(a: PolyPhaseFunction, b: PolyPhaseFunction, flow: Flow) -> PolyPhaseFunction:
    """``d/dt {a, b} - {da/dt, b} - {a, db/dt}`` along ``flow``."""
    return (time_derivative(poisson_bracket(a, b), flow)
            - poisson_bracket(time_derivative(a, flow), b)
            - poisson_bracket(a, time_derivative(b, flow)))


def defect_formula(a: PolyPhaseFunction, b: PolyPhaseFunction, flow: Flow) -> PolyPhaseFunction:
    """``-{a, b} * (d qdot/dq + d pdot/dp)``.

    This closed form equals the Leibniz defect for one degree of freedom.
    With several degrees of freedom the defect also involves the off-diagonal
    Jacobian of the flow, and the two only agree for special flows.
    """
    return -(poisson_bracket(a, b) * divergence(flow))


def hamiltonian_flow(h: PolyPhaseFunction) -> Flow:
    return ([h.dp(i) for i in range(h.n)], [-h.dq(i) for i in range(h.n)])


def random_poly(rng: random.Random, n: int = 1, degree: int = 3,
                terms: int = 4, coeff: int = 5) -> PolyPhaseFunction:
    """Random polynomial with integer coefficients and total degree at most ``degree``."""
    qs, ps = phase_symbols(n)
    gens = qs + ps
    e = sympy.Integer(0)
    for _ in range(terms):
        d = rng.randint(0, degree)
        mono = sympy.Integer(rng.randint(-coeff, coeff))
        for _ in range(d):
            mono *= rng.choice(gens)
        e += mono
    return PolyPhaseFunction(sympy.Poly(e, *gens, domain="QQ"), n)

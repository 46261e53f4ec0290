"""Iterants, the eta-extension to 2x2 matrices, quaternions, boosts and
permutation-diagonal matrix decomposition."""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy

from .ncalg.gaussian import GaussianRational

SQRT_M1 = GaussianRational(0, 1)  # commuting imaginary unit of the coefficient field


def _is_zero(x) -> bool:
    if isinstance(x, sympy.Basic):
        return sympy.simplify(x) == 0
    return x == 0


@dataclass(frozen=True)
class Iterant:
    """Ordered pair ``[left, right]`` with componentwise arithmetic."""

    left: object
    right: object

    @classmethod
    def scalar(cls, s) -> "Iterant":
        return cls(s, s)

    def __add__(self, o):
        o = _lift(o)
        return Iterant(self.left + o.left, self.right + o.right)

    __radd__ = __add__

    def __sub__(self, o):
        o = _lift(o)
        return Iterant(self.left - o.left, self.right - o.right)

    def __rsub__(self, o):
        return _lift(o) - self

    def __neg__(self):
        return Iterant(-self.left, -self.right)

    def __mul__(self, o):
        if isinstance(o, EtaElement):
            return NotImplemented
        o = _lift(o)
        return Iterant(self.left * o.left, self.right * o.right)

    __rmul__ = __mul__

    def shift(self) -> "Iterant":
        """``D[a, b] = [b, a]`` (the overbar)."""
        return Iterant(self.right, self.left)

    bar = shift

    def i_action(self) -> "Iterant":
        """``sigma D [a, b] = [-b, a]``."""
        return SIGMA * self.shift()

    def __eq__(self, o):
        if not isinstance(o, Iterant):
            try:
                o = _lift(o)
            except TypeError:
                return NotImplemented
        return _is_zero(self.left - o.left) and _is_zero(self.right - o.right)

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self):
        return f"[{self.left}, {self.right}]"


def _lift(x) -> Iterant:
    if isinstance(x, Iterant):
        return x
    if isinstance(x, (int, Fraction, GaussianRational, float, sympy.Basic)):
        return Iterant(x, x)
    raise TypeError(f"cannot treat {x!r} as an iterant")


ONE = Iterant(1, 1)
ZERO_IT = Iterant(0, 0)
SIGMA = Iterant(-1, 1)  # polarity; also written epsilon
EPSILON = SIGMA


def iterant_arithmetic(x: Iterant, y: Iterant, op: str) -> Iterant:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def spacetime(t, x) -> Iterant:
    """``t + x sigma = [t - x, t + x]``."""
    return Iterant(t - x, t + x)


# -- eta elements -------------------------------------------------------------------

@dataclass(frozen=True)
class EtaElement:
    """``A + B eta`` with ``eta eta = 1`` and ``eta Q = bar(Q) eta``."""

    a: Iterant
    b: Iterant

    def __mul__(self, o):
        o = _lift_eta(o)
        A, B, C, D = self.a, self.b, o.a, o.b
        return EtaElement(A * C + B * D.bar(), A * D + B * C.bar())

    def __rmul__(self, o):
        return _lift_eta(o) * self

    def __add__(self, o):
        o = _lift_eta(o)
        return EtaElement(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = _lift_eta(o)
        return EtaElement(self.a - o.a, self.b - o.b)

    def __neg__(self):
        return EtaElement(-self.a, -self.b)

    def conjugate(self) -> "EtaElement":
        """``bar(A) - B eta``; corresponds to the adjugate matrix."""
        return EtaElement(self.a.bar(), -self.b)

    def determinant(self) -> Iterant:
        return self.a * self.a.bar() - self.b * self.b.bar()

    def __eq__(self, o):
        try:
            o = _lift_eta(o)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"{self.a} + {self.b}η"


def _lift_eta(x) -> EtaElement:
    if isinstance(x, EtaElement):
        return x
    return EtaElement(_lift(x), Iterant(0, 0))


ETA = EtaElement(Iterant(0, 0), Iterant(1, 1))
UNIT = EtaElement(Iterant(1, 1), Iterant(0, 0))


def eta_multiply(p: EtaElement, q: EtaElement) -> EtaElement:
    return p * q


def to_matrix(p: EtaElement) -> list[list]:
    """``[a, d] + [b, c] eta -> [[a, b], [c, d]]``."""
    return [[p.a.left, p.b.left], [p.b.right, p.a.right]]


def from_matrix(m) -> EtaElement:
    (a, b), (c, d) = m
    return EtaElement(Iterant(a, d), Iterant(b, c))


def matmul2(x, y):
    return [[x[i][0] * y[0][j] + x[i][1] * y[1][j] for j in range(2)] for i in range(2)]


# -- quaternions ---------------------------------------------------------------------

def quaternion_units(alternative: bool = False) -> dict[str, EtaElement]:
    """``i = eps eta``, ``j = sqrt(-1) bar(eps)``, ``k = sqrt(-1) eta``.

    ``alternative`` uses ``j = sqrt(-1) eps`` and ``k = -sqrt(-1) eta``,
    which satisfies the same relations.
    """
    z = GaussianRational(0)
    zero = Iterant(z, z)
    eps = Iterant(GaussianRational(-1), GaussianRational(1))
    i = EtaElement(zero, eps)
    if alternative:
        j = EtaElement(eps * SQRT_M1, zero)
        k = EtaElement(zero, Iterant(-SQRT_M1, -SQRT_M1))
    else:
        j = EtaElement(eps.bar() * SQRT_M1, zero)
        k = EtaElement(zero, Iterant(SQRT_M1, SQRT_M1))
    return {"i": i, "j": j, "k": k}


def quaternion_check(alternative: bool = False) -> dict[str, bool]:
    q = quaternion_units(alternative)
    i, j, k = q["i"], q["j"], q["k"]
    minus = EtaElement(Iterant(GaussianRational(-1), GaussianRational(-1)),
                       Iterant(GaussianRational(0), GaussianRational(0)))
    return {
        "ii=-1": i * i == minus,
        "jj=-1": j * j == minus,
        "kk=-1": k * k == minus,
        "ijk=-1": i * j * k == minus,
        "ij=k": i * j == k,
        "jk=i": j * k == i,
        "ki=j": k * i == j,
        "ji=-k": j * i == -k,
    }


# -- Lorentz boosts -----------------------------------------------------------------

def _rational_sqrt(r: Fraction) -> Fraction | None:
    if r < 0:
        return None
    n, d = math.isqrt(r.numerator), math.isqrt(r.denominator)
    if n * n == r.numerator and d * d == r.denominator:
        return Fraction(n, d)
    return None


def boost_factor(v):
    """``k = sqrt((1 + v)/(1 - v))``: a Fraction when rational, else a sympy surd.

    Float ``v`` gives a float.
    """
    if isinstance(v, float):
        if abs(v) >= 1:
            raise ValueError("|v| must be < 1")
        return math.sqrt((1 + v) / (1 - v))
    v = Fraction(v)
    if abs(v) >= 1:
        raise ValueError("|v| must be < 1")
    r = (1 + v) / (1 - v)
    k = _rational_sqrt(r)
    if k is not None:
        return k
    return sympy.sqrt(sympy.Rational(r.numerator, r.denominator))


def lorentz_boost(v) -> Iterant:
    """``T(v) = [k, 1/k]``."""
    k = boost_factor(v)
    return Iterant(k, 1 / k)


def boost_apply(boost: Iterant, event: tuple) -> tuple:
    """Act on ``t + x sigma``; returns ``(t', x')``."""
    t, x = event
    out = boost * spacetime(t, x)
    tp = (out.left + out.right) / 2
    xp = (out.right - out.left) / 2
    if isinstance(tp, sympy.Basic) or isinstance(xp, sympy.Basic):
        tp, xp = sympy.nsimplify(sympy.simplify(tp)), sympy.nsimplify(sympy.simplify(xp))
    return tp, xp


def velocity_addition(v1, v2):
    v1, v2 = Fraction(v1), Fraction(v2)
    return (v1 + v2) / (1 + v1 * v2)


def pythagorean_velocity(k: Fraction) -> Fraction:
    """Velocity whose boost factor is the rational ``k`` (``v = (k^2-1)/(k^2+1)``)."""
    k = Fraction(k)
    if k <= 0:
        raise ValueError("k must be positive")
    return (k * k - 1) / (k * k + 1)


# -- permutation-diagonal decomposition ---------------------------------------------

def perm_matrix(perm: tuple[int, ...]) -> np.ndarray:
    """``[pi]`` with ``[pi]_{i, pi(i)} = 1`` (0-based)."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm!r} is not a permutation of 0..{n - 1}")
    m = np.zeros((n, n), dtype=object)
    m[:, :] = Fraction(0)
    for i, p in enumerate(perm):
        m[i, p] = Fraction(1)
    return m


def diag(v) -> np.ndarray:
    n = len(v)
    m = np.zeros((n, n), dtype=object)
    m[:, :] = Fraction(0)
    for i, x in enumerate(v):
        m[i, i] = Fraction(x) if not isinstance(x, (GaussianRational, sympy.Basic)) else x
    return m


def _exact(m) -> np.ndarray:
    a = np.array(m, dtype=object)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("need a square matrix")
    return np.vectorize(lambda x: x if isinstance(x, (Fraction, GaussianRational)) else Fraction(x),
                        otypes=[object])(a)


def perm_decompose(m, cap: int = 6) -> list[tuple[tuple, tuple]]:
    """All ``(v(M, pi), pi)`` with ``v_i = M[i, pi(i)]``."""
    a = _exact(m)
    n = a.shape[0]
    if n > cap:
        raise ValueError(f"n = {n} exceeds enumeration cap {cap}")
    return [(tuple(a[i, p[i]] for i in range(n)), p)
            for p in itertools.permutations(range(n))]


def reconstruct(parts, n: int) -> np.ndarray:
    """``(1/(n-1)!) sum Delta[M]_pi [pi]``."""
    acc = np.zeros((n, n), dtype=object)
    acc[:, :] = Fraction(0)
    for v, p in parts:
        acc = acc + diag(v).dot(perm_matrix(p))
    return acc * Fraction(1, math.factorial(n - 1))


def coverage_counts(n: int) -> np.ndarray:
    """How many permutations place each entry ``(i, j)``; always ``(n-1)!``."""
    c = np.zeros((n, n), dtype=int)
    for p in itertools.permutations(range(n)):
        for i in range(n):
            c[i, p[i]] += 1
    return c


@dataclass(frozen=True)
class ConjugationReport:
    lhs: np.ndarray  # [pi] Delta(v)
    rhs: np.ndarray  # Delta(v^pi) [pi]

    @property
    def ok(self) -> bool:
        return bool(np.all(self.lhs == self.rhs))


def perm_conjugation_check(v, perm: tuple[int, ...]) -> ConjugationReport:
    """``[pi] Delta(v) = Delta(v^pi) [pi]`` with ``(v^pi)_i = v_{pi(i)}``."""
    if len(v) != len(perm):
        raise ValueError("vector and permutation sizes differ")
    P = perm_matrix(perm)
    vpi = [v[perm[i]] for i in range(len(v))]
    return ConjugationReport(P.dot(diag(v)), diag(vpi).dot(P))


# -- I/O -----------------------------------------------------------------------------

def read_matrix_csv(text: str) -> np.ndarray:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    return _exact([[Fraction(c.strip()) for c in r] for r in rows])


def write_matrix_csv(m) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in np.asarray(m, dtype=object):
        w.writerow([str(x) for x in row])
    return buf.getvalue()


def decomposition_json(parts) -> str:
    return json.dumps([{"perm": [p + 1 for p in perm], "diag": [str(x) for x in v]}
                       for v, perm in parts], indent=2)

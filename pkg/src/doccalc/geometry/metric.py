"""Numeric metric fields: Christoffel symbols, parallel transport, Lagrangian brackets."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
import sympy


class SingularMetricError(ValueError):
    pass


def _symbols(n: int):
    return sympy.symbols(" ".join(f"x{i}" for i in range(1, n + 1)), seq=True)


@dataclass
class MetricField:
    """An ``n x n`` symmetric metric ``g_ij(x)``.

    Build one from sympy expressions (exact partials) with :meth:`from_exprs`
    or :meth:`from_text`, or from a callable returning an ``(n, n)`` array.
    Callable metrics may supply ``partials(x) -> dg[k, i, j]``; otherwise
    partials come from central differences with Richardson extrapolation.
    """

    n: int
    func: Callable[[np.ndarray], np.ndarray]
    partials: Callable[[np.ndarray], np.ndarray] | None = None
    det_margin: float = 1e-12
    h: float = 1e-5
    exprs: list | None = field(default=None, repr=False)

    @classmethod
    def from_exprs(cls, entries, **kw) -> "MetricField":
        """``entries`` is an ``n x n`` nested list of sympy expressions or strings in x1..xn."""
        n = len(entries)
        xs = _symbols(n)
        loc = {str(s): s for s in xs}
        mat = [[sympy.sympify(e, locals=loc) if isinstance(e, str) else sympy.sympify(e)
                for e in row] for row in entries]
        if any(len(row) != n for row in mat):
            raise ValueError("metric must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if sympy.simplify(mat[i][j] - mat[j][i]) != 0:
                    raise ValueError(f"metric is not symmetric at ({i + 1},{j + 1})")
        gf = sympy.lambdify([xs], sympy.Matrix(mat), "numpy")
        dmat = [[[sympy.diff(mat[i][j], xs[k]) for j in range(n)] for i in range(n)]
                for k in range(n)]
        df = sympy.lambdify([xs], sympy.Array(dmat), "numpy")
        return cls(
            n,
            lambda x: np.asarray(gf(list(x)), dtype=float),
            lambda x: np.asarray(df(list(x)), dtype=float),
            exprs=mat,
            **kw,
        )

    @classmethod
    def from_text(cls, text: str, **kw) -> "MetricField":
        """Parse ``n`` followed by ``n*n`` polynomial strings in x1..xn (row-major).

        Entries are separated by newlines or semicolons; ``#`` starts a comment.
        """
        tokens = []
        for line in text.splitlines():
            line = line.split("#", 1)[0]
            tokens.extend(t.strip() for t in line.split(";") if t.strip())
        if not tokens:
            raise ValueError("empty metric description")
        n = int(tokens[0])
        body = tokens[1:]
        if len(body) != n * n:
            raise ValueError(f"expected {n * n} metric entries, got {len(body)}")
        rows = [body[i * n:(i + 1) * n] for i in range(n)]
        return cls.from_exprs(rows, **kw)

    @classmethod
    def load(cls, path: str | Path, **kw) -> "MetricField":
        return cls.from_text(Path(path).read_text(), **kw)

    # -- evaluation ----------------------------------------------------------
    def at(self, x: Sequence[float]) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        gm = np.asarray(self.func(x), dtype=float).reshape(self.n, self.n)
        if not np.allclose(gm, gm.T, rtol=1e-12, atol=1e-12):
            raise ValueError("metric is not symmetric at evaluation point")
        if abs(np.linalg.det(gm)) <= self.det_margin:
            raise SingularMetricError(f"metric is singular at {x.tolist()}")
        return gm

    def inverse(self, x) -> np.ndarray:
        return np.linalg.inv(self.at(x))

    def derivatives(self, x) -> np.ndarray:
        """``out[k, i, j] = partial_k g_ij`` at ``x``."""
        x = np.asarray(x, dtype=float)
        if self.partials is not None:
            return np.asarray(self.partials(x), dtype=float).reshape(self.n, self.n, self.n)
        return _richardson_partials(self.func, x, self.n, self.h)


def _central(func, x, k, h):
    e = np.zeros_like(x)
    e[k] = h
    return (np.asarray(func(x + e), float) - np.asarray(func(x - e), float)) / (2 * h)


def _richardson_partials(func, x, n, h):
    out = np.empty((n, n, n))
    for k in range(n):
        coarse = _central(func, x, k, h)
        fine = _central(func, x, k, h / 2)
        out[k] = (4 * fine - coarse) / 3
    return out


# -- Christoffel symbols ----------------------------------------------------------

@dataclass(frozen=True)
class Christoffel:
    """Connection coefficients at a point.

    ``lowered[s, a, b] = (1/2)(d_a g_sb + d_b g_sa - d_s g_ab)`` is the single
    stored array; the accessors expose it in two index conventions.
    """

    lowered: np.ndarray
    raised: np.ndarray  # raised[s, a, b] = Gamma^s_ab
    residual: float  # max |d_k g_ij - g_sj Gamma^s_ik - g_is Gamma^s_jk|

    def first_kind(self, i: int, j: int, k: int) -> float:
        """Convention symmetric in ``(i, j)``: ``(1/2)(d_i g_jk + d_j g_ik - d_k g_ij)``."""
        return float(self.lowered[k, i, j])

    def first_kind_alt(self, i: int, j: int, k: int) -> float:
        """Convention symmetric in ``(j, k)``: ``(1/2)(d_k g_ij - d_i g_jk + d_j g_ik)``."""
        return float(self.lowered[i, j, k])

    def second_kind(self, k: int, i: int, j: int) -> float:
        """``Gamma^k_ij``."""
        return float(self.raised[k, i, j])

    @property
    def default(self) -> np.ndarray:
        """Array ``G[i, j, k]`` in the ``(i, j)``-symmetric convention."""
        return np.transpose(self.lowered, (1, 2, 0))


def christoffel_numeric(m: MetricField, x, tol: float = 1e-9) -> Christoffel:
    """Christoffel symbols of ``m`` at ``x`` (0-based indices in the arrays).

    Raises ``ArithmeticError`` if the metric-compatibility residual exceeds
    ``tol`` times the scale of the derivatives.
    """
    gm = m.at(x)
    d = m.derivatives(x)  # d[k, i, j]
    low = 0.5 * (np.einsum("asb->sab", d) + np.einsum("bsa->sab", d) - d)
    ginv = np.linalg.inv(gm)
    up = np.einsum("st,tab->sab", ginv, low)
    recon = np.einsum("sj,sik->kij", gm, up) + np.einsum("is,sjk->kij", gm, up)
    residual = float(np.max(np.abs(d - recon))) if d.size else 0.0
    scale = max(1.0, float(np.max(np.abs(d))) if d.size else 0.0)
    if residual > tol * scale:
        raise ArithmeticError(f"metric compatibility residual {residual:.3e} exceeds tolerance")
    return Christoffel(low, up, residual)


def parallel_invariance_check(m: MetricField, x, a, dx) -> float:
    """Change in ``<A, A>`` after transporting ``A`` from ``x`` to ``x + dx``.

    ``delta A^k = -Gamma^k_ij A^i dx^j``; the result is second order in ``|dx|``.
    """
    x = np.asarray(x, float)
    a = np.asarray(a, float)
    dx = np.asarray(dx, float)
    gam = christoffel_numeric(m, x).raised
    a2 = a - np.einsum("kij,i,j->k", gam, a, dx)
    before = a @ m.at(x) @ a
    after = a2 @ m.at(x + dx) @ a2
    return float(after - before)


@dataclass(frozen=True)
class BracketReport:
    point: tuple
    bracket: np.ndarray  # {x_i, xdot_j}
    expected: np.ndarray  # g_ij / m
    max_error: float

    @property
    def ok(self) -> bool:
        return self.max_error < 1e-8 * max(1.0, float(np.max(np.abs(self.expected))))


def lagrangian_bracket_check(m: MetricField, points, mass: float = 1.0,
                             h: float = 1e-3) -> list[BracketReport]:
    """``{x_i, xdot_j}`` through canonical variables at each sample point.

    The kinetic Lagrangian is ``L = (mass/2) g^{ij} xdot_i xdot_j`` (inverse
    metric on lower-index velocities), so ``p = mass * g^{-1} xdot``.  The
    velocity is recovered from the momentum by solving that linear system and
    the bracket ``{x_i, f} = d f / d p_i`` is taken by central differences in
    ``p`` (exact up to rounding since ``xdot`` is linear in ``p``).
    """
    if mass <= 0:
        raise ValueError("mass must be positive")
    out = []
    for x in points:
        x = np.asarray(x, float)
        gm = m.at(x)
        kin = mass * np.linalg.inv(gm)  # p = kin @ xdot

        def velocity(p):
            return np.linalg.solve(kin, p)

        p0 = np.ones(m.n)
        br = np.empty((m.n, m.n))
        for i in range(m.n):
            e = np.zeros(m.n)
            e[i] = h
            br[i] = (velocity(p0 + e) - velocity(p0 - e)) / (2 * h)
        expected = gm / mass
        out.append(BracketReport(tuple(x.tolist()), br, expected,
                                 float(np.max(np.abs(br - expected)))))
    return out


def euclidean(n: int) -> MetricField:
    return MetricField.from_exprs([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def polar() -> MetricField:
    """``diag(1, r^2)`` in coordinates ``(x1, x2) = (r, theta)``."""
    return MetricField.from_exprs([["1", "0"], ["0", "x1**2"]])

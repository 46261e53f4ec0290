"""Delay recursion obtained from ``[X, DX] = J^(2n+1) k`` with ``X = J^n Y``."""

from __future__ import annotations

from dataclasses import dataclass, field


class SingularStart(ValueError):
    """The first denominator ``y_1 - 2 y_0`` vanishes."""


@dataclass(frozen=True)
class ChaosConfig:
    k: float
    initial: tuple[float, ...]  # y_0 .. y_n
    maxsteps: int = 100
    guard: float = 1e-12
    bound: float = 1e12
    period_tol: float = 1e-9
    max_period: int = 64

    def __post_init__(self):
        if len(self.initial) < 2:
            raise ValueError("need at least y_0 and y_1 (n >= 1)")
        if self.guard <= 0:
            raise ValueError("guard must be positive")

    @property
    def n(self) -> int:
        return len(self.initial) - 1


@dataclass
class ChaosResult:
    orbit: list[float]
    classification: str  # periodic, bounded, unbounded, singular
    period: int | None = None
    residuals: list[float] = field(default_factory=list)
    max_scaled_residual: float = 0.0


def step_value(window, k: float, guard: float) -> tuple[float, float]:
    """Next value from a window ``y_t .. y_{t+n}``; returns (value, denominator)."""
    den = window[1] - 2 * window[0]
    if abs(den) < guard:
        raise ZeroDivisionError
    return (k - window[-1] * window[0]) / den, den


def _period(orbit: list[float], n: int, tol: float, pmax: int) -> int | None:
    w = n + 1
    for p in range(1, pmax + 1):
        if len(orbit) < w + p:
            break
        tail = orbit[-w:]
        prev = orbit[-w - p:-p]
        if all(abs(a - b) <= tol * max(1.0, abs(a)) for a, b in zip(tail, prev)):
            return p
    return None


def chaos_orbit(c: ChaosConfig) -> ChaosResult:
    """Iterate ``y_{t+n+1} = (k - y_{t+n} y_t) / (y_{t+1} - 2 y_t)``.

    Every emitted value is checked against the undivided form
    ``y_{t+n+1}(y_{t+1} - 2 y_t) = k - y_{t+n} y_t``; the worst residual scaled
    by ``max(1, |k|, y^2)`` is reported.
    """
    n = c.n
    y = [float(v) for v in c.initial]
    if abs(y[1] - 2 * y[0]) < c.guard:
        raise SingularStart(f"singular start: y1 = {y[1]} equals 2*y0")
    residuals = []
    worst = 0.0
    cls = None
    for t in range(c.maxsteps):
        window = y[t:t + n + 1]
        try:
            nxt, den = step_value(window, c.k, c.guard)
        except ZeroDivisionError:
            cls = "singular"
            break
        res = abs(nxt * den - (c.k - window[-1] * window[0]))
        scale = max(1.0, abs(c.k), max(abs(v) for v in window + [nxt]) ** 2)
        residuals.append(res)
        worst = max(worst, res / scale)
        y.append(nxt)
        if abs(nxt) > c.bound:
            cls = "unbounded"
            break
    period = None
    if cls is None:
        period = _period(y, n, c.period_tol, c.max_period)
        cls = "periodic" if period else "bounded"
    return ChaosResult(y, cls, period, residuals, worst)


def symbolic_recursion_check(n: int) -> bool:
    """Rederive the recursion in the DOC algebra.

    With ``X = J^n Y`` and commuting values of ``Y`` at all times,
    ``[X, DX]`` must equal ``J^(2n+1) (Y^(n+1)(Y' - Y) - (Y^(n+1) - Y^(n)) Y)``
    where ``Y^(m)`` is ``Y`` primed ``m`` times.
    """
    from ..doc import commuting_series_table, doc_derivative
    from ..ncalg import FREE, Expression, atom, commutator, normalize

    table = commuting_series_table(FREE, "Y")
    yat = atom("Y")
    x = Expression.of(yat, jpower=n)
    lhs = commutator(x, doc_derivative(x, table), table)

    def yp(m):
        return Expression.of(yat.prime(m))

    body = yp(n + 1) * (yp(1) - yp(0)) - (yp(n + 1) - yp(n)) * yp(0)
    rhs = normalize(Expression.of(jpower=2 * n + 1) * body, table)
    return lhs == rhs

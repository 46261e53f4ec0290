"""Brownian walkers with step sqrt(k tau) and the half-half diffusion stencil."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

BLOCK = 4096  # walkers per RNG stream


@dataclass(frozen=True)
class WalkConfig:
    k: float = 1.0
    tau: float = 1.0
    steps: int = 1000
    walkers: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if self.tau <= 0:
            raise ValueError("tau must be positive")
        if self.steps <= 0 or self.walkers <= 0:
            raise ValueError("need at least one walker and one step")

    @property
    def delta(self) -> float:
        return math.sqrt(self.k * self.tau)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class WalkRun:
    config: WalkConfig
    times: np.ndarray  # t = n * tau, n = 0..steps
    msd: np.ndarray
    mean: np.ndarray
    slope: float  # least-squares fit of msd = slope * t
    trajectories: np.ndarray | None = field(default=None, repr=False)

    @property
    def diffusion_constant(self) -> float:
        return self.slope / 2


def _block_signs(seed: int, block: int, steps: int, size: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))
    # always draw a full block so a walker's path does not depend on the ensemble size
    bits = rng.integers(0, 2, size=(steps, BLOCK), dtype=np.int8)[:, :size]
    return 2 * bits - 1


def brownian_ensemble(c: WalkConfig, keep_trajectories: int = 0) -> WalkRun:
    """Simulate ``c.walkers`` independent +-Delta walks.

    Walkers are split into fixed blocks of :data:`BLOCK`; each block draws from
    its own generator seeded by ``(seed, block index)``, so results do not
    depend on how blocks are scheduled.  Positions are tracked in units of
    Delta as integers and only scaled at the end, which keeps the one-step MSD
    exactly ``Delta**2``.  ``keep_trajectories`` retains that many walkers'
    paths (from the first block).
    """
    sq = np.zeros(c.steps + 1, dtype=np.float64)
    tot = np.zeros(c.steps + 1, dtype=np.float64)
    kept = None
    nblocks = -(-c.walkers // BLOCK)
    for b in range(nblocks):
        size = min(BLOCK, c.walkers - b * BLOCK)
        signs = _block_signs(c.seed, b, c.steps, size)
        pos = np.cumsum(signs, axis=0, dtype=np.int32)
        sq[1:] += np.einsum("ij,ij->i", pos, pos, dtype=np.float64)
        tot[1:] += pos.sum(axis=1, dtype=np.float64)
        if b == 0 and keep_trajectories:
            m = min(keep_trajectories, size)
            kept = np.vstack([np.zeros((1, m)), pos[:, :m]]) * c.delta
    d2 = c.delta ** 2
    msd = sq * d2 / c.walkers
    mean = tot * c.delta / c.walkers
    times = np.arange(c.steps + 1) * c.tau
    slope = float(times @ msd / (times @ times))
    return WalkRun(c, times, msd, mean, slope, kept)


# -- finite-difference diffusion ------------------------------------------------

def diffusion_fd_evolve(p, steps: int, boundary: str = "periodic"):
    """Apply ``P(x, t+tau) = P(x-Delta, t)/2 + P(x+Delta, t)/2`` ``steps`` times.

    ``p`` may hold floats or :class:`fractions.Fraction` (exact mode).  With
    ``boundary="absorbing"`` mass that leaves the grid is lost.
    """
    if boundary not in ("periodic", "absorbing"):
        raise ValueError("boundary must be 'periodic' or 'absorbing'")
    exact = any(isinstance(v, Fraction) for v in p)
    arr = np.array(list(p), dtype=object if exact else float)
    half = Fraction(1, 2) if exact else 0.5
    zero = Fraction(0) if exact else 0.0
    for _ in range(steps):
        if boundary == "periodic":
            left, right = np.roll(arr, 1), np.roll(arr, -1)
        else:
            left = np.concatenate([[zero], arr[:-1]])
            right = np.concatenate([arr[1:], [zero]])
        arr = (left + right) * half
    return arr


def delta_grid(size: int, exact: bool = True):
    """Unit mass at the centre cell of a grid of odd ``size``."""
    if size % 2 == 0:
        raise ValueError("use an odd grid so the spike sits at the centre")
    one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
    g = [zero] * size
    g[size // 2] = one
    return g


def binomial_profile(steps: int, size: int) -> list[Fraction]:
    """Closed form after ``steps`` half-half steps from a centred spike (no wrap)."""
    centre = size // 2
    out = [Fraction(0)] * size
    for m in range(steps + 1):
        x = centre + 2 * m - steps
        if 0 <= x < size:
            out[x] += Fraction(math.comb(steps, m), 2 ** steps)
    return out


def variance(p, spacing: float = 1.0) -> float:
    xs = (np.arange(len(p)) - len(p) // 2) * spacing
    w = np.array([float(v) for v in p])
    mu = xs @ w / w.sum()
    return float(((xs - mu) ** 2) @ w / w.sum())

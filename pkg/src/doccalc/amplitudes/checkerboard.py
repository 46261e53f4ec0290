"""Checkerboard Dirac amplitudes on a 1+1 lightcone lattice.

``psi_L(a, b)`` is the amplitude to arrive at ``(a, b)`` by a step in the
``b`` direction and ``psi_R(a, b)`` by a step in the ``a`` direction.  Each
change of direction contributes a factor ``i``.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from math import comb

from ..ncalg.gaussian import GaussianRational

ZERO = GaussianRational(0)
I = GaussianRational(0, 1)
MAX_HORIZON = 2000


@dataclass
class LightconeLattice:
    """Amplitudes on ``{(a, b) : a, b >= 0, a + b <= horizon}``.

    The source is the pair ``(psi_L(0,0), psi_R(0,0))``; the default is a
    single right-mover.
    """

    horizon: int
    source: tuple = (GaussianRational(0), GaussianRational(1))
    left: dict = field(default_factory=dict)
    right: dict = field(default_factory=dict)

    def psi(self, a: int, b: int) -> tuple[GaussianRational, GaussianRational]:
        return self.left[(a, b)], self.right[(a, b)]

    def points(self):
        return sorted(self.left)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a", "b", "re_psi_L", "im_psi_L", "re_psi_R", "im_psi_R"])
        for a, b in self.points():
            pl, pr = self.psi(a, b)
            w.writerow([a, b, pl.re, pl.im, pr.re, pr.im])
        return buf.getvalue()


def checkerboard_evolve(horizon: int, source=None) -> LightconeLattice:
    """Fill the lattice by

    ``psi_L(a, b+1) = psi_L(a, b) + i psi_R(a, b)`` and
    ``psi_R(a+1, b) = psi_R(a, b) + i psi_L(a, b)``.

    Boundary values ``psi_L(a, 0)`` for ``a > 0`` and ``psi_R(0, b)`` for
    ``b > 0`` are zero: those states cannot be reached from the origin.
    """
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    if horizon > MAX_HORIZON:
        raise MemoryError(f"horizon {horizon} exceeds cap {MAX_HORIZON}")
    src = (GaussianRational(0), GaussianRational(1)) if source is None else tuple(
        GaussianRational.coerce(s) for s in source)
    lat = LightconeLattice(horizon, src)
    L, R = lat.left, lat.right
    for s in range(horizon + 1):
        for a in range(s + 1):
            b = s - a
            if a == 0 and b == 0:
                L[0, 0], R[0, 0] = src
                continue
            L[a, b] = L[a, b - 1] + I * R[a, b - 1] if b > 0 else ZERO
            R[a, b] = R[a - 1, b] + I * L[a - 1, b] if a > 0 else ZERO
    return lat


def checkerboard_path_oracle(target: tuple[int, int], entry: str, source=None,
                             cap: int = 20) -> GaussianRational:
    """Sum ``i^corners`` over monotone paths from the origin into ``target``.

    ``entry`` is ``"L"`` (last step along ``b``) or ``"R"`` (last step along
    ``a``).  Each source component starts with a virtual incoming direction,
    and a change from it to the first step counts as a corner.
    """
    a, b = target
    if a < 0 or b < 0:
        raise ValueError("target must lie in the forward lightcone")
    if a + b > cap:
        raise ValueError(f"a + b = {a + b} exceeds enumeration cap {cap}")
    if entry not in ("L", "R"):
        raise ValueError("entry must be 'L' or 'R'")
    src = (GaussianRational(0), GaussianRational(1)) if source is None else tuple(
        GaussianRational.coerce(s) for s in source)
    n = a + b
    total = ZERO
    for start_dir, amp in zip("LR", src):
        if not amp:
            continue
        if n == 0:
            if start_dir == entry:
                total = total + amp
            continue
        # choose which of the n steps go along a ("R" steps)
        for ra in itertools.combinations(range(n), a):
            rset = set(ra)
            steps = ["R" if t in rset else "L" for t in range(n)]
            if steps[-1] != entry:
                continue
            seq = [start_dir] + steps
            corners = sum(1 for x, y in zip(seq, seq[1:]) if x != y)
            total = total + amp * I ** corners
    return total


def path_count(a: int, b: int) -> int:
    return comb(a + b, a)

"""Sign-vector magnetic field model and the discrete Lorentz-force step."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import sympy


# -- sign vectors ------------------------------------------------------------------

@dataclass(frozen=True)
class SignSeries:
    """``eps[t, i]`` in {-1, +1} for three spatial directions."""

    eps: np.ndarray
    k: float = 1.0

    def __post_init__(self):
        e = np.asarray(self.eps)
        if e.ndim != 2 or e.shape[1] != 3:
            raise ValueError("sign series must have shape (steps, 3)")
        if not np.all(np.isin(e, (-1, 1))):
            raise ValueError("entries must be +1 or -1")
        object.__setattr__(self, "eps", e.astype(np.int64))

    @classmethod
    def random(cls, steps: int, k: float = 1.0, seed: int = 0) -> "SignSeries":
        rng = np.random.default_rng(seed)
        return cls(rng.choice((-1, 1), size=(steps, 3)), k)


@dataclass
class SignFieldRun:
    B: np.ndarray  # B[t] = eps[t+1] x eps[t]
    X: np.ndarray  # X[t+1] = X[t] + eps[t] sqrt(k)
    note: str = "DX_i = J eps_i sqrt(k), so B = (1/k) DX x DX = J^2 eps' x eps"


def sign_field_series(s: SignSeries, x0=(0.0, 0.0, 0.0)) -> SignFieldRun:
    e = s.eps
    B = np.cross(e[1:], e[:-1])
    X = np.vstack([np.asarray(x0, float), np.asarray(x0, float) + np.cumsum(e, axis=0) * math.sqrt(s.k)])
    return SignFieldRun(B, X)


def scalar_model_feasible(k=None) -> bool:
    """Whether commuting scalar increments can satisfy the two-variable relations.

    Solves ``a^2 = k``, ``b^2 = k``, ``a b = 0`` for real ``a = X' - X`` and
    ``b = Y' - Y``; ``k`` defaults to a symbolic nonzero real.
    """
    a, b = sympy.symbols("a b", real=True)
    kk = sympy.Symbol("k", real=True, nonzero=True) if k is None else sympy.nsimplify(k)
    sols = sympy.solve([a ** 2 - kk, b ** 2 - kk, a * b], [a, b], dict=True)
    return bool(sols)


# -- discrete electromagnetism -----------------------------------------------------

@dataclass(frozen=True)
class EMState:
    X: np.ndarray
    dX: np.ndarray
    E: np.ndarray
    B: np.ndarray
    lam: float = 0.0
    tol: float = 1e-9

    def __post_init__(self):
        for name in ("X", "dX", "E", "B"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,):
                raise ValueError(f"{name} must be a 3-vector")
            object.__setattr__(self, name, v)
        scale = max(1.0, float(np.linalg.norm(self.dX) * max(np.linalg.norm(self.E), np.linalg.norm(self.B))),
                    float(np.linalg.norm(self.E) * np.linalg.norm(self.B)))
        for label, dot in (("E.dX", self.E @ self.dX), ("B.dX", self.B @ self.dX), ("E.B", self.E @ self.B)):
            if abs(dot) > self.tol * scale:
                raise ValueError(f"perpendicularity violated: {label} = {dot:.3e}")


@dataclass(frozen=True)
class EMStep:
    X: np.ndarray  # X + dX'
    dX: np.ndarray  # dX'
    lam: float
    residual: float


def em_lorentz_step(st: EMState) -> EMStep:
    """``dX' = dX + E + dX x B`` and reconstruction of ``B`` from the two velocities.

    ``lambda`` solves ``E x dX = lambda B`` in the least-squares sense; the
    residual is ``|B - dX' x dX / (lambda + |dX|^2)|``.
    """
    dX, E, B = st.dX, st.E, st.B
    dxn = dX + E + np.cross(dX, B)
    exd = np.cross(E, dX)
    bb = float(B @ B)
    if bb == 0:
        if np.linalg.norm(exd) > st.tol:
            raise ValueError("B = 0 while E x dX != 0: lambda undefined")
        lam = 0.0
    else:
        lam = float(exd @ B / bb)
    den = lam + float(dX @ dX)
    if bb == 0:
        residual = float(np.linalg.norm(np.cross(dxn, dX)))
    else:
        residual = float(np.linalg.norm(B - np.cross(dxn, dX) / den))
    # dX' is generally not perpendicular to E, so it is returned as plain vectors.
    return EMStep(st.X + dxn, dxn, lam, residual)


def random_em_state(rng: np.random.Generator) -> EMState:
    """Random mutually perpendicular ``dX``, ``B`` and ``E`` parallel to ``dX x B``."""
    dX = rng.normal(size=3)
    u = rng.normal(size=3)
    B = np.cross(dX, u)
    B *= rng.uniform(0.2, 2.0) / np.linalg.norm(B)
    e_dir = np.cross(dX, B)
    E = rng.uniform(-1, 1) * e_dir / np.linalg.norm(e_dir)
    return EMState(rng.normal(size=3), dX, E, B)

"""Complex three-point walk and a spectral Schroedinger reference.

The stencil ``psi(x) <- (i/2) psi(x-D) + (1-i) psi(x) + (i/2) psi(x+D)`` is an
explicit Euler step of ``dpsi/dt = (i D^2 / 2 tau) d^2 psi/dx^2``.  It is not
unitary: a Fourier mode with ``kD = theta`` is multiplied by
``1 - i(1 - cos theta)``, whose modulus reaches ``sqrt(5)`` at the Nyquist
frequency.  Only short-time consistency is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

STENCIL = (0.5j, 1 - 1j, 0.5j)


@dataclass(frozen=True)
class ComplexField1D:
    psi: np.ndarray
    spacing: float
    tau: float
    t: float = 0.0

    def __post_init__(self):
        if not np.all(np.isfinite(self.psi)):
            raise ValueError("field contains non-finite values")

    @property
    def k(self) -> float:
        return self.spacing ** 2 / self.tau

    def norm(self) -> float:
        return float(np.sqrt(self.spacing) * np.linalg.norm(self.psi))


def quantum_walk_evolve(f: ComplexField1D, steps: int) -> ComplexField1D:
    """Apply the three-point stencil ``steps`` times on a periodic grid."""
    a, b, c = STENCIL
    psi = np.asarray(f.psi, dtype=complex)
    for _ in range(steps):
        psi = a * np.roll(psi, 1) + b * psi + c * np.roll(psi, -1)
    return replace(f, psi=psi, t=f.t + steps * f.tau)


def spectral_reference(psi0: np.ndarray, spacing: float, k: float, t: float) -> np.ndarray:
    """Exact periodic solution of ``dpsi/dt = (i k / 2) d^2 psi/dx^2`` via FFT."""
    n = len(psi0)
    wav = 2 * np.pi * np.fft.fftfreq(n, d=spacing)
    return np.fft.ifft(np.fft.fft(psi0) * np.exp(-0.5j * k * wav ** 2 * t))


def gaussian(x: np.ndarray, sigma: float = 1.0, x0: float = 0.0, k0: float = 0.0) -> np.ndarray:
    return np.exp(-((x - x0) ** 2) / (2 * sigma ** 2) + 1j * k0 * x)


@dataclass(frozen=True)
class RefinementLevel:
    spacing: float
    tau: float
    steps: int
    l2_error: float
    norm_drift: float  # |psi_T| / |psi_0| - 1


def refinement_study(levels: int = 3, length: float = 16.0, points: int = 64,
                     k: float = 1.0, base_steps: int = 2, sigma: float = 1.0,
                     ref_factor: int = 4) -> list[RefinementLevel]:
    """Stencil error against a fine spectral reference on nested grids.

    Level ``l`` halves the spacing and quarters ``tau`` so that
    ``spacing**2 / tau = k`` stays fixed; the end time is the same on every
    level.  The reference lives on a grid ``ref_factor`` times finer than the
    finest level and is sampled at each level's nodes.
    """
    d0 = length / points
    tau0 = d0 ** 2 / k
    t_end = base_steps * tau0
    nref = points * 2 ** (levels - 1) * ref_factor
    xref = -length / 2 + np.arange(nref) * (length / nref)
    ref = spectral_reference(gaussian(xref, sigma), length / nref, k, t_end)
    out = []
    for lev in range(levels):
        n = points * 2 ** lev
        d = length / n
        tau = d ** 2 / k
        steps = base_steps * 4 ** lev
        x = -length / 2 + np.arange(n) * d
        f0 = ComplexField1D(gaussian(x, sigma), d, tau)
        f = quantum_walk_evolve(f0, steps)
        stride = nref // n
        err = np.sqrt(d) * np.linalg.norm(f.psi - ref[::stride])
        out.append(RefinementLevel(d, tau, steps, float(err), f.norm() / f0.norm() - 1))
    return out


# -- Planck numbers --------------------------------------------------------------

@dataclass(frozen=True)
class PlanckNumbers:
    M: float
    L: float
    T: float
    residual: float  # |L^2/T - hbar/M| / (hbar/M)
    jones_mass: float


def planck_numbers(hbar: float, c: float, G: float) -> PlanckNumbers:
    if min(hbar, c, G) <= 0:
        raise ValueError("hbar, c and G must be positive")
    M = np.sqrt(hbar * c / G)
    L = hbar / (M * c)
    T = hbar / (M * c ** 2)
    ref = hbar / M
    return PlanckNumbers(float(M), float(L), float(T), float(abs(L ** 2 / T - ref) / ref),
                         float(0.5 * np.sqrt(hbar * c / G)))


def si_planck() -> PlanckNumbers:
    from scipy.constants import G, c, hbar
    return planck_numbers(hbar, c, G)


def compton_residual(m: float, hbar: float, c: float) -> float:
    """Relative ``|hbar/m - L_C^2/T_C|`` with ``L_C = hbar/(mc)``, ``T_C = hbar/(mc^2)``."""
    if m <= 0:
        raise ValueError("mass must be positive")
    lc = hbar / (m * c)
    tc = hbar / (m * c ** 2)
    return abs(hbar / m - lc ** 2 / tc) / (hbar / m)


def jones_mass_symbolic() -> bool:
    """True when ``(1/2) sqrt(hbar c / G) - M/2`` simplifies to zero."""
    import sympy

    hbar, c, G = sympy.symbols("hbar c G", positive=True)
    M = sympy.sqrt(hbar * c / G)
    return sympy.simplify(sympy.Rational(1, 2) * sympy.sqrt(hbar * c / G) - M / 2) == 0

"""Numeric walks and recursions."""

from .brownian import (
    BLOCK,
    WalkConfig,
    WalkRun,
    binomial_profile,
    brownian_ensemble,
    delta_grid,
    diffusion_fd_evolve,
    variance,
)
from .chaos import (
    ChaosConfig,
    ChaosResult,
    SingularStart,
    chaos_orbit,
    step_value,
    symbolic_recursion_check,
)
from .fields import (
    EMState,
    EMStep,
    SignFieldRun,
    SignSeries,
    em_lorentz_step,
    random_em_state,
    scalar_model_feasible,
    sign_field_series,
)
from .quantum import (
    STENCIL,
    ComplexField1D,
    PlanckNumbers,
    RefinementLevel,
    compton_residual,
    gaussian,
    jones_mass_symbolic,
    planck_numbers,
    quantum_walk_evolve,
    refinement_study,
    si_planck,
    spectral_reference,
)

"""Backgrounds, connections and brackets."""

from .backgrounds import (
    TABLES,
    BackgroundSpec,
    F,
    Dg,
    Kind,
    background,
    commuting_coordinates_table,
    dA,
    dg,
    flat_table,
    g,
    gauge_table,
    lorentz_table,
    metric_table,
    named_table,
    var,
)
from .metric import (
    BracketReport,
    Christoffel,
    MetricField,
    SingularMetricError,
    christoffel_numeric,
    euclidean,
    lagrangian_bracket_check,
    parallel_invariance_check,
    polar,
)
from .poisson import (
    PolyPhaseFunction,
    defect_formula,
    divergence,
    hamiltonian_flow,
    phase_symbols,
    poisson_bracket,
    poisson_leibniz_defect,
    random_poly,
    time_derivative,
)
from .symbolic import (
    LorentzReport,
    SymmetryReport,
    bianchi_cyclic,
    bianchi_sum,
    christoffel_atom_form,
    curvature_operator,
    field_atom,
    gauge_curvature,
    gauge_curvature_expected,
    levi_civita_expected,
    levi_civita_index_free,
    levi_civita_nested,
    lorentz_ansatz,
    lorentz_force_consistency,
    metric_symmetry,
)

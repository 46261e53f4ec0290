"""Commutation tables for the flat, gauge and metric backgrounds.

Atom families used here (see :mod:`doccalc.ncalg.atoms`)::

    X_i     coordinate            P_i    momentum
    A_i     gauge potential       dA_ij  partial_i A_j
    g_ij    metric (symmetric)    dg_ijk nabla_i g_jk
    Dg_ij   D g_ij                Xd_i   D X_i
    Xdd_i   D^2 X_i               E_i, F_ij  fields

Metric and derivative atoms store their symmetric index pair sorted, so
``g21`` and ``g12`` are the same atom.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..ncalg import (
    FREE,
    CommutationTable,
    Expression,
    atom,
    delta_rule,
    named_rule,
    zero_rule,
)


class Kind(Enum):
    FLAT = "flat"
    GAUGE = "gauge"
    METRIC = "metric"


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i <= j else (j, i)


def g(i: int, j: int) -> Expression:
    return Expression.of(atom("g", *_pair(i, j)))


def dg(i: int, j: int, k: int) -> Expression:
    """``nabla_i g_jk``."""
    return Expression.of(atom("dg", i, *_pair(j, k)))


def Dg(i: int, j: int) -> Expression:
    return Expression.of(atom("Dg", *_pair(i, j)))


def dA(i: int, j: int) -> Expression:
    """``partial_i A_j``."""
    return Expression.of(atom("dA", i, j))


def higher_dA(i: int, d) -> Expression:
    """``partial_i`` applied to the derivative atom ``d``."""
    *derivs, comp = d.indices
    return Expression.of(atom("dA", *sorted(derivs + [i]), comp))


def F(i: int, j: int) -> Expression:
    """Antisymmetric field atom: ``F_ij`` for i<j, ``-F_ji`` for i>j, 0 on the diagonal."""
    if i == j:
        return Expression()
    if i < j:
        return Expression.of(atom("F", i, j))
    return -Expression.of(atom("F", j, i))


def var(family: str, *idx: int) -> Expression:
    return Expression.of(atom(family, *idx))


# -- tables --------------------------------------------------------------------

def flat_table() -> CommutationTable:
    """``[X_i,X_j] = 0``, ``[P_i,P_j] = 0``, ``[X_i,P_j] = delta_ij``."""
    return CommutationTable("flat", (
        zero_rule("X", "X"),
        zero_rule("P", "P"),
        delta_rule("X", "P"),
    ))


def gauge_table(abelian: bool = False) -> CommutationTable:
    """Flat relations plus potentials with ``[A_i, P_j] = partial_j A_i``.

    Derivative atoms carry their derivative indices sorted ahead of the
    component, so ``dA123`` is ``partial_1 partial_2 A_3`` and
    ``[dA_{I k}, P_j] = partial_j partial_I A_k``.  Without that rule the
    overlap ``P_i P_j A_k`` would not resolve.  ``[A_i, A_j]`` is left free
    unless ``abelian`` is set, which also makes the derivatives commute.
    """
    rules = [
        zero_rule("X", "A"),
        zero_rule("X", "dA"),
        named_rule("A", "P", lambda a, p: dA(p.indices[0], a.indices[0])),
        named_rule("dA", "P", lambda d, p: higher_dA(p.indices[0], d)),
    ]
    if abelian:
        rules += [zero_rule("A", "A"), zero_rule("A", "dA"), zero_rule("dA", "dA")]
    return flat_table().extend(*rules, name="gauge-abelian" if abelian else "gauge")


def metric_table(constant_metric: bool = False) -> CommutationTable:
    """Coordinates, velocities ``Xd`` and accelerations ``Xdd`` over a metric.

    * ``[X_i, Xd_j] = g_ij`` and ``[X, X] = [X, g] = [g, g] = [X, dg] = 0``
    * ``[g_jk, Xd_i] = nabla_i g_jk``
    * ``[X_i, Dg_jk] = nabla_i g_jk`` (from ``D[X_i, g_jk] = 0``)
    * ``[X_i, Xdd_j] = Dg_ij - [Xd_i, Xd_j]`` (from ``D g_ij = [Xd_i, Xd_j] + [X_i, Xdd_j]``)

    Velocity pairs stay free.  ``constant_metric`` sets every metric
    derivative to zero.
    """

    def nabla(gg, xd):
        if constant_metric:
            return Expression()
        return dg(xd.indices[0], *gg.indices)

    def x_Dg(x, d):
        if constant_metric:
            return Expression()
        return dg(x.indices[0], *d.indices)

    def x_xdd(x, a):
        i, j = x.indices[0], a.indices[0]
        vi, vj = var("Xd", i), var("Xd", j)
        return Dg(i, j) - (vi * vj - vj * vi)

    return CommutationTable("metric-const" if constant_metric else "metric", (
        zero_rule("X", "X"),
        zero_rule("X", "g"),
        zero_rule("g", "g"),
        zero_rule("X", "dg"),
        zero_rule("g", "dg"),
        zero_rule("dg", "dg"),
        named_rule("X", "Xd", lambda x, v: g(x.indices[0], v.indices[0])),
        named_rule("g", "Xd", nabla),
        named_rule("X", "Dg", x_Dg),
        named_rule("X", "Xdd", x_xdd),
    ))


def lorentz_table() -> CommutationTable:
    """Euclidean metric ``[X_i, Xd_j] = delta_ij`` with fields commuting with X."""
    return CommutationTable("lorentz", (
        zero_rule("X", "X"),
        delta_rule("X", "Xd"),
        zero_rule("X", "E"),
        zero_rule("X", "F"),
    ))


def commuting_coordinates_table() -> CommutationTable:
    """Only ``[X_i, X_j] = 0`` at equal times."""
    return CommutationTable("commuting-coordinates", (zero_rule("X", "X"),))


@dataclass(frozen=True)
class BackgroundSpec:
    dimension: int
    kind: Kind
    table: CommutationTable

    def __post_init__(self):
        if not 1 <= self.dimension <= 9:
            raise ValueError("dimension must be between 1 and 9")

    def check_index(self, *idx: int) -> None:
        for i in idx:
            if not 1 <= i <= self.dimension:
                raise ValueError(f"index {i} outside 1..{self.dimension}")


def background(kind: str | Kind, dimension: int = 3, **opts) -> BackgroundSpec:
    kind = Kind(kind)
    if kind is Kind.FLAT:
        table = flat_table()
    elif kind is Kind.GAUGE:
        table = gauge_table(opts.get("abelian", False))
    else:
        table = metric_table(opts.get("constant_metric", False))
    return BackgroundSpec(dimension, kind, table)


TABLES = {
    "free": lambda: FREE,
    "flat": flat_table,
    "gauge": gauge_table,
    "metric": metric_table,
}


def named_table(name: str) -> CommutationTable:
    try:
        return TABLES[name]()
    except KeyError:
        raise ValueError(f"unknown table {name!r}; choose from {sorted(TABLES)}") from None

"""Atom symbols and J-normal words.

An atom is a named time-series value such as ``X1``, ``X1'`` or ``dg123``.
Families are identified by their text token; the registry below fixes each
family's role, its rank in the normal ordering, and its weight in the
termination measure used by :class:`~doccalc.ncalg.table.CommutationTable`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Role(Enum):
    COORDINATE = "coordinate"
    MOMENTUM = "momentum"
    POTENTIAL = "potential"
    METRIC = "metric"
    DERIVATIVE = "named derivative"
    FIELD = "field"
    VELOCITY = "velocity"
    ACCELERATION = "acceleration"
    CONSTANT = "scalar constant"
    SYMBOL = "symbol"


@dataclass(frozen=True)
class Family:
    token: str
    role: Role
    rank: int
    weight: int = 1

    @property
    def is_constant(self) -> bool:
        return self.role is Role.CONSTANT


_BUILTIN = [
    Family("c", Role.CONSTANT, 0, 0),
    Family("k", Role.CONSTANT, 1, 0),
    Family("X", Role.COORDINATE, 10),
    Family("g", Role.METRIC, 11),
    Family("dg", Role.DERIVATIVE, 12),  # dg123 = nabla_1 g_23
    Family("Dg", Role.DERIVATIVE, 13),  # Dg12 = D g_12
    Family("A", Role.POTENTIAL, 14),
    Family("dA", Role.DERIVATIVE, 15),  # dA12 = partial_1 A_2
    Family("F", Role.FIELD, 16),
    Family("E", Role.FIELD, 17),
    Family("P", Role.MOMENTUM, 18),
    Family("Xd", Role.VELOCITY, 19, 2),  # X-dot = DX
    Family("Xdd", Role.ACCELERATION, 20, 5),  # D^2 X
]

FAMILIES: dict[str, Family] = {f.token: f for f in _BUILTIN}

# Remaining single upper-case letters are generic non-commuting symbols.
# J is the time shift and D is the derivative operator; neither is an atom.
for _n, _ch in enumerate("BCGHKLMNOQRSTUVWYZ"):
    FAMILIES[_ch] = Family(_ch, Role.SYMBOL, 40 + _n)

# Longest tokens first so the lexer prefers "Xdd" over "Xd" over "X".
FAMILY_TOKENS = sorted(FAMILIES, key=len, reverse=True)


def family(token: str) -> Family:
    try:
        return FAMILIES[token]
    except KeyError:
        raise ValueError(f"unknown atom family {token!r}") from None


@dataclass(frozen=True, order=False)
class Atom:
    family: str
    indices: tuple[int, ...] = ()
    primes: int = 0

    def __post_init__(self):
        fam = family(self.family)
        if self.primes < 0:
            raise ValueError("prime count must be non-negative")
        # Single-digit indices keep the text form unambiguous: X12 is X_{1,2}.
        if any((not isinstance(i, int)) or not 0 <= i <= 9 for i in self.indices):
            raise ValueError(f"malformed index list {self.indices!r}")
        if fam.is_constant and self.primes:
            object.__setattr__(self, "primes", 0)

    @property
    def fam(self) -> Family:
        return FAMILIES[self.family]

    @property
    def is_constant(self) -> bool:
        return self.fam.is_constant

    def prime(self, n: int = 1) -> "Atom":
        if self.is_constant or n == 0:
            return self
        return Atom(self.family, self.indices, self.primes + n)

    def sort_key(self) -> tuple:
        return (self.fam.rank, self.indices, self.primes)

    def __str__(self):
        return self.family + "".join(str(i) for i in self.indices) + "'" * self.primes

    def __repr__(self):
        return f"Atom({self})"


def atom(family_token: str, *indices: int, primes: int = 0) -> Atom:
    return Atom(family_token, tuple(indices), primes)


@dataclass(frozen=True)
class Word:
    """``J**jpower`` followed by an ordered product of atoms."""

    jpower: int = 0
    atoms: tuple[Atom, ...] = ()

    def __mul__(self, other: "Word") -> "Word":
        # u J^b = J^b u^(b): J passes left, priming each atom it crosses.
        left = self.atoms
        if other.jpower:
            left = tuple(a.prime(other.jpower) for a in left)
        return Word(self.jpower + other.jpower, left + other.atoms)

    def prime(self, n: int = 1) -> "Word":
        return Word(self.jpower, tuple(a.prime(n) for a in self.atoms))

    def __len__(self):
        return len(self.atoms)

    def is_unit(self) -> bool:
        return self.jpower == 0 and not self.atoms

    def weight(self) -> int:
        return sum(a.fam.weight for a in self.atoms)

    def sort_key(self) -> tuple:
        return tuple(a.sort_key() for a in self.atoms)

    def __str__(self):
        return word_text(self)


def word_text(w: Word) -> str:
    j = ""
    if w.jpower == 1:
        j = "J"
    elif w.jpower > 1:
        j = f"J^{w.jpower}"
    return j + "".join(str(a) for a in w.atoms)


UNIT = Word()
J_WORD = Word(1, ())


def word(*atoms: Atom, jpower: int = 0) -> Word:
    return Word(jpower, tuple(atoms))

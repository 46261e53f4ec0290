"""Commutation tables and rewriting to normal form.

A table assigns to an ordered pair of atoms the value of their commutator,
or leaves the pair free.  Normal ordering rewrites an adjacent inversion
``b a`` (``b`` after ``a`` in the atom order) as ``a b - [a, b]``.  Every
correction a shipped rule produces has strictly smaller total family weight
than the pair it replaces, so rewriting terminates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

from .atoms import Atom, Word
from .expression import Expression

DEFAULT_BUDGET = 200_000


class RewriteBudgetExceeded(RuntimeError):
    """Raised when normalisation needs more rewrite steps than allowed."""


class TerminationError(ValueError):
    """A rule produced a correction that does not decrease the weight measure."""


class Outcome(Enum):
    ZERO = "zero"
    DELTA = "kronecker delta"
    NAMED = "named expression"
    FREE = "free"


@dataclass(frozen=True)
class Rule:
    """Commutator rule for atoms of families ``first`` and ``second``.

    ``value(a, b)`` returns ``[a, b]`` for ``a`` of family ``first`` and ``b`` of
    family ``second``; ``None`` leaves that particular pair free.  With
    ``same_time`` the rule only fires for atoms with equal prime counts (the
    relations hold at each instant; nothing is assumed across instants).
    """

    first: str
    second: str
    outcome: Outcome
    value: Callable[[Atom, Atom], Optional[Expression]]
    same_time: bool = True


def zero_rule(first: str, second: str, same_time: bool = True) -> Rule:
    return Rule(first, second, Outcome.ZERO, lambda a, b: Expression(), same_time)


def delta_rule(first: str, second: str, scale=1) -> Rule:
    def value(a, b):
        return Expression.scalar(scale if a.indices == b.indices else 0)

    return Rule(first, second, Outcome.DELTA, value)


def named_rule(first: str, second: str, fn, same_time: bool = True) -> Rule:
    return Rule(first, second, Outcome.NAMED, fn, same_time)


def free_rule(first: str, second: str) -> Rule:
    return Rule(first, second, Outcome.FREE, lambda a, b: None)


@dataclass(frozen=True, eq=False)
class CommutationTable:
    """An immutable set of commutation rules defining a background.

    Constants (families ``c`` and ``k``) are central in every table.
    """

    name: str
    rules: tuple[Rule, ...] = ()
    _index: dict = field(default_factory=dict, init=False, repr=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False)
    _memo: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        for r in self.rules:
            self._index[(r.first, r.second)] = (r, False)
            if r.first != r.second:
                self._index.setdefault((r.second, r.first), (r, True))

    def extend(self, *rules: Rule, name: str | None = None) -> "CommutationTable":
        """New table with extra rules; later rules override earlier ones."""
        keep = [r for r in self.rules
                if not any({r.first, r.second} == {n.first, n.second} for n in rules)]
        return CommutationTable(name or self.name, tuple(keep) + tuple(rules))

    def outcome(self, a: Atom, b: Atom) -> Outcome:
        entry = self._index.get((a.family, b.family))
        if a.is_constant or b.is_constant:
            return Outcome.ZERO
        if entry is None:
            return Outcome.FREE
        return entry[0].outcome if self.bracket(a, b) is not None else Outcome.FREE

    def bracket(self, a: Atom, b: Atom) -> Optional[Expression]:
        """Value of ``[a, b]`` under this table, or ``None`` if the pair is free."""
        if a.is_constant or b.is_constant:
            return Expression()
        key = (a, b)
        if key in self._cache:
            return self._cache[key]
        entry = self._index.get((a.family, b.family))
        val = None
        if entry is not None:
            rule, flipped = entry
            if not rule.same_time:
                val = -rule.value(b, a) if flipped else rule.value(a, b)
            elif a.primes == b.primes:
                # evaluate at the unprimed instant, then shift the relation forward
                a0, b0 = Atom(a.family, a.indices), Atom(b.family, b.indices)
                val = -rule.value(b0, a0) if flipped else rule.value(a0, b0)
                if val is not None and a.primes:
                    val = val.prime(a.primes)
            if val is not None:
                _check_decreasing(a, b, val, self.name)
        self._cache[key] = val
        return val

    def __repr__(self):
        return f"CommutationTable({self.name!r}, {len(self.rules)} rules)"


def _check_decreasing(a: Atom, b: Atom, val: Expression, name: str) -> None:
    bound = a.fam.weight + b.fam.weight
    for w, _ in val.items():
        if w.weight() >= bound:
            raise TerminationError(
                f"table {name!r}: [{a},{b}] = {val} does not decrease the weight measure"
            )


FREE = CommutationTable("free")


def _inverted(a: Atom, b: Atom) -> bool:
    if a.is_constant != b.is_constant:
        return b.is_constant
    return a.sort_key() > b.sort_key()


def _redexes(w: Word, table: CommutationTable) -> list[int]:
    out = []
    at = w.atoms
    for k in range(len(at) - 1):
        a, b = at[k], at[k + 1]
        if a != b and _inverted(a, b) and table.bracket(a, b) is not None:
            out.append(k)
    return out


def _rewrite_at(w: Word, k: int, table: CommutationTable) -> Expression:
    at = w.atoms
    a, b = at[k], at[k + 1]
    prefix = Word(w.jpower, at[:k])
    suffix = Word(0, at[k + 2:])
    swapped = Expression.from_word(Word(w.jpower, at[:k] + (b, a) + at[k + 2:]))
    corr = table.bracket(a, b)
    if corr:
        # a b = b a + [a, b]
        swapped = swapped + Expression.from_word(prefix) * corr * Expression.from_word(suffix)
    return swapped


class _Budget:
    def __init__(self, steps: int):
        self.left = steps

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise RewriteBudgetExceeded("rewrite budget exceeded; table may not terminate")


def _normal_word(w: Word, table: CommutationTable, budget: _Budget,
                 memo: dict) -> Expression:
    hit = memo.get(w)
    if hit is not None:
        return hit
    red = _redexes(w, table)
    if not red:
        res = Expression.from_word(w)
    else:
        budget.spend()
        step = _rewrite_at(w, red[0], table)
        res = Expression([(w3, c * c3)
                          for w2, c in step.items()
                          for w3, c3 in _normal_word(w2, table, budget, memo).items()])
    memo[w] = res
    return res


def normalize(e: Expression, table: CommutationTable = FREE, *,
              budget: int = DEFAULT_BUDGET,
              rng: random.Random | None = None) -> Expression:
    """Rewrite ``e`` to its normal form under ``table``.

    The leftmost redex is reduced first.  Passing ``rng`` instead reduces a
    randomly chosen redex of a randomly chosen term at each step, which is
    how confluence is exercised in the tests.
    """
    if rng is not None:
        return _normalize_random(e, table, budget, rng)
    b = _Budget(budget)
    memo = table._memo
    return Expression([(w2, c * c2)
                       for w, c in e.items()
                       for w2, c2 in _normal_word(w, table, b, memo).items()])


def _normalize_random(e, table, budget, rng):
    b = _Budget(budget)
    current = e
    while True:
        pending = [(w, red) for w, _ in current.items() if (red := _redexes(w, table))]
        if not pending:
            return current
        b.spend()
        w, red = rng.choice(pending)
        c = current.coefficient(w)
        step = _rewrite_at(w, rng.choice(red), table)
        current = current - Expression.from_word(w, c) + step.scale(c)


def commutator(a: Expression, b: Expression, table: CommutationTable = FREE) -> Expression:
    """``normalize(ab - ba)``."""
    return normalize(a * b - b * a, table)


def equals(a: Expression, b: Expression, table: CommutationTable = FREE) -> bool:
    return normalize(a - b, table).is_zero()

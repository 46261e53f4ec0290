"""Expressions: exact linear combinations of J-normal words."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .atoms import UNIT, J_WORD, Atom, Word
from .gaussian import GaussianRational


@dataclass(frozen=True)
class Term:
    coefficient: GaussianRational
    word: Word


class _Desc:
    """Sort-key wrapper that reverses the natural order of its payload."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return other.v < self.v

    def __eq__(self, other):
        return self.v == other.v


def _term_key(item):
    w = item[0]
    return (w.jpower, _Desc((len(w.atoms), w.sort_key())))


class Expression:
    """A normalised sum of terms over non-commuting atoms.

    Words are kept with every ``J`` collected on the left, like words are
    merged and zero coefficients dropped.  The class is immutable; arithmetic
    returns new instances.  Reordering of atoms according to a
    :class:`CommutationTable` is done by :func:`doccalc.ncalg.normalize`.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, GaussianRational] | Iterable = ()):
        acc: dict[Word, GaussianRational] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            c = GaussianRational.coerce(c)
            if not c:
                continue
            prev = acc.get(w)
            s = c if prev is None else prev + c
            if s:
                acc[w] = s
            else:
                del acc[w]
        object.__setattr__(self, "_terms", dict(sorted(acc.items(), key=_term_key)))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Expression is immutable")

    # -- constructors ------------------------------------------------------
    @classmethod
    def scalar(cls, c) -> "Expression":
        return cls({UNIT: c})

    @classmethod
    def of(cls, *atoms: Atom, coefficient=1, jpower: int = 0) -> "Expression":
        return cls({Word(jpower, tuple(atoms)): coefficient})

    @classmethod
    def from_word(cls, w: Word, coefficient=1) -> "Expression":
        return cls({w: coefficient})

    # -- access ------------------------------------------------------------
    @property
    def terms(self) -> list[Term]:
        return [Term(c, w) for w, c in self._terms.items()]

    def items(self):
        return self._terms.items()

    def coefficient(self, w: Word) -> GaussianRational:
        return self._terms.get(w, GaussianRational(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def atoms(self) -> set[Atom]:
        return {a for w in self._terms for a in w.atoms}

    # -- arithmetic --------------------------------------------------------
    @staticmethod
    def _lift(x) -> "Expression":
        if isinstance(x, Expression):
            return x
        if isinstance(x, Atom):
            return Expression.of(x)
        return Expression.scalar(x)

    def __add__(self, other):
        o = self._lift(other)
        return Expression(list(self._terms.items()) + list(o._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return Expression({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        out = []
        for w1, c1 in self._terms.items():
            for w2, c2 in o._terms.items():
                out.append((w1 * w2, c1 * c2))
        return Expression(out)

    def __rmul__(self, other):
        return self._lift(other) * self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Expression.scalar(1)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c) -> "Expression":
        c = GaussianRational.coerce(c)
        return Expression({w: c * v for w, v in self._terms.items()})

    def prime(self, n: int = 1) -> "Expression":
        return Expression([(w.prime(n), c) for w, c in self._terms.items()])

    def map_words(self, fn) -> "Expression":
        """Replace every word ``w`` by the expression ``fn(w)``."""
        out = Expression()
        for w, c in self._terms.items():
            out = out + fn(w).scale(c)
        return out

    # -- equality ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Expression):
            return self._terms == other._terms
        try:
            return self == self._lift(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"Expression({render(self)!r})"

    def __str__(self):
        return render(self)


ZERO = Expression()
ONE = Expression.scalar(1)
J = Expression.from_word(J_WORD)


def prime_shift(e: Expression, n: int = 1) -> Expression:
    """Advance every non-constant atom by ``n`` time steps; J is fixed."""
    return e.prime(n)


# -- rendering ---------------------------------------------------------------

def _coef_prefix(c: GaussianRational, has_word: bool) -> tuple[str, str]:
    """Return (sign, magnitude text) for a coefficient in front of a word."""
    if c.im == 0:
        sign = "-" if c.re < 0 else "+"
        mag = abs(c.re)
        if mag == 1 and has_word:
            return sign, ""
        return sign, str(mag)
    if c.re == 0:
        sign = "-" if c.im < 0 else "+"
        mag = abs(c.im)
        return sign, ("i" if mag == 1 else f"{mag}i")
    return "+", c.render()


def _render_terms(items, strip_j: int) -> str:
    parts = []
    for w, c in items:
        body = Word(w.jpower - strip_j, w.atoms)
        wtext = str(body)
        sign, mag = _coef_prefix(c, bool(wtext))
        parts.append((sign, mag + wtext if (mag or wtext) else "1"))
    out = []
    for n, (sign, text) in enumerate(parts):
        if n == 0:
            out.append(("-" if sign == "-" else "") + text)
        else:
            out.append(f" {sign} {text}")
    return "".join(out)


def render(e: Expression) -> str:
    """Text form in the parser grammar; terms sharing a J power are grouped."""
    if not e._terms:
        return "0"
    groups: list[tuple[int, list]] = []
    for w, c in e._terms.items():
        if groups and groups[-1][0] == w.jpower:
            groups[-1][1].append((w, c))
        else:
            groups.append((w.jpower, [(w, c)]))
    chunks = []
    for jp, items in groups:
        if jp and len(items) > 1:
            jtxt = "J" if jp == 1 else f"J^{jp}"
            chunks.append(("+", f"{jtxt}({_render_terms(items, jp)})"))
        else:
            text = _render_terms(items, 0)
            if text.startswith("-"):
                chunks.append(("-", text[1:]))
            else:
                chunks.append(("+", text))
    out = []
    for n, (sign, text) in enumerate(chunks):
        if n == 0:
            out.append(("-" if sign == "-" else "") + text)
        else:
            out.append(f" {sign} {text}")
    return "".join(out)

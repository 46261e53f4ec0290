"""Text parser for expressions.

Grammar::

    expr    := ["+"|"-"] term (("+"|"-") term)*
    term    := factor ("*"? factor)*
    factor  := ["-"] primary "'"* ["^" INT]
    primary := INT | INT "/" INT | "i" | "J" | atom
             | "(" expr ")" | "[" expr "," expr "]" | "D(" expr ")" | "d(" expr ")"
    atom    := FAMILY DIGIT* "'"*

``D(e)`` is the DOC derivative ``[e, J]`` and ``d(e)`` the classical
difference ``e' - e``.  ``'`` after a parenthesised factor primes the whole
factor.  Whitespace is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .atoms import FAMILY_TOKENS, Atom
from .expression import J, Expression, render
from .gaussian import GaussianRational
from .table import FREE, CommutationTable, normalize


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, RAT, I, J, ATOM, OP, DOP, END
    text: str
    offset: int
    value: object = None


_OPS = set("+-*()[],'^")


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        start = pos
        if ch.isdigit():
            while pos < n and text[pos].isdigit():
                pos += 1
            num = text[start:pos]
            if pos < n and text[pos] == "/":
                pos += 1
                s2 = pos
                while pos < n and text[pos].isdigit():
                    pos += 1
                if s2 == pos:
                    raise ParseError("malformed rational", pos, text)
                den = int(text[s2:pos])
                if den == 0:
                    raise ParseError("zero denominator", s2, text)
                toks.append(Token("RAT", text[start:pos], start, Fraction(int(num), den)))
            else:
                toks.append(Token("NUM", num, start, int(num)))
            continue
        if ch in "Dd" and text.startswith("(", pos + 1):
            toks.append(Token("DOP", ch, start))
            pos += 2
            continue
        if ch == "i":
            toks.append(Token("I", "i", start))
            pos += 1
            continue
        if ch == "J":
            toks.append(Token("J", "J", start))
            pos += 1
            continue
        if ch in _OPS:
            toks.append(Token("OP", ch, start))
            pos += 1
            continue
        if ch.isalpha():
            fam = next((f for f in FAMILY_TOKENS if text.startswith(f, pos)), None)
            if fam is None:
                j = pos
                while j < n and text[j].isalpha():
                    j += 1
                raise ParseError(f"unknown atom family {text[pos:j]!r}", pos, text)
            pos += len(fam)
            idx = []
            while pos < n and text[pos].isdigit():
                idx.append(int(text[pos]))
                pos += 1
            if pos < n and text[pos].isalpha() and text[pos] not in "iJ" \
                    and not any(text.startswith(f, pos) for f in FAMILY_TOKENS) \
                    and not (text[pos] in "Dd" and text.startswith("(", pos + 1)):
                raise ParseError(f"malformed index in atom {text[start:pos + 1]!r}", pos, text)
            primes = 0
            while pos < n and text[pos] == "'":
                primes += 1
                pos += 1
            toks.append(Token("ATOM", text[start:pos], start, Atom(fam, tuple(idx), primes)))
            continue
        raise ParseError(f"unexpected character {ch!r}", pos, text)
    toks.append(Token("END", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _is(self, kind, text=None):
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def _eat(self, kind, text=None) -> Token:
        t = self.tok
        if not self._is(kind, text):
            want = text or kind
            got = t.text or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", t.offset, self.text)
        self.i += 1
        return t

    def parse(self) -> Expression:
        e = self.expr()
        if not self._is("END"):
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.offset, self.text)
        return e

    def expr(self) -> Expression:
        sign = 1
        if self._is("OP", "-") or self._is("OP", "+"):
            sign = -1 if self._eat("OP").text == "-" else 1
        e = self.term()
        if sign < 0:
            e = -e
        while self._is("OP", "+") or self._is("OP", "-"):
            op = self._eat("OP").text
            t = self.term()
            e = e + t if op == "+" else e - t
        return e

    def _starts_factor(self) -> bool:
        t = self.tok
        return t.kind in ("NUM", "RAT", "I", "J", "ATOM", "DOP") or (
            t.kind == "OP" and t.text in "(["
        )

    def term(self) -> Expression:
        e = self.factor()
        while True:
            if self._is("OP", "*"):
                self._eat("OP")
                e = e * self.factor()
            elif self._starts_factor():
                e = e * self.factor()
            else:
                return e

    def factor(self) -> Expression:
        if self._is("OP", "-"):
            self._eat("OP")
            return -self.factor()
        e = self.primary()
        primes = 0
        while self._is("OP", "'"):
            self._eat("OP")
            primes += 1
        if primes:
            e = e.prime(primes)
        if self._is("OP", "^"):
            self._eat("OP")
            n = self._eat("NUM").value
            e = e ** n
        return e

    def primary(self) -> Expression:
        t = self.tok
        if t.kind in ("NUM", "RAT"):
            self.i += 1
            return Expression.scalar(t.value)
        if t.kind == "I":
            self.i += 1
            return Expression.scalar(GaussianRational(0, 1))
        if t.kind == "J":
            self.i += 1
            return J
        if t.kind == "ATOM":
            self.i += 1
            return Expression.of(t.value)
        if t.kind == "DOP":
            self.i += 1
            inner = self.expr()
            self._eat("OP", ")")
            if t.text == "D":
                return inner * J - J * inner
            return inner.prime() - inner
        if self._is("OP", "("):
            self._eat("OP")
            e = self.expr()
            self._eat("OP", ")")
            return e
        if self._is("OP", "["):
            self._eat("OP")
            a = self.expr()
            self._eat("OP", ",")
            b = self.expr()
            self._eat("OP", "]")
            return a * b - b * a
        got = t.text or "end of input"
        raise ParseError(f"unexpected {got!r}", t.offset, self.text)


def parse(text: str, table: CommutationTable = FREE) -> Expression:
    """Parse ``text`` and return its normal form under ``table``."""
    return normalize(_Parser(text).parse(), table)


__all__ = ["parse", "render", "tokenize", "ParseError"]

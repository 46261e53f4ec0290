"""Exact Gaussian rationals a + b*i with a, b in Q."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot make an exact rational from {x!r}")


def _parse_text(s: str) -> tuple[Fraction, Fraction]:
    """Read ``"3/2"``, ``"-i"``, ``"2i"`` or ``"(1 - 2i)"``."""
    t = s.replace(" ", "").strip("()")
    if not t.endswith("i"):
        return Fraction(t), Fraction(0)
    body = t[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    re_txt, im_txt = (body[:cut], body[cut:]) if cut > 0 else ("0", body)
    im = {"": 1, "+": 1, "-": -1}.get(im_txt)
    return Fraction(re_txt), Fraction(im) if im is not None else Fraction(im_txt)


class GaussianRational:
    """Immutable exact complex number with rational parts.

    Interoperates with ``int``, ``Fraction`` and ``complex`` values whose parts
    are integral (``1j`` is accepted as the imaginary unit).
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            if x.real != int(x.real) or x.imag != int(x.imag):
                raise TypeError(f"inexact complex {x!r}")
            return cls(int(x.real), int(x.imag))
        if isinstance(x, str):
            return cls(*_parse_text(x))
        return cls(x)

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def is_integral(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return GaussianRational(1) / (self ** -n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # -- text -------------------------------------------------------------
    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return self.render()

    def render(self) -> str:
        """Text form accepted by the expression parser (parenthesised if compound)."""
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_text(self.im)
        sign = "-" if self.im < 0 else "+"
        return f"({self.re} {sign} {_imag_text(abs(self.im))})"


def _imag_text(v: Fraction) -> str:
    if v == 1:
        return "i"
    if v == -1:
        return "-i"
    return f"{v}i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

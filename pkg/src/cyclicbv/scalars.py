"""Exact ground fields: rationals and Gaussian rationals.

Every scalar in the system is either a `fractions.Fraction` or a
`GaussianRational` (a pair of Fractions representing x + iy).  There is no
floating point anywhere; equality is decidable and canonical.
"""

from __future__ import annotations

from fractions import Fraction


class GaussianRational:
    """x + iy with exact rational x, y.  Immutable, hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianRational is immutable")

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x, 0)
    return NotImplemented


Scalar = (Fraction, GaussianRational)


class Field:
    """A named exact field with parse/format and canonical constants."""

    def __init__(self, name, zero, one, parse):
        self.name = name
        self.zero = zero
        self.one = one
        self._parse = parse

    def parse(self, text):
        return self._parse(text)

    def __repr__(self):
        return f"Field({self.name})"


def _parse_rational(text):
    return Fraction(text)


def _parse_gaussian(text):
    """Parse 'a/b', 'a/b*i', or 'a/b+c/d*i' (also with '-')."""
    t = text.replace(" ", "")
    if "i" not in t:
        return GaussianRational(Fraction(t), 0)
    t = t[:-1]  # strip trailing i
    if t.endswith("*"):
        t = t[:-1]
    # split real and imaginary at the last +/- that is not leading
    for k in range(len(t) - 1, 0, -1):
        if t[k] in "+-" and t[k - 1] not in "+-/*":
            re_part, im_part = t[:k], t[k:]
            break
    else:
        re_part, im_part = "0", t
    if im_part in ("", "+"):
        im_part = "1"
    elif im_part == "-":
        im_part = "-1"
    return GaussianRational(Fraction(re_part), Fraction(im_part))


QQ = Field("rational", Fraction(0), Fraction(1), _parse_rational)
QQi = Field("gaussian-rational", GaussianRational(0), GaussianRational(1), _parse_gaussian)

FIELDS = {QQ.name: QQ, QQi.name: QQi}


def format_scalar(x):
    """Canonical text form, the inverse of Field.parse."""
    if isinstance(x, Fraction) or isinstance(x, int):
        return str(x)
    re, im = x.re, x.im
    if im == 0:
        return str(re)
    if re == 0:
        return f"{im}*i"
    sign = "+" if im > 0 else "-"
    return f"{re}{sign}{abs(im)}*i"

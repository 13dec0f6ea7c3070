"""Exact arithmetic over the Gaussian rationals Q(i).

Real values are carried as :class:`fractions.Fraction` (or plain ``int``);
:class:`GaussianRational` only appears when the imaginary part is nonzero.
Every arithmetic result with a vanishing imaginary part is demoted back to
``Fraction``, so a value has exactly one representation.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "GaussianRational",
    "Scalar",
    "gq",
    "as_scalar",
    "parse_scalar",
    "format_scalar",
    "arith",
    "is_zero",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with ``im != 0`` in canonical use.

    Instances are immutable.  Equality and hashing agree with ``Fraction``
    when the imaginary part is zero.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "_re", _frac(re))
        object.__setattr__(self, "_im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    def conjugate(self) -> "Scalar":
        return gq(self._re, -self._im)

    def __repr__(self) -> str:
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)

    def __bool__(self) -> bool:
        return bool(self._re) or bool(self._im)

    def __hash__(self) -> int:
        if not self._im:
            return hash(self._re)
        return hash((self._re, self._im))

    def __eq__(self, other) -> bool:
        o = _parts(other)
        if o is None:
            return NotImplemented
        return self._re == o[0] and self._im == o[1]

    def __neg__(self):
        return gq(-self._re, -self._im)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = _parts(other)
        if o is None:
            return NotImplemented
        return gq(self._re + o[0], self._im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = _parts(other)
        if o is None:
            return NotImplemented
        return gq(self._re - o[0], self._im - o[1])

    def __rsub__(self, other):
        o = _parts(other)
        if o is None:
            return NotImplemented
        return gq(o[0] - self._re, o[1] - self._im)

    def __mul__(self, other):
        o = _parts(other)
        if o is None:
            return NotImplemented
        a, b = self._re, self._im
        c, d = o
        return gq(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _parts(other)
        if o is None:
            return NotImplemented
        return _div(self._re, self._im, o[0], o[1])

    def __rtruediv__(self, other):
        o = _parts(other)
        if o is None:
            return NotImplemented
        return _div(o[0], o[1], self._re, self._im)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** (-n))
        result: Scalar = Fraction(1)
        base: Scalar = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


Scalar = Union[int, Fraction, GaussianRational]


def _parts(x):
    if isinstance(x, GaussianRational):
        return x._re, x._im
    if isinstance(x, (int, Fraction)):
        return x, 0
    return None


def _div(a, b, c, d):
    den = c * c + d * d
    if den == 0:
        raise ZeroDivisionError("division by zero in Q(i)")
    return gq(Fraction(a * c + b * d, 1) / den, Fraction(b * c - a * d, 1) / den)


def gq(re=0, im=0) -> Scalar:
    """Build the canonical scalar ``re + im*i``."""
    im = _frac(im)
    if im == 0:
        return _frac(re)
    return GaussianRational(re, im)


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, strings and GaussianRationals to a canonical scalar."""
    if isinstance(x, GaussianRational):
        return gq(x.re, x.im)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use a fraction string")
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def is_zero(x) -> bool:
    return not x


def arith(a, b, op: str) -> Scalar:
    """Apply ``op`` in {add, sub, mul, div} exactly."""
    a, b = as_scalar(a), as_scalar(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero in Q(i)")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


_RAT = r"[+-]?\d+(?:/\d+)?"
_COMPLEX_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})\s*(?=[+-]|$))?\s*"
    rf"(?:(?P<im>[+-]?\s*(?:\d+(?:/\d+)?)?)\s*\*?\s*i)?\s*$"
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"a/b+c/d*i"`` and its abbreviations (``"3"``, ``"-1/2*i"``, ``"i"``)."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1].strip()
    if not s:
        raise ValueError("empty scalar")
    m = _COMPLEX_RE.match(s)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"cannot parse scalar {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_txt = m.group("im")
    if im_txt is None:
        im_part = Fraction(0)
    else:
        im_txt = im_txt.replace(" ", "")
        if im_txt in ("", "+"):
            im_part = Fraction(1)
        elif im_txt == "-":
            im_part = Fraction(-1)
        else:
            im_part = Fraction(im_txt)
    return gq(re_part, im_part)


def format_scalar(x) -> str:
    """Canonical text: ``"5/6"``, ``"-1"``, ``"1/2+3/4*i"``, ``"-1*i"``."""
    if isinstance(x, GaussianRational) and x.im:
        re_part, im_part = x.re, x.im
        im_txt = f"{im_part}*i"
        if re_part == 0:
            return im_txt
        sign = "+" if im_part > 0 else ""
        return f"{re_part}{sign}{im_txt}"
    if isinstance(x, GaussianRational):
        x = x.re
    return str(Fraction(x))

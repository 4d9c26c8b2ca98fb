"""Exact Gaussian-rational scalars.

Every coefficient in this package is a complex number whose real and
imaginary parts are `fractions.Fraction` values, so all arithmetic is exact
and printed results are ratios of integers.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InputError

ScalarLike = Union["Scalar", int, Fraction]


@dataclass(frozen=True, slots=True)
class Scalar:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        # exactness guard: int components would float-divide in __truediv__
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", Fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def of(value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar(Fraction(value))
        raise TypeError(f"cannot interpret {type(value).__name__} as a Scalar")

    def __add__(self, other: ScalarLike) -> "Scalar":
        o = Scalar.of(other)
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "Scalar":
        o = Scalar.of(other)
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return Scalar.of(other) - self

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        o = Scalar.of(other)
        return Scalar(self.re * o.re - self.im * o.im,
                      self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        o = Scalar.of(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar((self.re * o.re + self.im * o.im) / n,
                      (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        return Scalar.of(other) / self

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int) or n < 0:
            raise ValueError("scalar powers must be nonnegative integers")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def is_zero(self) -> bool:
        return not self

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def __repr__(self) -> str:
        return f"Scalar({self.re!r}, {self.im!r})"


ZERO = Scalar()
ONE = Scalar(Fraction(1))
I = Scalar(Fraction(0), Fraction(1))
HALF_I = Scalar(Fraction(0), Fraction(1, 2))


def format_scalar(z: Scalar) -> str:
    """Render a scalar in report style: "0", "3/2", "1/2i", "3/2-1/4i", "i"."""
    re, im = z.re, z.im
    if im == 0:
        return str(re)
    if im == 1:
        istr = "i"
    elif im == -1:
        istr = "-i"
    else:
        istr = f"{im}i"
    if re == 0:
        return istr
    if im > 0:
        return f"{re}+{istr}"
    # istr already starts with the minus sign
    return f"{re}{istr}"


def _parse_term(term: str, where: str) -> tuple[Fraction, bool]:
    # returns (value, is_imaginary); sign already stripped by caller
    if term.endswith("i"):
        body = term[:-1]
        if body == "":
            return Fraction(1), True
        try:
            return Fraction(body), True
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad scalar term {term!r} in {where!r}") from exc
    try:
        return Fraction(term), False
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar term {term!r} in {where!r}") from exc


def parse_scalar(text: str) -> Scalar:
    """Inverse of format_scalar.  Accepts "a", "bi", "a+bi", "a-bi" with a, b rational."""
    s = text.strip()
    if not s:
        raise InputError("empty scalar string")
    split = -1
    for k in range(1, len(s)):
        if s[k] in "+-":
            split = k
            break
    chunks = [s] if split < 0 else [s[:split], s[split:]]
    re = Fraction(0)
    im = Fraction(0)
    seen_re = seen_im = False
    for chunk in chunks:
        sign = 1
        if chunk and chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:]
        if not chunk:
            raise InputError(f"bad scalar string {text!r}")
        value, imaginary = _parse_term(chunk, text)
        if imaginary:
            if seen_im:
                raise InputError(f"duplicate imaginary part in {text!r}")
            seen_im = True
            im = sign * value
        else:
            if seen_re:
                raise InputError(f"duplicate real part in {text!r}")
            seen_re = True
            re = sign * value
    return Scalar(re, im)


def scalar_to_expr(z: Scalar) -> str:
    """Render a scalar as a parseable expression: "3/2", "1/2*I", "(3/2-1/4*I)"."""
    re, im = z.re, z.im
    if im == 0:
        return str(re)
    if im == 1:
        istr = "I"
    elif im == -1:
        istr = "-I"
    else:
        istr = f"{im}*I"
    if re == 0:
        return istr
    if im > 0:
        return f"({re}+{istr})"
    return f"({re}{istr})"

"""Exact Gaussian rationals a + b i with a, b in Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from sympy.polys.domains import QQ, QQ_I


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    # gmpy2.mpq and sympy's PythonMPQ expose numerator/denominator
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {value!r} to an exact rational")


@dataclass(frozen=True, slots=True)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating complex numbers are not exact")
        if isinstance(value, float):
            raise TypeError("floats are not exact")
        if hasattr(value, "x") and hasattr(value, "y") and not isinstance(value, (int, Fraction)):
            return cls(_frac(value.x), _frac(value.y))
        return cls(_frac(value))

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def to_domain(self, gaussian: bool):
        if gaussian:
            return QQ_I(QQ(self.re.numerator, self.re.denominator), QQ(self.im.numerator, self.im.denominator))
        if self.im:
            raise ValueError("imaginary value in a real domain")
        return QQ(self.re.numerator, self.re.denominator)

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

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
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return self * GaussianRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        out, base = GaussianRational(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

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

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return "i" if self.im == 1 else ("-i" if self.im == -1 else f"{self.im}*i")
        sign = "+" if self.im > 0 else "-"
        im = abs(self.im)
        im_s = "i" if im == 1 else f"{im}*i"
        return f"({self.re} {sign} {im_s})"

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


I = GaussianRational(0, 1)

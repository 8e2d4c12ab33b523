"""Gaussian-rational scalars and the float/exact backend switch.

The exact backend evaluates every polynomial and jet over Q(i) so that
identities such as the Einstein equation can be certified as exact zeros
rather than small floats.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral, Rational

import numpy as np

from .errors import ConfigError


class GaussianRational:
    """A complex number with Fraction real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

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
        return GaussianRational(other.re - self.re, other.im - self.im)

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
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2 as an exact Fraction."""
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (Integral, Rational)):
        return GaussianRational(Fraction(x))
    return NotImplemented


def parse_rational_complex(text: str) -> GaussianRational:
    """Parse strings like ``1/2``, ``-1/3i``, ``1/2+1/3i`` into Q(i)."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty rational-complex literal")
    if not s.endswith(("i", "j")):
        return GaussianRational(Fraction(s))
    body = s[:-1]
    # split the imaginary tail from an optional real head at the last +/-
    # that is not a leading sign or part of a fraction
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "+-/":
            re_part, im_part = body[:k], body[k:]
            im_part = im_part if im_part not in ("+", "-") else im_part + "1"
            return GaussianRational(Fraction(re_part), Fraction(im_part))
    body = body if body not in ("", "+", "-") else body + "1"
    return GaussianRational(0, Fraction(body))


class Backend:
    """Scalar arithmetic selected per invocation: complex floats or Q(i)."""

    def __init__(self, name: str):
        if name not in ("float", "exact"):
            raise ConfigError(f"unknown backend {name!r}; use 'float' or 'exact'")
        self.name = name
        self.exact = name == "exact"
        self.dtype = object if self.exact else np.complex128

    def zeros(self, n: int) -> np.ndarray:
        if self.exact:
            a = np.empty(n, dtype=object)
            a[:] = [GaussianRational(0) for _ in range(n)]
            return a
        return np.zeros(n, dtype=np.complex128)

    def scalar(self, x):
        """Coerce a Python number (or GaussianRational) to this backend."""
        if self.exact:
            if isinstance(x, GaussianRational):
                return x
            if isinstance(x, (Integral, Rational)):
                return GaussianRational(Fraction(x))
            if isinstance(x, complex) and x.imag == 0.0 and float(x.real).is_integer():
                return GaussianRational(int(x.real))
            if isinstance(x, float) and x.is_integer():
                return GaussianRational(int(x))
            if isinstance(x, str):
                return parse_rational_complex(x)
            raise ConfigError(f"cannot coerce {x!r} to an exact scalar")
        if isinstance(x, GaussianRational):
            return complex(x)
        return complex(x)

    def conj(self, x):
        if self.exact:
            return x.conjugate()
        return x.conjugate()

    def abs2(self, x):
        if self.exact:
            return x.abs2()
        return (x * x.conjugate()).real

    def to_complex(self, x) -> complex:
        return complex(x)

    def point(self, zs) -> list:
        """Coerce a coordinate tuple to backend scalars."""
        return [self.scalar(z) for z in zs]


FLOAT = Backend("float")
EXACT = Backend("exact")


def get_backend(name) -> Backend:
    if isinstance(name, Backend):
        return name
    return Backend(str(name))

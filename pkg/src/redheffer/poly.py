"""Dense univariate polynomials over exact integers / rationals."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational


class Polynomial:
    """Coefficients stored in ascending order of power, trailing zeros stripped."""

    __slots__ = ("c",)

    def __init__(self, coeffs=(0,)):
        c = list(coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0]
        self.c = c

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def linear(cls, root) -> "Polynomial":
        """z - root."""
        return cls([-root, 1])

    @property
    def degree(self) -> int:
        return -1 if self.c == [0] else len(self.c) - 1

    def is_zero(self) -> bool:
        return self.c == [0]

    def descending(self) -> tuple:
        return tuple(reversed(self.c))

    @staticmethod
    def _lift(other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, Rational):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-v for v in self.c])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            if other == 0:
                return Polynomial()
            return Polynomial([v * other for v in self.c])
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Polynomial()
        a, b = self.c, other.c
        out = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u == 0:
                continue
            for j, v in enumerate(b):
                out[i + j] += u * v
        return Polynomial(out)

    __rmul__ = __mul__

    def mul_linear(self, root) -> "Polynomial":
        """self * (z - root) in O(degree)."""
        c = self.c
        out = [0] * (len(c) + 1)
        for i, v in enumerate(c):
            out[i + 1] += v
            out[i] -= root * v
        return Polynomial(out)

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(v) for v in self.c]
        d = other.degree
        lead = Fraction(other.c[-1])
        if self.degree < d:
            return Polynomial(), Polynomial(rem)
        quo = [Fraction(0)] * (self.degree - d + 1)
        for k in range(self.degree - d, -1, -1):
            q = rem[k + d] / lead
            quo[k] = q
            if q:
                for i, v in enumerate(other.c):
                    rem[k + i] -= q * v
        return Polynomial(quo), Polynomial(rem[:d] if d > 0 else [0])

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.c == other.c

    def __hash__(self):
        return hash(tuple(self.c))

    def __call__(self, z):
        acc = 0
        for v in reversed(self.c):
            acc = acc * z + v
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial([i * v for i, v in enumerate(self.c)][1:] or [0])

    def monic(self) -> "Polynomial":
        lead = Fraction(self.c[-1])
        return Polynomial([Fraction(v) / lead for v in self.c])

    def integer_primitive(self) -> "Polynomial":
        """A positive rational multiple with integer coefficients (same signs everywhere)."""
        den = lcm(*(Fraction(v).denominator for v in self.c))
        return Polynomial([int(Fraction(v) * den) for v in self.c])

    def __repr__(self):
        return f"Polynomial({self.c!r})"


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over the rationals."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    if a.is_zero():
        return a
    return a.monic()


def sign_at(int_coeffs_desc: tuple[int, ...], x: Fraction) -> int:
    """Exact sign of an integer-coefficient polynomial at a rational point.

    Evaluates den^deg * p(num / den) by homogeneous Horner, all in integers.
    """
    num, den = x.numerator, x.denominator
    it = iter(int_coeffs_desc)
    acc = next(it)
    dpow = 1
    for c in it:
        dpow *= den
        acc = acc * num + c * dpow
    return (acc > 0) - (acc < 0)

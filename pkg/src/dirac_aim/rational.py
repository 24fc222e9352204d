"""Polynomials and rational functions with denominators z^a (1 - z)^b.

Every AIM iterate in this package has its poles at z = 0 and z = 1 only, so
a rational function is stored as a numerator polynomial together with the two
pole orders.  Sums bring operands onto the larger pole orders, products add
them, and differentiation raises each by one.  No GCD simplification is done,
which keeps pole bookkeeping exact and numerator degrees linear in the number
of iterations.
"""
from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as P


class Polynomial:
    """Real polynomial with ascending coefficients, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=float))
        if c.size == 0:
            c = np.zeros(1)
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else np.zeros(1)
        self.coeffs = c
        self.coeffs.setflags(write=False)

    @classmethod
    def constant(cls, value):
        return cls([value])

    @classmethod
    def z(cls):
        return cls([0.0, 1.0])

    @classmethod
    def one_minus_z(cls):
        return cls([1.0, -1.0])

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return -1 if self.is_zero() else self.coeffs.size - 1

    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0.0

    def __call__(self, z):
        return P.polyval(z, self.coeffs)

    def derivative(self) -> "Polynomial":
        return Polynomial(P.polyder(self.coeffs))

    def __add__(self, other):
        other = _as_poly(other)
        return Polynomial(P.polyadd(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        return Polynomial(P.polymul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        return Polynomial(P.polypow(self.coeffs, k))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"Polynomial({self.coeffs.tolist()})"


def _as_poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial.constant(x)


class PoleError(ZeroDivisionError):
    pass


class RationalFn:
    """num(z) / (z^zpow (1 - z)^wpow)."""

    __slots__ = ("num", "zpow", "wpow")

    def __init__(self, num, zpow: int = 0, wpow: int = 0):
        if zpow < 0 or wpow < 0:
            raise ValueError("pole orders must be non-negative")
        self.num = _as_poly(num) if not isinstance(num, Polynomial) else num
        self.zpow = int(zpow)
        self.wpow = int(wpow)

    @classmethod
    def constant(cls, value) -> "RationalFn":
        return cls(Polynomial.constant(value))

    @property
    def den(self) -> Polynomial:
        return Polynomial.z() ** self.zpow * Polynomial.one_minus_z() ** self.wpow

    def _lift(self, zpow: int, wpow: int) -> Polynomial:
        return self.num * Polynomial.z() ** (zpow - self.zpow) * Polynomial.one_minus_z() ** (wpow - self.wpow)

    def __add__(self, other):
        other = _as_rational(other)
        a, b = max(self.zpow, other.zpow), max(self.wpow, other.wpow)
        return RationalFn(self._lift(a, b) + other._lift(a, b), a, b)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.zpow, self.wpow)

    def __sub__(self, other):
        return self + (-_as_rational(other))

    def __rsub__(self, other):
        return _as_rational(other) - self

    def __mul__(self, other):
        other = _as_rational(other)
        return RationalFn(self.num * other.num, self.zpow + other.zpow, self.wpow + other.wpow)

    __rmul__ = __mul__

    def derivative(self) -> "RationalFn":
        # d/dz [N z^-a (1-z)^-b] = [N' z(1-z) - a N (1-z) + b N z] / (z^{a+1} (1-z)^{b+1})
        z, w = Polynomial.z(), Polynomial.one_minus_z()
        N = self.num
        num = N.derivative() * z * w - self.zpow * N * w + self.wpow * N * z
        return RationalFn(num, self.zpow + 1, self.wpow + 1)

    def __call__(self, z):
        z_arr = np.asarray(z, dtype=float)
        if (self.zpow and np.any(z_arr == 0.0)) or (self.wpow and np.any(z_arr == 1.0)):
            raise PoleError(f"evaluation at a pole (z^{self.zpow}, (1-z)^{self.wpow})")
        return self.num(z_arr) / (z_arr**self.zpow * (1.0 - z_arr) ** self.wpow)

    def __repr__(self):
        return f"RationalFn({self.num!r}, zpow={self.zpow}, wpow={self.wpow})"


def _as_rational(x) -> RationalFn:
    if isinstance(x, RationalFn):
        return x
    return RationalFn(_as_poly(x))


def rational_derivative(f: RationalFn) -> RationalFn:
    return f.derivative()

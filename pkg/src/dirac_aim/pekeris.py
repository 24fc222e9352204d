"""Pekeris-type approximation of the centrifugal term.

The centrifugal factor 1/r^2 is replaced by

    g(r) = (c0 + c1 u + c2 u^2) / r_e^2,   u(r) = -e^{-2 alpha r} / (1 + q e^{-2 alpha r}),

with (c0, c1, c2) fixed by matching g to 1/r^2 in value, slope and curvature
at the equilibrium distance r_e.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qdeform import check_q


@dataclass(frozen=True)
class PekerisCoeffs:
    c0: float
    c1: float
    c2: float
    r_e: float
    q: float
    alpha: float

    @property
    def constant_part(self) -> float:
        """c0 - c1/(2 sqrt q) + c2/(2q): the r-independent share after the tanh_q rewrite."""
        rq = math.sqrt(self.q)
        return self.c0 - self.c1 / (2 * rq) + self.c2 / (2 * self.q)

    @property
    def tanh_part(self) -> float:
        rq = math.sqrt(self.q)
        return self.c1 / (2 * rq) - self.c2 / (2 * self.q)

    @property
    def sech2_part(self) -> float:
        return self.c2 / 4


@dataclass(frozen=True)
class CentrifugalStrength:
    omega: float
    ell_prime: float
    D: int


def centrifugal_omega(ell_prime: float, D: int, r_e: float) -> CentrifugalStrength:
    """omega = (l' + (D-1)/2)(l' + (D-3)/2) / r_e^2."""
    if not r_e > 0:
        raise ValueError(f"r_e must be > 0, got {r_e!r}")
    if D < 3:
        raise ValueError(f"dimension must be >= 3, got {D!r}")
    omega = (ell_prime + (D - 1) / 2) * (ell_prime + (D - 3) / 2) / r_e**2
    return CentrifugalStrength(omega=omega, ell_prime=ell_prime, D=D)


def _u_and_derivatives(q: float, alpha: float, r: float):
    x = math.exp(-2 * alpha * r)
    p = 1 + q * x
    u = -x / p
    du = 2 * alpha * x / p**2
    d2u = -4 * alpha**2 * x * (1 - q * x) / p**3
    return u, du, d2u


def pekeris_coeffs(q, alpha: float, r_e: float) -> PekerisCoeffs:
    """Solve the 3x3 matching system for (c0, c1, c2)."""
    q = check_q(q)
    if not (alpha > 0 and r_e > 0):
        raise ValueError("alpha and r_e must both be > 0")
    u, du, d2u = _u_and_derivatives(q, alpha, r_e)
    # rows: g, g', g'' at r_e (times r_e^2) against 1, -2/r_e, 6/r_e^2
    A = np.array(
        [
            [1.0, u, u * u],
            [0.0, du, 2 * u * du],
            [0.0, d2u, 2 * du * du + 2 * u * d2u],
        ]
    )
    rhs = np.array([1.0, -2.0 / r_e, 6.0 / r_e**2])
    det = np.linalg.det(A)
    assert det != 0.0, "degenerate Pekeris matching system"
    c0, c1, c2 = np.linalg.solve(A, rhs)
    return PekerisCoeffs(float(c0), float(c1), float(c2), r_e=r_e, q=q, alpha=alpha)


def pekeris_coeffs_closed_form(q, alpha: float, r_e: float) -> PekerisCoeffs:
    """Closed-form solution of the same matching conditions.

    With a = alpha r_e and X = (1 + q e^{-2a}) / (2a):

        c0 = 1 - X^2 (8a/(1 + q e^{-2a}) - (3 + 2a))
        c1 = -2 (e^{2a} + q) (3X - (3 + 2a) X^2)
        c2 = (e^{2a} + q)^2 X^2 (3 + 2a - 4a/(1 + q e^{-2a}))
    """
    q = check_q(q)
    a = alpha * r_e
    y = math.exp(2 * a)
    p = 1 + q / y
    X = p / (2 * a)
    c0 = 1 - X**2 * (8 * a / p - (3 + 2 * a))
    c1 = -2 * (y + q) * (3 * X - (3 + 2 * a) * X**2)
    c2 = (y + q) ** 2 * X**2 * (3 + 2 * a - 4 * a / p)
    return PekerisCoeffs(c0, c1, c2, r_e=r_e, q=q, alpha=alpha)


def pekeris_c0_as_printed(q, alpha: float, r_e: float) -> float:
    """c0 = 1 - X^2 * 8a/(3 + 2a), the typeset form; kept only for comparison."""
    q = check_q(q)
    a = alpha * r_e
    X = (1 + q * math.exp(-2 * a)) / (2 * a)
    return 1 - X**2 * (8 * a / (3 + 2 * a))


def pekeris_eval(coeffs: PekerisCoeffs, r):
    """g(r), the approximation to 1/r^2."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be > 0")
    x = np.exp(-2 * coeffs.alpha * r)
    u = -x / (1 + coeffs.q * x)
    g = (coeffs.c0 + coeffs.c1 * u + coeffs.c2 * u * u) / coeffs.r_e**2
    return g if g.ndim else float(g)

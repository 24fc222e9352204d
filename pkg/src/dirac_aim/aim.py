"""Asymptotic iteration method over exact rational functions.

For y'' = lambda_0 y' + s_0 y the iterates are

    lambda_k = lambda_{k-1}' + s_{k-1} + lambda_0 lambda_{k-1}
    s_k      = s_{k-1}'      + s_0 lambda_{k-1}

and eigenvalues are the zeros of delta_k = lambda_k s_{k-1} - lambda_{k-1} s_k.
Also here: the terminating 2F1 sum and the closed-form solution of the
hypergeometric template equation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .rational import PoleError, RationalFn

DEFAULT_DEGREE_CAP = 256
DEFAULT_Z0 = 0.5

Family = Callable[[float], "tuple[RationalFn, RationalFn]"]


class AimDivergence(RuntimeError):
    """Raised when iterate numerators exceed the degree cap."""


class NoSignChange(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class AimState:
    k: int
    lambda_k: RationalFn
    s_k: RationalFn


def initial_state(lambda0: RationalFn, s0: RationalFn) -> AimState:
    return AimState(0, lambda0, s0)


def aim_step(state: AimState, lambda0: RationalFn, s0: RationalFn, degree_cap: int = DEFAULT_DEGREE_CAP) -> AimState:
    lam = state.lambda_k.derivative() + state.s_k + lambda0 * state.lambda_k
    s = state.s_k.derivative() + s0 * state.lambda_k
    if max(lam.num.degree, s.num.degree) > degree_cap:
        raise AimDivergence(f"iterate degree exceeded cap {degree_cap} at k={state.k + 1}")
    return AimState(state.k + 1, lam, s)


def iterate(lambda0: RationalFn, s0: RationalFn, k: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> list[AimState]:
    """States 0..k inclusive."""
    states = [initial_state(lambda0, s0)]
    for _ in range(k):
        states.append(aim_step(states[-1], lambda0, s0, degree_cap))
    return states


def quantization_delta(state_k: AimState, state_km1: AimState, z0: float) -> float:
    if state_k.k != state_km1.k + 1:
        raise ValueError("states must be consecutive")
    try:
        return float(
            state_k.lambda_k(z0) * state_km1.s_k(z0) - state_km1.lambda_k(z0) * state_k.s_k(z0)
        )
    except PoleError as exc:
        raise PoleError(f"z0={z0} is a pole of the AIM iterates") from exc


def delta_for(family: Family, eps: float, k: int, z0: float = DEFAULT_Z0) -> float:
    lambda0, s0 = family(eps)
    states = iterate(lambda0, s0, k)
    return quantization_delta(states[k], states[k - 1], z0)


def find_eigenvalue(
    family: Family,
    n: int,
    bracket: tuple[float, float],
    z0: float = DEFAULT_Z0,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> float:
    """Root of delta_{n+1}(z0; eps) inside ``bracket``.

    Illinois-modified regula falsi: the bracket always holds a sign change,
    and an endpoint retained twice in a row has its stored value halved so
    convergence stays superlinear.  A bisection is taken whenever the
    interpolated point fails to shrink the bracket by half over two steps.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    k = n + 1
    lo, hi = map(float, bracket)
    if lo > hi:
        lo, hi = hi, lo
    f_lo, f_hi = delta_for(family, lo, k, z0), delta_for(family, hi, k, z0)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise NoSignChange(f"no sign change of delta_{k} on [{lo}, {hi}]")
    side = 0
    width_before = hi - lo
    for it in range(max_iter):
        width = hi - lo
        if width <= tol * max(1.0, abs(lo), abs(hi)):
            return lo if abs(f_lo) < abs(f_hi) else hi
        if it % 2 == 0:
            if it and width > 0.5 * width_before:
                x = 0.5 * (lo + hi)
            else:
                x = hi - f_hi * (hi - lo) / (f_hi - f_lo)
            width_before = width
        else:
            x = hi - f_hi * (hi - lo) / (f_hi - f_lo)
        if not (lo < x < hi):
            x = 0.5 * (lo + hi)
        fx = delta_for(family, x, k, z0)
        if fx == 0.0:
            return x
        if math.copysign(1.0, fx) == math.copysign(1.0, f_lo):
            lo, f_lo = x, fx
            if side == -1:
                f_hi *= 0.5
            side = -1
        else:
            hi, f_hi = x, fx
            if side == 1:
                f_lo *= 0.5
            side = 1
    raise ConvergenceError(f"no convergence in {max_iter} iterations on [{lo}, {hi}]")


def pochhammer(x, m: int):
    out = 1.0 if not isinstance(x, Fraction) else Fraction(1)
    for j in range(m):
        out = out * (x + j)
    return out


def hypergeom_2f1_terminating(n: int, b: float, c: float, z):
    """2F1(-n, b; c; z) as the finite sum over m = 0..n."""
    if n < 0 or int(n) != n:
        raise ValueError("n must be a non-negative integer")
    n = int(n)
    for m in range(n):
        if c + m == 0:
            raise ZeroDivisionError(f"(c)_m has a pole: c={c} reaches 0 at m={m}")
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for m in range(n):
        term = term * ((m - n) * (b + m) / ((c + m) * (m + 1))) * z
        total = total + term
    return total if total.ndim else float(total)


@dataclass(frozen=True)
class HypergeomTemplate:
    """y'' = 2(a z^{N+1}/(1 - b z^{N+2}) - (t+1)/z) y' - w z^N/(1 - b z^{N+2}) y."""

    a: float
    b: float
    t: float
    N: float
    w: float = 0.0

    def __post_init__(self):
        if self.N + 2 == 0:
            raise ValueError("N + 2 must be nonzero")

    @property
    def sigma(self) -> float:
        return (2 * self.t + self.N + 3) / (self.N + 2)

    @property
    def rho_t(self) -> float:
        if self.b == 0:
            raise ValueError("rho_t requires b != 0")
        return ((2 * self.t + 1) * self.b + 2 * self.a) / ((self.N + 2) * self.b)


def template_solution(tpl: HypergeomTemplate, n: int, z):
    """Unnormalized y_n(z) = (-1)^n (N+2)^n (sigma)_n 2F1(-n, rho_t + n; sigma; b z^{N+2})."""
    if n == 0:
        return np.ones_like(np.asarray(z, dtype=float)) if np.ndim(z) else 1.0
    prefactor = (-1) ** n * (tpl.N + 2) ** n * pochhammer(tpl.sigma, n)
    arg = tpl.b * np.asarray(z, dtype=float) ** (tpl.N + 2)
    return prefactor * hypergeom_2f1_terminating(n, tpl.rho_t + n, tpl.sigma, arg)

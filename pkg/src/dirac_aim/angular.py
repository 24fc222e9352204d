"""Angular separation chain for the q-deformed Scarf potentials.

Axis i (i = 1..D-1) carries the polar equation

    (1/sin^m)(sin^m P')' + [lam_i - (lam_{i-1} + (M+E) V_i(theta)) / sin^2] P = 0,   m = i - 1,

with V_i = (B - C cos_q)/sin_q^2 (times sin^2), B = b^2 + a(a-1), C = 2b(a - 1/2)
and lam_0 = 0.  Its solution is z^d (1-z)^g 2F1(...; z) with z = (1 - cos theta)/2.

Three readings of the shape exponents d, g for axes i >= 2 are supported:

``printed``
    the typeset closed forms, with lam_1 (not lam_{D-1}) inside g for axis 2
    and l_i = d + g + n_i - (i-1)/2;
``literal``
    as ``printed`` but with lam_{D-1} inside g for axis 2, solved self-consistently;
``derived``
    exponents from the indicial equation 4d^2 + 2(m-1)d = lam_{i-1} + (M+E)(B -/+ C sqrt q)/q
    and l_i = d + g + n_i, which makes each P_i an exact solution of its axis equation.

Axis 1 is identical in every reading.  In all of them lam_i = l_i (l_i + i - 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .aim import pochhammer, hypergeom_2f1_terminating
from .qdeform import check_q
from .rational import Polynomial, RationalFn

READINGS = ("printed", "literal", "derived")
DEFAULT_READING = "printed"


class AxisNotBound(ValueError):
    pass


class InadmissibleChain(ValueError):
    pass


@dataclass(frozen=True)
class ScarfParams:
    axis: int
    a: float
    b: float
    q: float = 1.0

    def __post_init__(self):
        if self.axis < 1:
            raise ValueError("axis index starts at 1")
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("Scarf strengths must be finite")
        check_q(self.q)

    @property
    def strength(self) -> float:
        """b^2 + a(a - 1)."""
        return self.b**2 + self.a * (self.a - 1)

    @property
    def coupling(self) -> float:
        """2b(a - 1/2)."""
        return 2 * self.b * (self.a - 0.5)


@dataclass(frozen=True)
class AxisSolution:
    axis: int
    delta_s: float
    gamma_s: float
    n: int
    ell: float
    lam: float
    O_s1: float | None = None

    @property
    def admissible(self) -> bool:
        return self.delta_s > 0 and self.gamma_s > 0 and self.lam >= 0


@dataclass(frozen=True)
class AngularChain:
    axes: tuple[AxisSolution, ...]
    ell_prime: float
    ME_sum: float
    reading: str = DEFAULT_READING

    @property
    def lambdas(self) -> list[float]:
        return [ax.lam for ax in self.axes]

    @property
    def admissible(self) -> bool:
        return all(ax.admissible for ax in self.axes) and self.ell_prime >= 0


def _check_reading(reading: str) -> str:
    if reading not in READINGS:
        raise ValueError(f"unknown chain reading {reading!r}; expected one of {READINGS}")
    return reading


# --- array kernels: NaN marks a point where the axis has no real exponent ---------


def _larger_root(m: int, rhs):
    """Larger root of 4d^2 + 2(m-1)d - rhs = 0."""
    disc = (m - 1) ** 2 + 4 * np.asarray(rhs, dtype=float)
    with np.errstate(invalid="ignore"):
        return np.where(disc >= 0, (-(m - 1) + np.sqrt(np.where(disc >= 0, disc, 0.0))) / 4, np.nan)


def _printed_ratio(p: ScarfParams) -> float:
    if p.coupling == 0:
        if p.strength == 0:
            return 0.0
        raise AxisNotBound(f"axis {p.axis}: ratio (b^2+a(a-1))/(2b(a-1/2)) undefined for a={p.a}, b={p.b}")
    return p.strength / p.coupling


def _half_sqrt(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(invalid="ignore"):
        return np.where(x >= 0, np.sqrt(np.where(x >= 0, x, 0.0)) / 2, np.nan)


def shape_params_array(p: ScarfParams, ME_sum, lam_prev, reading=DEFAULT_READING, lam_1=None, lam_last=None):
    """Vectorised (delta_s, gamma_s) for one axis; NaN where not bound."""
    ME_sum = np.asarray(ME_sum, dtype=float)
    i = p.axis
    if i == 1 or reading == "derived":
        rq = math.sqrt(p.q)
        minus = ME_sum * (p.strength - p.coupling * rq) / p.q
        plus = ME_sum * (p.strength + p.coupling * rq) / p.q
        base = 0.0 if i == 1 else np.asarray(lam_prev, dtype=float)
        m = i - 1
        return _larger_root(m, base + minus), _larger_root(m, base + plus)
    R = ME_sum * _printed_ratio(p)
    lam_prev = np.asarray(lam_prev, dtype=float)
    if i == 2:
        d = _half_sqrt(lam_prev + R + 0.5)
        inner = lam_1 if reading == "printed" else lam_last
        g = _half_sqrt(np.asarray(inner, dtype=float) + R + 0.5)
        return d, g
    if i == 3:
        d = _half_sqrt(lam_prev + 0.25 + R + 0.5)
        return d, d.copy()
    if i == 4:
        d = _half_sqrt(lam_prev - 0.5 + R + 0.5)
        return d, d.copy()
    raise ValueError(f"the typeset forms cover axes 1..4 only, got axis {i}")


def ell_lambda_array(axis: int, delta_s, gamma_s, n: int, reading=DEFAULT_READING):
    offset = 0.0 if (axis == 1 or reading == "derived") else (axis - 1) / 2
    ell = np.asarray(delta_s) + np.asarray(gamma_s) + n - offset
    return ell, ell * (ell + axis - 1)


def orbital_array(lam_last, D: int):
    disc = (D - 2) ** 2 + 4 * np.asarray(lam_last, dtype=float)
    with np.errstate(invalid="ignore"):
        return np.where(disc >= 0, (-(D - 2) + np.sqrt(np.where(disc >= 0, disc, 0.0))) / 2, np.nan)


def chain_arrays(params, ns, ME_sum, D: int, reading=DEFAULT_READING, max_iter: int = 200, rtol: float = 1e-13):
    """Evaluate the full chain on an array of ME_sum values.

    Returns (deltas, gammas, ells, lams, ell_prime) where the first four are
    lists with one array per axis.
    """
    _check_reading(reading)
    if len(params) != D - 1 or len(ns) != D - 1:
        raise ValueError(f"need {D - 1} axes for D={D}")
    ME_sum = np.asarray(ME_sum, dtype=float)

    def sweep(lam_last):
        deltas, gammas, ells, lams = [], [], [], []
        lam_prev = np.zeros_like(ME_sum)
        for p, n in zip(params, ns):
            d, g = shape_params_array(
                p, ME_sum, lam_prev, reading, lam_1=lams[0] if lams else None, lam_last=lam_last
            )
            ell, lam = ell_lambda_array(p.axis, d, g, n, reading)
            deltas.append(d)
            gammas.append(g)
            ells.append(ell)
            lams.append(lam)
            lam_prev = lam
        return deltas, gammas, ells, lams

    if reading == "literal" and D >= 3:
        # start from the corrected chain and iterate lam_{D-1} to a fixed point
        lam_last = sweep_printed_last(params, ns, ME_sum, D)
        for _ in range(max_iter):
            deltas, gammas, ells, lams = sweep(lam_last)
            new = lams[-1]
            with np.errstate(invalid="ignore"):
                done = np.isnan(new) | (np.abs(new - lam_last) <= rtol * np.maximum(1.0, np.abs(new)))
            lam_last = new
            if np.all(done):
                break
        else:
            lams[-1] = np.where(done, lams[-1], np.nan)
    else:
        deltas, gammas, ells, lams = sweep(None)
    return deltas, gammas, ells, lams, orbital_array(lams[-1], D)


def sweep_printed_last(params, ns, ME_sum, D):
    return chain_arrays(params, ns, ME_sum, D, reading="printed")[3][-1]


# --- scalar API -----------------------------------------------------------------


def scarf_shape_params(p: ScarfParams, ME_sum: float, lambda_prev: float = 0.0, reading=DEFAULT_READING,
                       lambda_1: float | None = None, lambda_last: float | None = None) -> tuple[float, float]:
    """(delta_s, gamma_s) for one axis; raises AxisNotBound if either is not real."""
    _check_reading(reading)
    if p.axis == 2 and reading == "printed" and lambda_1 is None:
        lambda_1 = lambda_prev
    d, g = shape_params_array(p, ME_sum, lambda_prev, reading, lam_1=lambda_1, lam_last=lambda_last)
    d, g = float(d), float(g)
    if math.isnan(d) or math.isnan(g):
        raise AxisNotBound(f"axis {p.axis} not bound at M+E={ME_sum}")
    return d, g


def angular_lambda(axis: int, delta_s: float, gamma_s: float, n: int, reading=DEFAULT_READING) -> tuple[float, float]:
    """(l_i, lam_i) for one axis."""
    _check_reading(reading)
    ell, lam = ell_lambda_array(axis, delta_s, gamma_s, n, reading)
    return float(ell), float(lam)


def orbital_from_lambda(lambda_last: float, D: int) -> float:
    """Non-negative-branch root l' of l'(l' + D - 2) = lambda_last."""
    ell = float(orbital_array(lambda_last, D))
    if math.isnan(ell):
        raise InadmissibleChain(f"lambda_{D - 1}={lambda_last} gives complex l' for D={D}")
    return ell


def angular_chain(params, ns, ME_sum: float, D: int, reading=DEFAULT_READING) -> AngularChain:
    deltas, gammas, ells, lams, ell_prime = chain_arrays(params, ns, ME_sum, D, reading)
    axes = []
    for p, n, d, g, ell, lam in zip(params, ns, deltas, gammas, ells, lams):
        d, g = float(d), float(g)
        if math.isnan(d) or math.isnan(g) or math.isnan(float(lam)):
            raise AxisNotBound(f"axis {p.axis} not bound at M+E={ME_sum} ({reading} reading)")
        O = math.sqrt(float(lam)) if p.axis == 1 else None
        axes.append(AxisSolution(p.axis, d, g, n, float(ell), float(lam), O))
    ell_prime = float(ell_prime)
    if math.isnan(ell_prime):
        raise InadmissibleChain(f"lambda_{D - 1}={axes[-1].lam} gives complex l' for D={D}")
    return AngularChain(tuple(axes), ell_prime, float(ME_sum), reading)


def angular_wavefunction(sol: AxisSolution, theta):
    """Unnormalized P_i(theta) = z^d (1-z)^g (-1)^n (c)_n 2F1(-n, 2d+2g+n+m; c; z).

    z = (1 - cos theta)/2, m = i - 1 and c = 2d + (m+1)/2.  For axis 1 this is
    the c = 2d + 1/2 form.
    """
    theta = np.asarray(theta, dtype=float)
    if np.any((theta <= 0) | (theta >= np.pi)) and (sol.delta_s < 0 or sol.gamma_s < 0):
        raise ValueError("endpoint evaluation with a negative exponent")
    m = sol.axis - 1
    z, w = np.sin(theta / 2) ** 2, np.cos(theta / 2) ** 2
    c = 2 * sol.delta_s + (m + 1) / 2
    poly = (-1) ** sol.n * pochhammer(c, sol.n) * hypergeom_2f1_terminating(
        sol.n, 2 * sol.delta_s + 2 * sol.gamma_s + sol.n + m, c, z
    )
    out = z**sol.delta_s * w**sol.gamma_s * poly
    return out if np.ndim(out) else float(out)


def angular_potential(p: ScarfParams, theta):
    """V_i(theta) = (B - C cos_q)/sin_q^2 with sin_q = sqrt(q) sin, cos_q = sqrt(q) cos."""
    rq = math.sqrt(p.q)
    return (p.strength - p.coupling * rq * np.cos(theta)) / (p.q * np.sin(theta) ** 2)


def aim_problem(delta_s: float, gamma_s: float, m: int = 0):
    """eps -> (lambda_0, s_0) of the axis equation reduced to hypergeometric form; eps is lam_i."""
    z = Polynomial.z()
    lam0 = RationalFn((2 * delta_s + 2 * gamma_s + m + 1) * z - (2 * delta_s + (m + 1) / 2), 1, 1)
    base = (delta_s + gamma_s) * (delta_s + gamma_s + m)

    def family(eps):
        return lam0, RationalFn(Polynomial.constant(base - eps), 1, 1)

    return family

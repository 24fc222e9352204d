"""Coupled bound-state problem: angular chain -> l' -> omega -> radial residual.

The angular shape exponents depend on M + E - C_s, so the energy equation is
implicit in E on both sides.  It is solved by scanning the residual on a
uniform grid, bracketing sign changes and bisecting each bracket down to
adjacent floating-point numbers.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import angular, radial
from .aim import DEFAULT_Z0, delta_for
from .pekeris import PekerisCoeffs, centrifugal_omega, pekeris_coeffs

DEFAULT_STEPS = 20_000
EDGE = 1e-6
THREADS_ENV = "DIRAC_AIM_THREADS"


class NonEvaluable(ValueError):
    """The residual is undefined at this energy (complex l', eps + 1/4 < 0, or delta + gamma = 0)."""


@dataclass(frozen=True)
class ProblemConfig:
    M: float
    V0: float
    V1: float
    alpha: float
    q: float
    r_e: float
    D: int = 3
    n: int = 0
    C_s: float = 0.0
    a: tuple = ()
    b: tuple = ()
    n_l: tuple = ()
    ell_override: float | None = None
    reading: str = angular.DEFAULT_READING

    def __post_init__(self):
        self.radial_config()  # validates M, alpha, q, D, n
        if not self.r_e > 0:
            raise ValueError(f"r_e must be > 0, got {self.r_e!r}")
        angular._check_reading(self.reading)
        if self.ell_override is None:
            k = self.D - 1
            if not (len(self.a) == len(self.b) == len(self.n_l) == k):
                raise ValueError(f"a, b and n_l need {k} entries each for D={self.D}")
            if any(n < 0 or int(n) != n for n in self.n_l):
                raise ValueError("angular quantum numbers must be non-negative integers")
        elif self.ell_override < 0:
            raise ValueError("ell_override must be >= 0")

    def radial_config(self) -> radial.RadialConfig:
        return radial.RadialConfig(
            V0=self.V0, V1=self.V1, alpha=self.alpha, q=self.q, M=self.M, C_s=self.C_s, D=self.D, n=self.n
        )

    def scarf_params(self) -> list[angular.ScarfParams]:
        return [angular.ScarfParams(i + 1, a, b, self.q) for i, (a, b) in enumerate(zip(self.a, self.b))]

    def pekeris(self) -> PekerisCoeffs:
        return pekeris_coeffs(self.q, self.alpha, self.r_e)

    def replace(self, **changes) -> "ProblemConfig":
        from dataclasses import replace

        return replace(self, **changes)


@dataclass(frozen=True)
class BoundState:
    E: float
    n: int
    n_l: tuple
    ell_prime: float
    residual: float
    shape: radial.RadialShape | None
    chain: angular.AngularChain | None
    admissible: bool
    reasons: tuple = ()
    aim_delta: float | None = None


def _omega(cfg: ProblemConfig, ell_prime):
    return (ell_prime + (cfg.D - 1) / 2) * (ell_prime + (cfg.D - 3) / 2) / cfg.r_e**2


def ell_prime_grid(cfg: ProblemConfig, E):
    """l' on an array of energies (NaN where the chain has no real solution)."""
    E = np.asarray(E, dtype=float)
    if cfg.ell_override is not None:
        return np.full_like(E, float(cfg.ell_override))
    ME = cfg.M + E - cfg.C_s
    return angular.chain_arrays(cfg.scarf_params(), cfg.n_l, ME, cfg.D, cfg.reading)[4]


def _residual_chunk(cfg, coeffs, E):
    omega = _omega(cfg, ell_prime_grid(cfg, E))
    return radial.residual_arrays(cfg.radial_config(), E, omega, coeffs)


def thread_count(threads: int | None = None) -> int:
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, int(threads))


def residual_grid(cfg: ProblemConfig, E, threads: int | None = None):
    """Signed residual on an array of energies; NaN marks non-evaluable points."""
    E = np.atleast_1d(np.asarray(E, dtype=float))
    coeffs = cfg.pekeris()
    workers = thread_count(threads)
    if workers == 1 or E.size < 2 * workers:
        return _residual_chunk(cfg, coeffs, E)
    chunks = np.array_split(E, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda c: _residual_chunk(cfg, coeffs, c), chunks))
    return np.concatenate(parts)


def residual_at(cfg: ProblemConfig, E: float) -> float:
    value = float(_residual_chunk(cfg, cfg.pekeris(), np.array([float(E)]))[0])
    if math.isnan(value):
        raise NonEvaluable(f"residual undefined at E={E}")
    return value


def _bisect(cfg, coeffs, lo, hi, f_lo):
    """Shrink [lo, hi] to adjacent doubles; returns (E, residual) or None if a NaN appears."""
    f_hi = None
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = float(_residual_chunk(cfg, coeffs, np.array([mid]))[0])
        if math.isnan(fm):
            return None
        if fm == 0.0:
            return mid, 0.0
        if math.copysign(1.0, fm) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, fm
        else:
            hi, f_hi = mid, fm
    if f_hi is None:
        f_hi = float(_residual_chunk(cfg, coeffs, np.array([hi]))[0])
    return (lo, f_lo) if abs(f_lo) <= abs(f_hi) else (hi, f_hi)


def residual_tolerance(cfg: ProblemConfig) -> float:
    return 1e-9 * cfg.M**2


def describe_state(cfg: ProblemConfig, E: float, residual: float, z0: float = DEFAULT_Z0) -> BoundState:
    """Assemble a BoundState at E with its admissibility verdict."""
    reasons = []
    chain = None
    if cfg.ell_override is None:
        try:
            chain = angular.angular_chain(cfg.scarf_params(), cfg.n_l, cfg.M + E - cfg.C_s, cfg.D, cfg.reading)
            ell_prime = chain.ell_prime
            if not chain.admissible:
                reasons.append("angular exponents or separation constants not positive")
        except (angular.AxisNotBound, angular.InadmissibleChain) as exc:
            reasons.append(str(exc))
            ell_prime = float("nan")
    else:
        ell_prime = float(cfg.ell_override)
    rcfg = cfg.radial_config()
    coeffs = cfg.pekeris()
    omega = centrifugal_omega(ell_prime, cfg.D, cfg.r_e).omega if math.isfinite(ell_prime) else float("nan")
    shape = None
    aim_delta = None
    try:
        shape = radial.substituted_params(rcfg, E, omega, coeffs)
    except radial.NotBoundAtEnergy as exc:
        reasons.append(str(exc))
    if shape is not None:
        if not (shape.delta > 0 and shape.gamma > 0):
            reasons.append("radial exponents not positive")
        if shape.eps_n + 0.25 < 0:
            reasons.append("eps + 1/4 < 0")
        else:
            s = math.sqrt(shape.eps_n + 0.25) - cfg.n - 0.5
            if abs((shape.delta + shape.gamma) - s) > 1e-6 * max(1.0, abs(s)):
                reasons.append("delta + gamma differs from the quantized sum (wrong-sign branch)")
        try:
            aim_delta = delta_for(radial.aim_problem(shape.delta, shape.gamma), shape.eps_n, cfg.n + 1, z0)
        except ZeroDivisionError:
            aim_delta = None
    if not cfg.M + E - cfg.C_s > 0:
        reasons.append("M + E - C_s <= 0")
    if not abs(E) < cfg.M:
        reasons.append("|E| >= M")
    if not abs(residual) <= residual_tolerance(cfg):
        reasons.append("residual above tolerance")
    return BoundState(
        E=E,
        n=cfg.n,
        n_l=tuple(cfg.n_l),
        ell_prime=ell_prime,
        residual=residual,
        shape=shape,
        chain=chain,
        admissible=not reasons,
        reasons=tuple(reasons),
        aim_delta=aim_delta,
    )


def find_roots(cfg: ProblemConfig, E_min: float | None = None, E_max: float | None = None,
               steps: int = DEFAULT_STEPS, threads: int | None = None) -> list[tuple[float, float]]:
    """All (E, residual) zeros of the residual on the window, in increasing E.

    A sign change whose bisection does not drive the residual to tolerance is
    a discontinuity rather than a root and is dropped.
    """
    lo = -cfg.M + EDGE if E_min is None else float(E_min)
    hi = cfg.M - EDGE if E_max is None else float(E_max)
    if not hi > lo:
        raise ValueError(f"empty energy window [{lo}, {hi}]")
    if steps < 2:
        raise ValueError("need at least two scan points")
    grid = np.linspace(lo, hi, steps)
    values = residual_grid(cfg, grid, threads)
    coeffs = cfg.pekeris()
    roots = []
    finite = np.isfinite(values)
    exact = np.flatnonzero(finite & (values == 0.0))
    roots.extend((float(grid[i]), 0.0) for i in exact)
    sign = np.sign(values)
    idx = np.flatnonzero(finite[:-1] & finite[1:] & (sign[:-1] * sign[1:] < 0))
    for i in idx:
        hit = _bisect(cfg, coeffs, float(grid[i]), float(grid[i + 1]), float(values[i]))
        if hit is None:
            continue
        E, res = hit
        if abs(res) <= max(residual_tolerance(cfg), 1e-12 * min(abs(values[i]), abs(values[i + 1]))):
            roots.append((E, res))
    return sorted(roots)


def solve_bound_states(cfg: ProblemConfig, E_min: float | None = None, E_max: float | None = None,
                       steps: int = DEFAULT_STEPS, diagnostics: bool = False, threads: int | None = None,
                       z0: float = DEFAULT_Z0) -> list[BoundState]:
    """Admissible bound states in the window; with ``diagnostics`` every root is returned, flagged."""
    states = [describe_state(cfg, E, res, z0) for E, res in find_roots(cfg, E_min, E_max, steps, threads)]
    return states if diagnostics else [s for s in states if s.admissible]


def kappa_of(ell: int, j: float) -> int:
    """K = -l - 1 for j = l + 1/2 and K = l for j = l - 1/2."""
    if ell < 0 or int(ell) != ell:
        raise ValueError("l must be a non-negative integer")
    if j == ell + 0.5:
        return -ell - 1
    if j == ell - 0.5 and ell > 0:
        return ell
    raise ValueError(f"j={j} is not l +/- 1/2 for l={ell}")


def ell_of_kappa(K: int) -> int:
    """Orbital number carried by the upper component: K(K+1) = l(l+1)."""
    if K == 0 or int(K) != K:
        raise ValueError("K must be a nonzero integer")
    return K if K > 0 else -K - 1


def doublet_states(ell: int, n: int, cfg: ProblemConfig, **solve_kwargs):
    """States of the (l, j = l + 1/2) and (l, j = l - 1/2) partners without non-central terms."""
    out = []
    for j in (ell + 0.5, ell - 0.5):
        K = kappa_of(ell, j)
        sub = cfg.replace(ell_override=float(ell_of_kappa(K)), n=n, a=(), b=(), n_l=())
        out.append(solve_bound_states(sub, **solve_kwargs))
    return tuple(out)


def doublet_energies(ell: int, n: int, cfg: ProblemConfig, **solve_kwargs) -> tuple[float, float]:
    """(E_aligned, E_antialigned): lowest state of each partner, NaN if none."""
    aligned, anti = doublet_states(ell, n, cfg, **solve_kwargs)
    pick = lambda states: states[0].E if states else float("nan")  # noqa: E731
    return pick(aligned), pick(anti)

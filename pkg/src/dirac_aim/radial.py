"""Radial equation for the q-deformed Rosen-Morse well under spin symmetry.

With the Pekeris form of the centrifugal term and z = (1 - tanh_q(alpha r))/2
the radial equation becomes hypergeometric.  The effective constants are

    alpha^2 E'        = -(omega K + (M + E - C_s)(M - E)),   K = c0 - c1/(2 sqrt q) + c2/(2q)
    alpha^2 rho       = omega (c1/(2 sqrt q) - c2/(2q)) + V1 (M + E - C_s)
    alpha^2 nu(nu+1)  = omega c2/4 + V0 (M + E - C_s)

and the shape exponents are 4 delta^2 = rho - E', 4 gamma^2 = -rho - E'.
Quantization is eps = nu(nu+1)/q = (delta + gamma + n)(delta + gamma + n + 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .aim import hypergeom_2f1_terminating, pochhammer
from .pekeris import PekerisCoeffs
from .qdeform import check_q, tanh_q
from .rational import Polynomial, RationalFn


class NotBoundAtEnergy(ValueError):
    pass


class QuantizationPole(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class RadialConfig:
    V0: float
    V1: float
    alpha: float
    q: float
    M: float
    C_s: float = 0.0
    D: int = 3
    n: int = 0

    def __post_init__(self):
        check_q(self.q)
        if not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha!r}")
        if not self.M > 0:
            raise ValueError(f"M must be > 0, got {self.M!r}")
        if self.D < 3:
            raise ValueError(f"D must be >= 3, got {self.D!r}")
        if self.n < 0 or int(self.n) != self.n:
            raise ValueError(f"n must be a non-negative integer, got {self.n!r}")


@dataclass(frozen=True)
class RadialShape:
    E_prime: float
    rho: float
    nu_nu1: float
    delta: float
    gamma: float
    eps_n: float


def _coupling(cfg: RadialConfig, E):
    return cfg.M + E - cfg.C_s


def substituted_arrays(cfg: RadialConfig, E, omega, coeffs: PekerisCoeffs):
    """(E', rho, nu(nu+1), eps) on arrays of E and omega."""
    E = np.asarray(E, dtype=float)
    omega = np.asarray(omega, dtype=float)
    a2 = cfg.alpha**2
    ME = _coupling(cfg, E)
    E_prime = -(omega * coeffs.constant_part + ME * (cfg.M - E)) / a2
    rho = (omega * coeffs.tanh_part + cfg.V1 * ME) / a2
    nu_nu1 = (omega * coeffs.sech2_part + cfg.V0 * ME) / a2
    return E_prime, rho, nu_nu1, nu_nu1 / cfg.q


def substituted_params(cfg: RadialConfig, E: float, omega: float, coeffs: PekerisCoeffs) -> RadialShape:
    E_prime, rho, nu_nu1, eps = (float(v) for v in substituted_arrays(cfg, E, omega, coeffs))
    if rho - E_prime < 0 or -rho - E_prime < 0:
        raise NotBoundAtEnergy(
            f"E={E}: 4delta^2={rho - E_prime:.6g}, 4gamma^2={-rho - E_prime:.6g}; no real exponents"
        )
    return RadialShape(
        E_prime=E_prime,
        rho=rho,
        nu_nu1=nu_nu1,
        delta=math.sqrt(rho - E_prime) / 2,
        gamma=math.sqrt(-rho - E_prime) / 2,
        eps_n=eps,
    )


def _split_term(rho, s):
    """rho^2/(4 s^2); zero when rho vanishes identically (delta = gamma), NaN on the s = 0 pole otherwise."""
    rho, s = np.broadcast_arrays(np.asarray(rho, dtype=float), np.asarray(s, dtype=float))
    with np.errstate(invalid="ignore", divide="ignore"):
        out = rho**2 / (4 * s**2)
    out = np.where(rho == 0, 0.0, np.where(s == 0, np.nan, out))
    return out if out.ndim else float(out)


def residual_arrays(cfg: RadialConfig, E, omega, coeffs: PekerisCoeffs):
    """Vectorised energy residual; NaN where eps + 1/4 < 0 or on the s = 0 pole."""
    E = np.asarray(E, dtype=float)
    _, rho, _, eps = substituted_arrays(cfg, E, omega, coeffs)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.sqrt(eps + 0.25) - cfg.n - 0.5
        split = _split_term(rho, s)
        bracket = cfg.alpha**2 * (split + s**2) - np.asarray(omega) * coeffs.constant_part
    return _coupling(cfg, E) * (cfg.M - E) - bracket


def energy_residual(cfg: RadialConfig, E: float, omega: float, coeffs: PekerisCoeffs) -> float:
    """(M+E-C_s)(M-E) - {alpha^2 [rho^2/(4 s^2) + s^2] - omega K},  s = sqrt(eps + 1/4) - n - 1/2."""
    _, rho, _, eps = (float(v) for v in substituted_arrays(cfg, E, omega, coeffs))
    if eps + 0.25 < 0:
        raise NotBoundAtEnergy(f"E={E}: eps + 1/4 = {eps + 0.25:.6g} < 0")
    s = math.sqrt(eps + 0.25) - cfg.n - 0.5
    if s == 0 and rho != 0:
        raise QuantizationPole(f"E={E}: delta + gamma = 0")
    return float(_coupling(cfg, E) * (cfg.M - E)) - (
        cfg.alpha**2 * (_split_term(rho, s) + s**2) - omega * coeffs.constant_part
    )


def energy_residual_via_exponents(cfg: RadialConfig, E: float, omega: float, coeffs: PekerisCoeffs) -> float:
    """Same residual reached through the exponents.

    x = delta + gamma + n + 1 solves x^2 - x = eps; delta and gamma then follow
    from delta + gamma = s and delta^2 - gamma^2 = rho/2, and the quantized
    E' = -2(delta^2 + gamma^2) is compared with the energy-defined one.
    """
    _, rho, _, eps = (float(v) for v in substituted_arrays(cfg, E, omega, coeffs))
    if eps + 0.25 < 0:
        raise NotBoundAtEnergy(f"E={E}: eps + 1/4 < 0")
    x = 0.5 + math.sqrt(0.25 + eps)
    s = x - cfg.n - 1
    if s == 0 and rho != 0:
        raise QuantizationPole(f"E={E}: delta + gamma = 0")
    diff = 0.0 if rho == 0 else rho / (2 * s)
    delta = (s + diff) / 2
    gamma = (s - diff) / 2
    quantized = 2 * cfg.alpha**2 * (delta**2 + gamma**2) - omega * coeffs.constant_part
    return float(_coupling(cfg, E) * (cfg.M - E)) - quantized


def radial_z(cfg: RadialConfig, r):
    """(z, 1 - z) with z = (1 - tanh_q(alpha r))/2, each formed without cancellation."""
    t = 2 * cfg.alpha * np.asarray(r, dtype=float) - math.log(cfg.q)
    with np.errstate(over="ignore"):
        return 1 / (1 + np.exp(t)), 1 / (1 + np.exp(-t))


def wavefunction_in_z(shape: RadialShape, n: int, z, w=None):
    """F_n as a function of z in (0, 1), which covers the whole line -inf < r < inf."""
    z = np.asarray(z, dtype=float)
    w = 1 - z if w is None else np.asarray(w, dtype=float)
    d, g = shape.delta, shape.gamma
    poly = (-1) ** n * pochhammer(2 * d + 1, n) * hypergeom_2f1_terminating(n, 2 * d + 2 * g + n + 1, 2 * d + 1, z)
    out = z**d * w**g * poly
    return out if out.ndim else float(out)


def radial_wavefunction(shape: RadialShape, cfg: RadialConfig, n: int, r):
    """F_n = z^delta (1-z)^gamma (-1)^n (2delta+1)_n 2F1(-n, 2delta+2gamma+n+1; 2delta+1; z)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be > 0")
    z, w = radial_z(cfg, r)
    return wavefunction_in_z(shape, n, z, w)


def radial_equation_coefficient(shape: RadialShape, cfg: RadialConfig, r):
    """k(r) with F'' = k(r) F, i.e. k = -alpha^2 [E' - rho tanh_q + nu(nu+1) sech_q^2]."""
    x = cfg.alpha * np.asarray(r, dtype=float)
    t = tanh_q(cfg.q, x)
    sech2 = (1 - t**2) / cfg.q  # tanh_q^2 + q sech_q^2 = 1
    return -cfg.alpha**2 * (shape.E_prime - shape.rho * t + shape.nu_nu1 * sech2)


def shape_from_exponents(delta: float, gamma: float, n: int, q: float) -> RadialShape:
    """The RadialShape whose quantization condition holds for level n."""
    eps = (delta + gamma + n) * (delta + gamma + n + 1)
    return RadialShape(
        E_prime=-2 * (delta**2 + gamma**2),
        rho=2 * (delta**2 - gamma**2),
        nu_nu1=q * eps,
        delta=delta,
        gamma=gamma,
        eps_n=eps,
    )


def aim_problem(delta: float, gamma: float):
    """eps -> (lambda_0, s_0) of the reduced radial equation."""
    z = Polynomial.z()
    lam0 = RationalFn((2 * delta + 2 * gamma + 2) * z - (2 * delta + 1), 1, 1)
    base = (delta + gamma) * (delta + gamma + 1)

    def family(eps):
        return lam0, RationalFn(Polynomial.constant(base - eps), 1, 1)

    return family

"""q-deformed hyperbolic and trigonometric functions.

Hyperbolic forms follow the exponential definitions

    sinh_q x = (e^x - q e^-x) / 2,    cosh_q x = (e^x + q e^-x) / 2,

so that cosh_q^2 - sinh_q^2 = q.  The trigonometric forms are the real
valued ones, sin_q = sqrt(q) sin and cos_q = sqrt(q) cos, which obey
sin_q^2 + cos_q^2 = q.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HYPERBOLIC_KINDS = ("sinh", "cosh", "tanh", "sech")
TRIG_KINDS = ("sin", "cos", "tan", "sec")


@dataclass(frozen=True)
class Deformation:
    """Deformation parameter q (must be strictly positive)."""

    q: float

    def __post_init__(self):
        check_q(self.q)

    def __float__(self):
        return float(self.q)


def check_q(q) -> float:
    q = float(q)
    if not math.isfinite(q) or q <= 0.0:
        raise ValueError(f"deformation parameter q must be finite and > 0, got {q!r}")
    return q


def _as_q(q) -> float:
    return check_q(q.q if isinstance(q, Deformation) else q)


def sinh_q(q, x):
    q = _as_q(q)
    return 0.5 * (np.exp(x) - q * np.exp(-x))


def cosh_q(q, x):
    q = _as_q(q)
    return 0.5 * (np.exp(x) + q * np.exp(-x))


def tanh_q(q, x):
    # (1 - q e^{-2x}) / (1 + q e^{-2x}) avoids overflow of e^x for large x
    q = _as_q(q)
    t = q * np.exp(-2.0 * np.asarray(x, dtype=float))
    out = (1.0 - t) / (1.0 + t)
    return out if np.ndim(out) else float(out)


def sech_q(q, x):
    return 1.0 / cosh_q(q, x)


def deformed_hyperbolic(kind: str, q, x):
    """Evaluate one of sinh_q, cosh_q, tanh_q, sech_q at ``x``."""
    if np.any(~np.isfinite(np.asarray(x, dtype=float))):
        raise ValueError("argument must be finite")
    funcs = {"sinh": sinh_q, "cosh": cosh_q, "tanh": tanh_q, "sech": sech_q}
    try:
        f = funcs[kind]
    except KeyError:
        raise ValueError(f"unknown hyperbolic kind {kind!r}; expected one of {HYPERBOLIC_KINDS}") from None
    return f(q, x)


def deformed_trig(kind: str, q, theta):
    """Evaluate sin_q, cos_q, tan_q or sec_q at ``theta``."""
    q = _as_q(q)
    root = math.sqrt(q)
    if kind == "sin":
        return root * np.sin(theta)
    if kind == "cos":
        return root * np.cos(theta)
    if kind == "tan":
        return np.tan(theta)
    if kind == "sec":
        return 1.0 / (root * np.cos(theta))
    raise ValueError(f"unknown trigonometric kind {kind!r}; expected one of {TRIG_KINDS}")


def deformation_shift(q, alpha: float) -> float:
    """Spatial translation ln(sqrt q)/alpha mapping deformed onto scaled standard functions.

    With ``dr = deformation_shift(q, alpha)``,
    ``sinh_q(alpha*(r + dr)) == sqrt(q) * sinh(alpha*r)`` and likewise for cosh.
    """
    q = _as_q(q)
    if not alpha > 0:
        raise ValueError(f"alpha must be > 0, got {alpha!r}")
    return math.log(math.sqrt(q)) / alpha

"""Real-argument gamma-family primitives.

Scalar entry points validate their argument and raise :class:`DomainError` /
:class:`RangeError`; the ``*_array`` helpers are the unchecked vectorised
versions used by the series code.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import special as sc

from .errors import DomainError, RangeError

EULER_MASCHERONI = 0.57721566490153286
POLE_TOL = 1e-12
LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def is_pole(x: float) -> bool:
    """True when ``x`` is within ``POLE_TOL`` of a non-positive integer."""
    if x > POLE_TOL:
        return False
    return abs(x - round(x)) <= POLE_TOL


def gamma(x: float) -> float:
    x = float(x)
    if is_pole(x):
        raise DomainError(f"gamma: pole at x={x!r}")
    val = float(sc.gamma(x))
    if math.isinf(val):
        sign = 1 if x > 0 else int(math.copysign(1.0, val))
        raise RangeError(f"gamma({x!r}) overflows double precision", sign=sign)
    return val


def log_gamma(x: float) -> float:
    """ln Γ(x) for x > 0."""
    x = float(x)
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return float(sc.gammaln(x))


def recip_gamma(x: float) -> float:
    """1/Γ(x); an entire function, exactly zero at the poles of Γ."""
    x = float(x)
    if is_pole(x):
        return 0.0
    return float(sc.rgamma(x))


def digamma(x: float) -> float:
    x = float(x)
    if not x > 0:
        raise DomainError(f"digamma requires x > 0, got {x!r}")
    return float(sc.psi(x))


def pochhammer(g: float, k: int) -> float:
    """Rising factorial (g)_k = Γ(g+k)/Γ(g) for g > 0."""
    g = float(g)
    if not g > 0:
        raise DomainError(f"pochhammer requires g > 0, got {g!r}")
    if k < 0 or int(k) != k:
        raise DomainError(f"pochhammer requires a non-negative integer k, got {k!r}")
    k = int(k)
    if k <= 32:
        # short products are exact to a few ulp; log differencing is not
        out = 1.0
        for j in range(k):
            out *= g + j
        if math.isinf(out):
            raise RangeError(f"pochhammer({g!r}, {k}) overflows", sign=1)
        return out
    logval = sc.gammaln(g + k) - sc.gammaln(g)
    if logval > 709.78:
        raise RangeError(f"pochhammer({g!r}, {k}) overflows", sign=1)
    return float(math.exp(logval))


def stirling_log_gamma(x, shift=0.0):
    """Leading Stirling estimate of ln Γ(x + shift) built around ``x``.

    Mirrors Γ(αk+β) ≈ √(2π) (αk)^(αk+β-1/2) e^(-αk) with x = αk, shift = β.
    """
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return LOG_SQRT_2PI + (x + shift - 0.5) * np.log(x) - x


# -- vectorised helpers (no validation) ------------------------------------

def log_abs_gamma_array(x):
    """ln|Γ(x)| and sign(Γ(x)) elementwise; poles give (+inf, 0)."""
    x = np.asarray(x, dtype=float)
    logabs = sc.gammaln(x)
    sign = sc.gammasgn(x)
    pole = (x <= 0) & (x == np.round(x))
    logabs = np.where(pole, np.inf, logabs)
    sign = np.where(pole, 0.0, sign)
    return logabs, sign


def digamma_array(x):
    return sc.psi(np.asarray(x, dtype=float))


def log_pochhammer_array(g, k):
    """ln|(g)_k| and its sign for real g (any sign) and integer array k."""
    k = np.asarray(k, dtype=float)
    if g > 0:
        return sc.gammaln(g + k) - sc.gammaln(g), np.ones_like(k)
    # g <= 0: explicit cumulative product keeps sign and exact zeros
    kmax = int(k.max()) if k.size else 0
    factors = g + np.arange(kmax, dtype=float)
    logs = np.concatenate(([0.0], np.cumsum(np.log(np.abs(np.where(factors == 0, 1.0, factors))))))
    signs = np.concatenate(([1.0], np.cumprod(np.sign(factors))))
    idx = k.astype(int)
    return logs[idx], signs[idx]

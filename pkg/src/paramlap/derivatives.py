"""Parameter derivatives of the time-domain profiles.

The series converge uniformly in each order parameter, so the derivative is
taken term by term.  Writing a profile as ``pref(t) Σ c_k z(t)^k`` the
derivative in a parameter θ is

    pref(t) Σ c_k z^k [∂θ ln c_k + ln t · ∂θ e_k]

where ``e_k`` is the power of t carried by term k.  ``deriv_fd_oracle`` is an
independent check that only ever calls :func:`profile_array`.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import special as sc

from .errors import DomainError
from .series import (
    FunctionFamily,
    ParamSet,
    ProfileMode,
    SeriesValue,
    _Coeffs,
    _check_tol,
    _profile_parts,
    _weighted_sum,
    check_cancellation,
    profile_array,
)


class Wrt(str, Enum):
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"
    ALPHA1 = "alpha1"
    BETA1 = "beta1"
    ALPHA2 = "alpha2"
    BETA2 = "beta2"


# ParamSet field perturbed by each differentiation variable
WRT_FIELD = {
    Wrt.ALPHA: "alpha",
    Wrt.BETA: "beta",
    Wrt.GAMMA: "gamma",
    Wrt.ALPHA1: "alpha",
    Wrt.BETA1: "beta",
    Wrt.ALPHA2: "alpha2",
    Wrt.BETA2: "beta2",
}

F = FunctionFamily
ALLOWED = {
    F.ML2: {Wrt.ALPHA, Wrt.BETA},
    F.PRABHAKAR: {Wrt.ALPHA, Wrt.BETA, Wrt.GAMMA},
    F.ML4: {Wrt.ALPHA1, Wrt.BETA1, Wrt.ALPHA2, Wrt.BETA2},
    F.WRIGHT: {Wrt.ALPHA, Wrt.BETA},
    F.LEROY: {Wrt.ALPHA, Wrt.BETA, Wrt.GAMMA},
    F.LEROY_CLASSICAL: {Wrt.GAMMA},
    F.BESSEL_I0: set(),
}


@dataclass(frozen=True)
class DerivTarget:
    family: FunctionFamily
    wrt: Wrt
    mode: ProfileMode | None = None

    def __post_init__(self):
        fam = FunctionFamily(self.family)
        wrt = Wrt(self.wrt)
        if fam is F.ML4:
            wrt = {Wrt.ALPHA: Wrt.ALPHA1, Wrt.BETA: Wrt.BETA1}.get(wrt, wrt)
        if wrt not in ALLOWED[fam]:
            raise DomainError(f"{fam.value} has no parameter {wrt.value}")
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "wrt", wrt)
        if self.mode is not None:
            object.__setattr__(self, "mode", ProfileMode(self.mode))

    def params(self, p: ParamSet) -> ParamSet:
        return p if self.mode is None or self.mode is p.mode else p.with_(mode=self.mode)


def _coeff_weight(co: _Coeffs, wrt: Wrt, k):
    """∂ ln|c_k| / ∂θ."""
    fam = co.family
    if wrt is Wrt.GAMMA:
        if fam is F.PRABHAKAR:
            return sc.psi(co.gamma + k) - sc.psi(co.gamma)
        if fam is F.LEROY:
            return -sc.gammaln(co.alpha * k + co.beta)
        if fam is F.LEROY_CLASSICAL:
            return -sc.gammaln(k + 1.0)
    if wrt in (Wrt.ALPHA2, Wrt.BETA2):
        psi2 = sc.psi(co.alpha2 * k + co.beta2)
        return -k * psi2 if wrt is Wrt.ALPHA2 else -psi2
    power = co.gamma if fam is F.LEROY else 1.0
    psi1 = sc.psi(co.alpha * k + co.beta)
    if wrt in (Wrt.ALPHA, Wrt.ALPHA1):
        return -power * k * psi1
    return -power * psi1


def _exponent_weight(mode: ProfileMode, wrt: Wrt, k):
    """∂ e_k / ∂θ, the multiplier of ln t."""
    if mode is ProfileMode.BETA:
        if wrt in (Wrt.ALPHA, Wrt.ALPHA1):
            return k
        if wrt in (Wrt.BETA, Wrt.BETA1):
            return np.ones_like(k)
    if mode is ProfileMode.GAMMA and wrt is Wrt.GAMMA:
        return np.ones_like(k)
    return np.zeros_like(k)


def deriv_array(target: DerivTarget, p: ParamSet, t, tol: float = 1e-13, with_rounding=False):
    """Vectorised term-wise derivative of the profile at an array of t."""
    p = target.params(p)
    p.validate(target.family)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    pref, z = _profile_parts(target.family, p, t)
    co = _Coeffs.from_params(target.family, p)
    logt = np.log(t)

    def weight(K):
        k = np.arange(K, dtype=float)
        return _coeff_weight(co, target.wrt, k)[None, :] + logt[:, None] * _exponent_weight(p.mode, target.wrt, k)[None, :]

    out = _weighted_sum(co, z, tol, weight=weight, with_rounding=with_rounding)
    vals = pref * out[0]
    if with_rounding:
        return vals, out[1], pref * out[2], np.abs(pref) * out[3]
    return vals


def deriv_series(target: DerivTarget, p: ParamSet, t: float, tol: float = 1e-12) -> SeriesValue:
    """Term-wise differentiated series of the profile at a single t > 0."""
    _check_tol(tol)
    if not t > 0:
        raise DomainError("deriv_series requires t > 0")
    vals, n, tails, rnd = deriv_array(target, p, [t], tol, with_rounding=True)
    check_cancellation(vals[0], rnd[0], tol, "derivative series")
    return SeriesValue(float(vals[0]), n, float(abs(tails[0])))


def default_step(target: DerivTarget, p: ParamSet) -> float:
    value = getattr(target.params(p), WRT_FIELD[target.wrt])
    return 1e-4 * max(1.0, abs(value))


def deriv_fd_oracle(target: DerivTarget, p: ParamSet, t: float, h: float | None = None,
                    tol: float = 1e-15) -> float:
    """Central difference with one Richardson step (steps h and h/2)."""
    p = target.params(p)
    if h is None:
        h = default_step(target, p)
    if not h > 0:
        raise DomainError("step h must be positive")
    name = WRT_FIELD[target.wrt]
    x0 = getattr(p, name)
    if x0 is None:
        raise DomainError(f"parameter {name} is not set")
    ts = np.array([float(t)])

    def central(step):
        try:
            up = p.with_(**{name: x0 + step})
            down = p.with_(**{name: x0 - step})
        except DomainError as exc:
            raise DomainError(f"finite-difference step leaves the domain: {exc}") from None
        fu = profile_array(target.family, up, ts, tol)[0]
        fd = profile_array(target.family, down, ts, tol)[0]
        return (fu - fd) / (2.0 * step)

    d1 = central(h)
    d2 = central(0.5 * h)
    return float((4.0 * d2 - d1) / 3.0)


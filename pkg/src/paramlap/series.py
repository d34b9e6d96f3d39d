"""Truncation-controlled power series of Mittag-Leffler type.

Every family is a power series ``sum_k c_k z^k`` whose coefficient is a
product of reciprocal gamma factors.  Coefficients are handled as
``(log|c_k|, sign c_k)`` so that Γ(αk+β) beyond 171 never overflows and
alternating series (λ < 0) keep their signs.

Truncation: with terms ``m_k = log|term_k|`` the coefficient sequences are
eventually log-concave (Stirling growth of Γ), so once the term ratio drops
below one it keeps decreasing and the tail after index N is bounded by the
geometric series ``|term_{N+1}| / (1 - ρ)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np
from scipy import special as sc

from .errors import DomainError, RangeError
from .gamma_kernel import log_abs_gamma_array, log_pochhammer_array, stirling_log_gamma

# bound must beat tol by this factor; absorbs the o(1) in the Stirling estimate
TAIL_SAFETY = 10.0
MAX_TERMS = 20000
LOG_MAX = 709.0
EPS = np.finfo(float).eps


class FunctionFamily(str, Enum):
    ML2 = "ml2"
    PRABHAKAR = "prabhakar"
    ML4 = "ml4"
    WRIGHT = "wright"
    LEROY = "leroy"
    LEROY_CLASSICAL = "leroy_classical"
    BESSEL_I0 = "bessel_i0"


class ProfileMode(str, Enum):
    """Shape of the time-domain subject built from a series.

    BETA   t^(β-1) f(λ t^α)      (ML4: t^(β1-1) f(λ t^α1))
    GAMMA  t^(γ-1) f(λ t)
    PLAIN  f(λ t)
    """

    BETA = "beta"
    GAMMA = "gamma"
    PLAIN = "plain"


# parameters each family actually reads
FAMILY_PARAMS = {
    FunctionFamily.ML2: ("alpha", "beta"),
    FunctionFamily.PRABHAKAR: ("alpha", "beta", "gamma"),
    FunctionFamily.ML4: ("alpha", "beta", "alpha2", "beta2"),
    FunctionFamily.WRIGHT: ("alpha", "beta"),
    FunctionFamily.LEROY: ("alpha", "beta", "gamma"),
    FunctionFamily.LEROY_CLASSICAL: ("gamma",),
    FunctionFamily.BESSEL_I0: (),
}


@dataclass(frozen=True)
class ParamSet:
    """Parameter tuple shared by all families.

    ``alpha``/``beta`` double as α₁/β₁ for the four-parameter family.
    ``r`` is only read by the auxiliary log-power integral.
    """

    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    lam: float = 0.0
    alpha2: float | None = None
    beta2: float | None = None
    mode: ProfileMode = ProfileMode.BETA
    r: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "mode", ProfileMode(self.mode))
        for name in ("alpha", "beta", "gamma", "alpha2", "beta2"):
            v = getattr(self, name)
            if v is None:
                continue
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite")
            if v <= 0:
                raise DomainError(f"{name} must be positive")
        if not math.isfinite(self.lam):
            raise DomainError("lambda must be finite")
        if self.r is not None and not self.r > -1:
            raise DomainError("r must exceed -1")

    def validate(self, family: FunctionFamily) -> "ParamSet":
        family = FunctionFamily(family)
        if family is FunctionFamily.ML4 and (self.alpha2 is None or self.beta2 is None):
            raise DomainError("ml4 requires alpha2 and beta2")
        return self

    def with_(self, **changes) -> "ParamSet":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        out = {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma, "lambda": self.lam}
        if self.alpha2 is not None:
            out["alpha2"] = self.alpha2
        if self.beta2 is not None:
            out["beta2"] = self.beta2
        if self.mode is not ProfileMode.BETA:
            out["mode"] = self.mode.value
        if self.r is not None:
            out["r"] = self.r
        return out


@dataclass(frozen=True)
class SeriesValue:
    value: float
    terms_used: int
    tail_bound: float


@dataclass
class _Coeffs:
    """Raw series parameters; unlike ParamSet these may be zero or negative."""

    family: FunctionFamily
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    alpha2: float = 1.0
    beta2: float = 1.0
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_params(cls, family, p: ParamSet):
        family = FunctionFamily(family)
        return cls(family, p.alpha, p.beta, p.gamma,
                   p.alpha2 if p.alpha2 is not None else 1.0,
                   p.beta2 if p.beta2 is not None else 1.0)

    def log_coeffs(self, K: int):
        """(log|c_k|, sign c_k) for k = 0..K-1."""
        hit = self._cache.get(K)
        if hit is not None:
            return hit
        k = np.arange(K, dtype=float)
        F = FunctionFamily
        fam = self.family
        logfact = sc.gammaln(k + 1.0)
        if fam in (F.ML2, F.PRABHAKAR, F.WRIGHT, F.LEROY, F.ML4):
            lg, sg = log_abs_gamma_array(self.alpha * k + self.beta)
        if fam is F.ML2:
            out = (-lg, sg)
        elif fam is F.PRABHAKAR:
            lp, sp = log_pochhammer_array(self.gamma, k)
            out = (lp - logfact - lg, sp * sg)
        elif fam is F.ML4:
            lg2, sg2 = log_abs_gamma_array(self.alpha2 * k + self.beta2)
            out = (-lg - lg2, sg * sg2)
        elif fam is F.WRIGHT:
            out = (-logfact - lg, sg)
        elif fam is F.LEROY:
            # [Γ]^γ needs Γ > 0; guaranteed for the positive parameters used
            out = (-self.gamma * lg, np.where(sg > 0, 1.0, 0.0))
        elif fam is F.LEROY_CLASSICAL:
            out = (-self.gamma * logfact, np.ones(K))
        elif fam is F.BESSEL_I0:
            out = (-2.0 * logfact, np.ones(K))
        else:  # pragma: no cover
            raise DomainError(f"unknown family {fam}")
        logc = np.where(out[1] == 0, -np.inf, out[0])
        self._cache[K] = (logc, out[1])
        return self._cache[K]

    def stirling_terms(self, log_absz: float, tol: float) -> int:
        """Predict the term count from the Stirling growth of the coefficients."""
        if log_absz == -np.inf:
            return 4
        k = np.arange(1, MAX_TERMS, dtype=float)
        F = FunctionFamily
        fam = self.family
        logfact = stirling_log_gamma(k, 1.0)
        if fam in (F.ML2, F.PRABHAKAR, F.WRIGHT, F.LEROY, F.ML4):
            lg = stirling_log_gamma(self.alpha * k, self.beta)
        if fam is F.ML2:
            est = -lg
        elif fam is F.PRABHAKAR:
            est = (self.gamma - 1.0) * np.log(k) - lg
        elif fam is F.ML4:
            est = -lg - stirling_log_gamma(self.alpha2 * k, self.beta2)
        elif fam is F.WRIGHT:
            est = -logfact - lg
        elif fam is F.LEROY:
            est = -self.gamma * lg
        elif fam is F.LEROY_CLASSICAL:
            est = -self.gamma * logfact
        else:
            est = -2.0 * logfact
        est = est + k * log_absz
        peak = int(np.argmax(est))
        below = np.nonzero(est[peak:] < math.log(tol) - 8.0)[0]
        if below.size == 0:
            return MAX_TERMS
        return int(peak + below[0] + 8)


def _zlog(z):
    z = np.asarray(z, dtype=float)
    with np.errstate(divide="ignore"):
        return np.log(np.abs(z)), np.sign(z)


def _weighted_sum(coeffs: _Coeffs, z, tol, weight=None, rel_scale=None, with_rounding=False):
    """Sum ``Σ c_k z^k w_k`` for an array of z.

    ``weight(K)`` returns an array broadcastable to (n, K) or None.
    Returns values, number of terms used and per-point tail bounds (plus a
    rounding estimate when ``with_rounding``).
    ``rel_scale`` (per point) sets the magnitude the tolerance is relative to;
    by default max(1, |value|).
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    logz, sz = _zlog(z)
    lz_max = float(np.max(logz)) if z.size else -np.inf
    K = max(8, min(MAX_TERMS, coeffs.stirling_terms(lz_max, tol / TAIL_SAFETY)))
    while True:
        logc, sc_ = coeffs.log_coeffs(K)
        k = np.arange(K, dtype=float)
        with np.errstate(invalid="ignore"):
            kl = np.where(k[None, :] == 0, 0.0, k[None, :] * logz[:, None])
        m = logc[None, :] + kl
        sgn = sc_[None, :] * np.where((k[None, :] % 2 == 1), sz[:, None], 1.0)
        if weight is not None:
            w = np.broadcast_to(weight(K), m.shape)
            with np.errstate(divide="ignore"):
                m = m + np.log(np.abs(w))
            sgn = sgn * np.sign(w)
        m = np.where(sgn == 0, -np.inf, m)
        if np.any(m > LOG_MAX):
            i, j = np.unravel_index(int(np.argmax(m)), m.shape)
            raise RangeError(
                f"series term k={j} at z={z[i]:.6g} exceeds double range; |z| too large",
                sign=int(sgn[i, j]) or 1,
            )
        terms = sgn * np.exp(m)
        partial = np.cumsum(terms, axis=1)
        if rel_scale is None:
            scale = np.maximum(1.0, np.abs(partial[:, -1]))
        else:
            scale = np.broadcast_to(np.asarray(rel_scale, dtype=float), partial[:, -1].shape)
        with np.errstate(invalid="ignore", over="ignore"):
            ratio = np.exp(np.diff(m, axis=1))
        ratio = np.nan_to_num(ratio, nan=0.0, posinf=np.inf)
        # rho[:, j] = sup of the term ratio from index j onward (inside the window)
        rho = np.maximum.accumulate(ratio[:, ::-1], axis=1)[:, ::-1]
        # column N (0..K-3): bound on sum_{k>N} = |term_{N+1}| / (1 - rho_{N+1})
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            bound = np.where(rho[:, 1:] < 1.0, np.exp(m[:, 1:-1]) / (1.0 - rho[:, 1:]), np.inf)
        small = np.abs(terms) <= tol * scale[:, None]
        # belt and braces: the first two omitted terms must be small as well
        ok = (bound <= (tol * scale / TAIL_SAFETY)[:, None]) & small[:, 1:-1] & small[:, 2:]
        # the window must end contracting, with ratios already decreasing, for
        # the bound to extend past K (log-convexity of Γ keeps them decreasing)
        tail_ok = ((ratio[:, -1] < 1.0) & (ratio[:, -1] <= ratio[:, -2])) | (m[:, -1] == -np.inf)
        if np.all(ok.any(axis=1)) and np.all(tail_ok):
            N = int(ok.argmax(axis=1).max())
            # smallest terms first: fewer rounding errors than the running sum
            values = np.sum(terms[:, N::-1], axis=1)
            tails = np.where(np.isfinite(bound[:, N]), bound[:, N], 0.0)
            if with_rounding:
                rounding = EPS * np.sum(np.abs(terms[:, : N + 1]), axis=1)
                return values, N + 1, tails, rounding
            return values, N + 1, tails
        if K >= MAX_TERMS:
            raise RangeError(f"series did not converge within {MAX_TERMS} terms (|z| too large)")
        K = min(MAX_TERMS, 2 * K)


ROUNDING_FLOOR = 32 * EPS


def check_cancellation(value, rounding, tol, what="series"):
    """Raise when summation rounding alone breaks the requested tolerance."""
    # tolerances near machine precision cannot be certified for any sum
    if rounding > max(tol, ROUNDING_FLOOR) * max(1.0, abs(value)):
        raise RangeError(
            f"{what}: cancellation leaves ~{rounding:.2g} absolute rounding error; "
            "|z| too large for double-precision summation",
            sign=1 if value >= 0 else -1,
        )


def _check_tol(tol):
    if not (1e-15 <= tol <= 1e-2):
        raise DomainError(f"tol must lie in [1e-15, 1e-2], got {tol!r}")


def eval_series(family, p: ParamSet, z: float, tol: float = 1e-12) -> SeriesValue:
    """Evaluate one of the series families at a real argument ``z``."""
    family = FunctionFamily(family)
    p.validate(family)
    _check_tol(tol)
    vals, n, tails, rnd = _weighted_sum(_Coeffs.from_params(family, p), [z], tol, with_rounding=True)
    check_cancellation(vals[0], rnd[0], tol)
    return SeriesValue(float(vals[0]), n, float(tails[0]))


def series_array(family, z, tol=1e-13, **params):
    """Vectorised evaluation with raw (unvalidated) parameters."""
    co = _Coeffs(FunctionFamily(family), **params)
    vals, _, _ = _weighted_sum(co, z, tol)
    return vals


def tail_terms_needed(family, p: ParamSet, z: float, tol: float) -> int:
    """Smallest N whose bound on ``Σ_{k>N} |term_k|`` is at most ``tol``."""
    family = FunctionFamily(family)
    p.validate(family)
    co = _Coeffs.from_params(family, p)
    logz, _ = _zlog(np.array([z]))
    if logz[0] == -np.inf:
        return 0
    K = max(8, min(MAX_TERMS, co.stirling_terms(float(logz[0]), tol / TAIL_SAFETY)))
    while True:
        logc, _ = co.log_coeffs(K)
        k = np.arange(K, dtype=float)
        m = logc + np.where(k == 0, 0.0, k * logz[0])
        with np.errstate(invalid="ignore", over="ignore"):
            ratio = np.nan_to_num(np.exp(np.diff(m)), nan=0.0, posinf=np.inf)
        rho = np.maximum.accumulate(ratio[::-1])[::-1]
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            bound = np.where(rho[1:] < 1.0, np.exp(m[1:-1]) / (1.0 - rho[1:]), np.inf)
        hits = np.nonzero(bound <= tol / TAIL_SAFETY)[0]
        if hits.size and ratio[-1] < 1.0 and ratio[-1] <= ratio[-2]:
            return int(hits[0])
        if K >= MAX_TERMS:
            raise RangeError("tail bound not reached within MAX_TERMS")
        K = min(MAX_TERMS, 2 * K)


# -- time-domain subjects ---------------------------------------------------

def _profile_parts(family, p: ParamSet, t):
    """Split a time profile into prefactor and series argument."""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("time profile requires t > 0")
    mode = p.mode
    if mode is ProfileMode.BETA:
        # ML4 reads alpha/beta as α1/β1
        return t ** (p.beta - 1.0), p.lam * t ** p.alpha
    if mode is ProfileMode.GAMMA:
        return t ** (p.gamma - 1.0), p.lam * t
    return np.ones_like(t), p.lam * t


def profile_array(family, p: ParamSet, t, tol: float = 1e-13):
    family = FunctionFamily(family)
    p.validate(family)
    pref, z = _profile_parts(family, p, t)
    vals, _, _ = _weighted_sum(_Coeffs.from_params(family, p), np.ravel(z), tol)
    return pref * vals.reshape(np.shape(z))


def time_profile(family, p: ParamSet, t: float, tol: float = 1e-12) -> float:
    """t^(β-1) f(λ t^α), or the GAMMA / PLAIN variants selected by ``p.mode``."""
    _check_tol(tol)
    if not t > 0:
        raise DomainError("time profile requires t > 0")
    family = FunctionFamily(family)
    p.validate(family)
    pref, z = _profile_parts(family, p, np.array([float(t)]))
    vals, _, _, rnd = _weighted_sum(_Coeffs.from_params(family, p), z, tol, with_rounding=True)
    check_cancellation(vals[0], rnd[0], tol, "time profile")
    return float(pref[0] * vals[0])


def singularity_exponent(family, p: ParamSet) -> float:
    """Leading power of t at the origin for the profile of ``p.mode``."""
    if p.mode is ProfileMode.BETA:
        return p.beta - 1.0
    if p.mode is ProfileMode.GAMMA:
        return p.gamma - 1.0
    return 0.0

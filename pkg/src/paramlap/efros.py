"""The Efros kernel Φ_{a,b}(t, t') and superpositions against it.

Φ_{a,b}(·, t') is the inverse transform of ``s^-b exp(-t' s^a)``.  Scaling
s → σ/t shows ``Φ_{a,b}(t, t') = t^(b-1) φ(t' t^-a)`` with

    φ(v) = (1/2πi) ∫ e^σ σ^-b exp(-v σ^a) dσ      (Bromwich contour).

The contour is deformed into two rays ``σ = σ₀ + r e^{±iθ}`` that cross the
real axis at the saddle point ``σ₀ = (a v)^(1/(1-a))`` of ``σ - v σ^a``
(at least 1), so

    φ(v) = (1/π) Im ∫_0^∞ e^{iθ} e^σ σ^-b exp(-v σ^a) dr.

The integrand is largest at r = 0 where it is of the same size as φ(v)
itself, so even the super-exponentially small values at large v come out
with full relative accuracy.  The rays never touch the branch point, hence
no separate δ_{b,1} term and no restriction on b.  ``|integrand|`` is exact
and cheap, and serves as the truncation envelope.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special as sc

from .errors import DomainError, NotPointwiseError
from .quadrature import (
    QuadratureConfig,
    QuadratureResult,
    VectorResult,
    _as_2d,
    integrate,
    semi_infinite,
)

DELTA_TOL = 1e-12


@dataclass(frozen=True)
class EfrosKernelSpec:
    a: float
    b: float

    def __post_init__(self):
        if not (0 < self.a <= 1):
            raise DomainError("kernel order a must lie in (0, 1]")
        if not math.isfinite(self.b):
            raise DomainError("kernel index b must be finite")

    @property
    def is_delta(self) -> bool:
        return self.a == 1 and abs(self.b) <= DELTA_TOL


def ray_angle(a: float) -> float:
    """Angle of the two rays, between vertical (steepest descent at the saddle)
    and π/(1+a), beyond which exp(-v σ^a) stops decaying fast enough."""
    return 0.5 * (0.5 * math.pi + min(math.pi / (1.0 + a), 0.75 * math.pi))


def phi_scaled(spec: EfrosKernelSpec, v, cfg: QuadratureConfig = QuadratureConfig()) -> np.ndarray:
    """φ(v) for an array of v ≥ 0 (requires a < 1)."""
    a, b = spec.a, spec.b
    if not a < 1:
        raise DomainError("phi_scaled requires a < 1; a = 1 has closed forms")
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if np.any(v < 0):
        raise DomainError("kernel argument t' must be non-negative")
    theta = ray_angle(a)
    ray = complex(math.cos(theta), math.sin(theta))
    sigma0 = np.maximum(1.0, (a * v) ** (1.0 / (1.0 - a)))
    # width of the saddle region grows like sqrt(σ₀)
    scale = np.sqrt(sigma0)

    def log_integrand(x):
        sigma = sigma0[None, :] + (scale[None, :] * np.asarray(x, dtype=float)[:, None]) * ray
        logs = np.log(sigma)
        return sigma - b * logs - v[None, :] * np.exp(a * logs) + 1j * theta

    def h(x):
        return scale[None, :] * np.imag(np.exp(log_integrand(x)))

    def env(x):
        return scale[None, :] * np.exp(np.real(log_integrand(x)))

    res = semi_infinite(h, 1.0, cfg, envelope=env, l1_relative=True)
    return res.value / math.pi


def _closed_form_unit_order(b, t, tprime):
    """Φ_{1,b}(t, t') = (t - t')^(b-1)/Γ(b) for t > t', 0 before; Θ(0) = 1/2 when b = 1."""
    d = t - tprime
    if abs(b - 1.0) <= DELTA_TOL:
        return np.where(d > 0, 1.0, np.where(d == 0, 0.5, 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.where(d > 0, np.abs(d) ** (b - 1.0) * sc.rgamma(b), 0.0)
    return np.where(d == 0, np.inf if b < 1 else 0.0, val)


def efros_phi(spec: EfrosKernelSpec, t: float, tprime: float,
              cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Pointwise value of Φ_{a,b}(t, t')."""
    if not t > 0:
        raise DomainError("kernel requires t > 0")
    if not tprime >= 0:
        raise DomainError("kernel requires t' >= 0")
    if spec.is_delta:
        raise NotPointwiseError("delta case is not pointwise")
    if spec.a == 1:
        return float(_closed_form_unit_order(spec.b, float(t), float(tprime)))
    v = tprime * t ** (-spec.a)
    return float(t ** (spec.b - 1.0) * phi_scaled(spec, [v], cfg)[0])


def efros_phi_array(spec: EfrosKernelSpec, t, tprime: float,
                    cfg: QuadratureConfig = QuadratureConfig()) -> np.ndarray:
    """Φ_{a,b}(t, t') for an array of t > 0 and one t' ≥ 0."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t <= 0):
        raise DomainError("kernel requires t > 0")
    if not tprime >= 0:
        raise DomainError("kernel requires t' >= 0")
    if spec.is_delta:
        raise NotPointwiseError("delta case is not pointwise")
    if spec.a == 1:
        return _closed_form_unit_order(spec.b, t, float(tprime))
    return t ** (spec.b - 1.0) * phi_scaled(spec, tprime * t ** (-spec.a), cfg)


def efros_superpose_vector(spec: EfrosKernelSpec, f: Callable, t, cfg: QuadratureConfig = QuadratureConfig(),
                           f_exp: float | None = None, inner_cfg: QuadratureConfig | None = None) -> VectorResult:
    """∫_0^∞ Φ_{a,b}(t, t') f(t') dt' for an array of t at once.

    With t' = v t^a the kernel no longer depends on t:
    ``t^(a+b-1) ∫_0^∞ φ(v) f(v t^a) dv``.  ``f_exp`` declares
    ``f(t') ~ t'^σ`` at the origin.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t <= 0):
        raise DomainError("superposition requires t > 0")
    a, b = spec.a, spec.b
    if spec.is_delta:
        vals = _as_2d(f(t))[:, 0]
        return VectorResult(vals, np.zeros_like(vals), t.size)
    if a == 1:
        # fractional integral of order b: ∫_0^t (t - t')^(b-1)/Γ(b) f(t') dt'
        if b <= 0:
            raise NotPointwiseError("order-one kernel with b <= 0 is a derivative of delta")
        vals, errs, n = [], [], 0
        for tj in t:
            r = integrate(lambda x, d: _as_2d(f(x)) * (d ** (b - 1.0) * sc.rgamma(b))[:, None],
                          0.0, float(tj), cfg, left_exp=f_exp, right_exp=b - 1.0)
            vals.append(r.value[0])
            errs.append(r.abs_error_est[0])
            n += r.evaluations
        return VectorResult(np.array(vals), np.array(errs), n)
    icfg = inner_cfg if inner_cfg is not None else cfg
    ta = t ** a
    counter = {"n": 0}

    def integrand(v):
        phi = phi_scaled(spec, v, icfg)
        counter["n"] += v.size
        arg = (v[:, None] * ta[None, :]).ravel()
        fv = _as_2d(f(arg))[:, 0].reshape(v.size, t.size)
        return phi[:, None] * fv

    res = semi_infinite(integrand, 1.0, cfg, left_exp=f_exp)
    pref = t ** (a + b - 1.0)
    return VectorResult(pref * res.value, np.abs(pref) * res.abs_error_est, res.evaluations + counter["n"])


def efros_superpose(spec: EfrosKernelSpec, f: Callable, t: float, cfg: QuadratureConfig = QuadratureConfig(),
                    f_exp: float | None = None) -> QuadratureResult:
    if not t > 0:
        raise DomainError("superposition requires t > 0")
    return efros_superpose_vector(spec, f, [t], cfg, f_exp).scalar()

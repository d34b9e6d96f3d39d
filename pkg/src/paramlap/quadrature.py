"""Adaptive Gauss-Kronrod quadrature used as the independent oracle.

The engine is globally adaptive (G10/K21 panels, QUADPACK-style error
estimate) and fully vectorised: integrands take a 1-D array of nodes and
return either ``(n,)`` or ``(n, m)`` values, so a whole family of related
integrals (several t, several kernel arguments) shares one panel set.

Endpoint singularities ``x^σ`` are removed by the graded substitution
``x = L u^p`` with ``p = 3/(σ+1)``, which makes the mapped integrand vanish
like ``u^2`` at the endpoint.  Semi-infinite ranges use ``x = c 2^(u-1)``
beyond ``x = c`` and stop once an envelope probe has fallen below
``10^-tail_cutoff_decades`` of its peak.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AccuracyError, DomainError
from .gamma_kernel import EULER_MASCHERONI

_XGK = np.array([
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0,
])
_WGK = np.array([
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208735091866, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

# symmetric 21-point layout, left to right
NODES = np.concatenate((-_XGK[:-1], _XGK[::-1]))
KRONROD_W = np.concatenate((_WGK[:-1], _WGK[::-1]))
GAUSS_W = np.zeros(21)
GAUSS_W[1:10:2] = _WG
GAUSS_W[11:20:2] = _WG[::-1]

EPS = np.finfo(float).eps
MAX_GRADING = 20.0
MAX_OCTAVES = 400


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    tail_cutoff_decades: float = 16.0

    def __post_init__(self):
        if not self.rel_tol >= 1e-13:
            raise DomainError("rel_tol must be at least 1e-13")
        if not self.abs_tol >= 0:
            raise DomainError("abs_tol must be non-negative")
        if self.max_subdivisions < 10:
            raise DomainError("max_subdivisions must be at least 10")
        if not self.tail_cutoff_decades > 0:
            raise DomainError("tail_cutoff_decades must be positive")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_est: float
    evaluations: int


@dataclass
class VectorResult:
    """Engine output for vector-valued integrands."""

    value: np.ndarray
    abs_error_est: np.ndarray
    evaluations: int

    def scalar(self) -> QuadratureResult:
        return QuadratureResult(float(self.value[0]), float(self.abs_error_est[0]), self.evaluations)


def grading_exponent(sigma: float | None) -> float:
    """Substitution power that turns an ``x^σ`` endpoint into a C² one."""
    if sigma is None:
        return 1.0
    if not sigma > -1:
        raise DomainError(f"endpoint exponent {sigma!r} is not integrable (need > -1)")
    return float(min(MAX_GRADING, max(1.0, 3.0 / (sigma + 1.0))))


def _eval_panels(F, a, b):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = (mid[:, None] + half[:, None] * NODES[None, :]).ravel()
    y = np.asarray(F(x), dtype=float)
    if y.ndim == 1:
        y = y[:, None]
    y = y.reshape(a.size, 21, -1)
    if not np.all(np.isfinite(y)):
        raise AccuracyError("integrand returned a non-finite value", evaluations=x.size)
    h = half[:, None]
    kron = h * np.einsum("pnm,n->pm", y, KRONROD_W)
    gauss = h * np.einsum("pnm,n->pm", y, GAUSS_W)
    resabs = np.abs(h) * np.einsum("pnm,n->pm", np.abs(y), KRONROD_W)
    mean = kron / np.where(h == 0, 1.0, h) * 0.5
    resasc = np.abs(h) * np.einsum("pnm,n->pm", np.abs(y - mean[:, None, :]), KRONROD_W)
    err = np.abs(kron - gauss)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where(resasc > 0, scaled, err)
    err = np.maximum(err, 50.0 * EPS * resabs)
    return kron, err, resabs


def adaptive(F: Callable, breakpoints, cfg: QuadratureConfig = QuadratureConfig(),
             l1_relative: bool = False) -> VectorResult:
    """Globally adaptive integration of ``F`` over consecutive breakpoints.

    Converged when, for every output component, the summed error estimate
    is at most ``max(abs_tol, rel_tol·|value|)``.  With ``l1_relative`` the
    relative part uses ``∫|F|`` instead, the right yardstick for
    oscillatory integrals whose value may be tiny.
    """
    bp = np.asarray(breakpoints, dtype=float)
    a, b = bp[:-1].copy(), bp[1:].copy()
    val, err, rabs = _eval_panels(F, a, b)
    evals = 21 * a.size
    while True:
        total = val.sum(axis=0)
        errsum = err.sum(axis=0)
        ref = rabs.sum(axis=0) if l1_relative else np.abs(total)
        tol = np.maximum(cfg.abs_tol, cfg.rel_tol * ref)
        if np.all(errsum <= tol):
            return VectorResult(total, errsum, evals)
        score = (err / tol[None, :]).max(axis=1)
        # panels too narrow to split any further cannot help
        tiny = (b - a) <= 64.0 * EPS * np.maximum(np.abs(a), np.abs(b))
        score = np.where(tiny, 0.0, score)
        room = cfg.max_subdivisions - a.size
        if room <= 0 or not np.any(score > 0):
            raise AccuracyError(
                f"quadrature did not converge within {cfg.max_subdivisions} panels "
                f"(error estimate {float(errsum.max()):.3g})",
                best_estimate=total.copy(), abs_error_est=errsum.copy(), evaluations=evals,
            )
        order = np.argsort(-score, kind="stable")
        cum = np.cumsum(score[order])
        nsplit = int(np.searchsorted(cum, 0.5 * cum[-1])) + 1
        nsplit = max(1, min(nsplit, room, int(np.count_nonzero(score > 0))))
        pick = np.sort(order[:nsplit])
        keep = np.ones(a.size, dtype=bool)
        keep[pick] = False
        mid = 0.5 * (a[pick] + b[pick])
        na = np.concatenate((a[pick], mid))
        nb = np.concatenate((mid, b[pick]))
        nval, nerr, nabs = _eval_panels(F, na, nb)
        evals += 21 * na.size
        a = np.concatenate((a[keep], na))
        b = np.concatenate((b[keep], nb))
        val = np.concatenate((val[keep], nval))
        err = np.concatenate((err[keep], nerr))
        rabs = np.concatenate((rabs[keep], nabs))
        # left-to-right order keeps the summation order reproducible
        srt = np.argsort(a, kind="stable")
        a, b, val, err, rabs = a[srt], b[srt], val[srt], err[srt], rabs[srt]


def _as_2d(y):
    y = np.asarray(y, dtype=float)
    return y[:, None] if y.ndim == 1 else y


def integrate(f: Callable, a: float, b: float, cfg: QuadratureConfig = QuadratureConfig(),
              left_exp: float | None = None, right_exp: float | None = None,
              l1_relative: bool = False) -> VectorResult:
    """∫_a^b f(x) dx with optional ``(x-a)^σ`` / ``(b-x)^σ`` endpoint behaviour.

    ``f`` receives the node array; when ``right_exp`` is given it is also
    passed the exact distances ``b - x`` as a second argument.
    """
    if not b > a:
        if b == a:
            probe = _as_2d(f(np.array([a]))) if right_exp is None else _as_2d(f(np.array([a]), np.array([0.0])))
            zero = np.zeros(probe.shape[1])
            return VectorResult(zero, zero.copy(), 0)
        raise DomainError("integration interval must satisfy a <= b")
    p_left = grading_exponent(left_exp)
    p_right = grading_exponent(right_exp)
    if right_exp is None:
        L = b - a

        def F(u):
            return _as_2d(f(a + L * u ** p_left)) * (p_left * L * u ** (p_left - 1.0))[:, None]

        return adaptive(F, [0.0, 1.0], cfg, l1_relative)

    half = 0.5 * (b - a)

    def F2(u):
        left = u < 1.0
        ul = np.where(left, u, 0.5)
        ur = np.where(left, 0.5, 2.0 - u)
        dist_r = half * ur ** p_right
        x = np.where(left, a + half * ul ** p_left, b - dist_r)
        dist = np.where(left, b - x, dist_r)
        jac = np.where(left, p_left * half * ul ** (p_left - 1.0), p_right * half * ur ** (p_right - 1.0))
        return _as_2d(f(x, dist)) * jac[:, None]

    return adaptive(F2, [0.0, 1.0, 2.0], cfg, l1_relative)


def semi_infinite(f: Callable, scale: float, cfg: QuadratureConfig = QuadratureConfig(),
                  left_exp: float | None = None, envelope: Callable | None = None,
                  l1_relative: bool = False) -> VectorResult:
    """∫_0^∞ f(x) dx for integrands that eventually decay.

    ``[0, scale]`` is graded for the ``x^σ`` singularity; beyond it the map
    ``x = scale·2^(u-1)`` gives one unit of u per octave.  The range is cut
    where ``envelope(x)`` (default ``|f(x)|``, component-wise) times ``x``
    has dropped below ``10^-tail_cutoff_decades`` of its peak.
    """
    if not (scale > 0 and math.isfinite(scale)):
        raise DomainError("scale must be positive and finite")
    p = grading_exponent(left_exp)
    env = envelope if envelope is not None else (lambda x: np.abs(_as_2d(f(x))))
    cutoff = 10.0 ** (-cfg.tail_cutoff_decades)

    # peak over the graded panel, in the mapped variable
    u0 = np.linspace(0.05, 1.0, 20)
    x0 = scale * u0 ** p
    peak = np.max(_as_2d(env(x0)) * (p * scale * u0 ** (p - 1.0))[:, None], axis=0)
    octaves = 0
    per = 8
    quiet = 0
    while True:
        if octaves >= MAX_OCTAVES:
            raise AccuracyError("integrand envelope did not decay on the semi-infinite range")
        u = octaves + (np.arange(per) + 1.0) / per
        x = scale * np.exp2(u)
        mag = _as_2d(env(x)) * (x * math.log(2.0))[:, None]
        peak = np.maximum(peak, mag.max(axis=0))
        octaves += 1
        if np.all(mag.max(axis=0) <= cutoff * peak):
            quiet += 1
            if quiet >= 2:
                break
        else:
            quiet = 0

    def F(u):
        inner = u < 1.0
        ug = np.where(inner, u, 0.5)
        x = np.where(inner, scale * ug ** p, scale * np.exp2(u - 1.0))
        jac = np.where(inner, p * scale * ug ** (p - 1.0), x * math.log(2.0))
        return _as_2d(f(x)) * jac[:, None]

    return adaptive(F, np.arange(octaves + 2, dtype=float), cfg, l1_relative)


# -- public oracles -----------------------------------------------------------

def laplace_forward(f: Callable, s: float, cfg: QuadratureConfig = QuadratureConfig(),
                    singularity_exp: float | None = None) -> QuadratureResult:
    """∫_0^∞ e^(-st) f(t) dt.

    ``f`` must accept an array of t.  ``singularity_exp`` declares
    ``f(t) ~ t^σ`` near 0 (σ > -1); logarithmic factors are tolerated by the
    same grading.
    """
    if not s > 0:
        raise DomainError("laplace_forward requires s > 0")
    res = semi_infinite(lambda t: _as_2d(f(t)) * np.exp(-s * t)[:, None], 1.0 / s, cfg, singularity_exp)
    return res.scalar()


def convolve(f: Callable, g: Callable, t: float, cfg: QuadratureConfig = QuadratureConfig(),
             f_exp: float | None = None, g_exp: float | None = None) -> QuadratureResult:
    """(f * g)(t) = ∫_0^t f(τ) g(t-τ) dτ.

    ``f_exp`` / ``g_exp`` declare ``f(τ) ~ τ^σ`` and ``g(τ) ~ τ^σ`` near 0.
    """
    return convolve_vector(f, g, t, cfg, f_exp, g_exp).scalar()


def convolve_vector(f, g, t, cfg=QuadratureConfig(), f_exp=None, g_exp=None) -> VectorResult:
    if not t > 0:
        raise DomainError("convolution requires t > 0")
    return integrate(lambda x, d: _as_2d(f(x)) * _as_2d(g(d)), 0.0, float(t), cfg,
                     left_exp=f_exp, right_exp=g_exp if g_exp is not None else 0.0)


def log_kernel(tau, shift: bool = True):
    """ln τ + γ₀ (or plain ln τ when ``shift`` is off)."""
    out = np.log(np.asarray(tau, dtype=float))
    return out + EULER_MASCHERONI if shift else out


def log_kernel_convolve(g: Callable, t: float, cfg: QuadratureConfig = QuadratureConfig(),
                        g_exp: float | None = None, shift: bool = True) -> QuadratureResult:
    """∫_0^t (ln(t - t₁) + γ₀) g(t₁) dt₁; ``shift=False`` drops the γ₀."""
    return log_kernel_convolve_vector(g, t, cfg, g_exp, shift).scalar()


def log_kernel_convolve_vector(g, t, cfg=QuadratureConfig(), g_exp=None, shift=True) -> VectorResult:
    if not t > 0:
        raise DomainError("convolution requires t > 0")
    return integrate(lambda x, d: _as_2d(g(x)) * log_kernel(d, shift)[:, None], 0.0, float(t), cfg,
                     left_exp=g_exp, right_exp=0.0)

"""Executable catalog of transform pairs and convolution representations.

Each :class:`Identity` pairs an independent quadrature oracle (the left side)
with a closed-form or s-domain-series right side.  Where the printed form of
a formula is wrong, the catalog carries the derivation-consistent form as
canonical and keeps the printed one as ``printed_*`` for audit runs.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import special as sc

from .derivatives import DerivTarget, Wrt, deriv_array, deriv_series
from .efros import EfrosKernelSpec, efros_superpose_vector
from .errors import AccuracyError, DomainError, ParamlapError, ValidityError
from .gamma_kernel import EULER_MASCHERONI, log_pochhammer_array
from .quadrature import (
    QuadratureConfig,
    VectorResult,
    convolve_vector,
    integrate,
    laplace_forward,
    log_kernel_convolve_vector,
)
from .series import (
    FunctionFamily,
    ParamSet,
    ProfileMode,
    _Coeffs,
    _weighted_sum,
    profile_array,
    series_array,
    time_profile,
)

F = FunctionFamily
G0 = EULER_MASCHERONI
RHS_TOL = 1e-13

S_GRID = (1.5, 2.0, 3.0, 5.0)
T_GRID = (0.5, 1.0, 2.0)
S_MARGIN = 0.8


class LhsKind(str, Enum):
    TRANSFORM_OF_PROFILE = "TRANSFORM_OF_PROFILE"
    TRANSFORM_OF_DERIV = "TRANSFORM_OF_DERIV"
    CONV_FORM_EQUALS_DERIV = "CONV_FORM_EQUALS_DERIV"
    AUX_INTEGRAL = "AUX_INTEGRAL"


class ToleranceClass(str, Enum):
    SINGLE = "SINGLE"
    NESTED = "NESTED"

    @property
    def tolerance(self) -> float:
        return 1e-6 if self is ToleranceClass.SINGLE else 1e-4


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED_OUT_OF_REGION = "SKIPPED_OUT_OF_REGION"


@dataclass(frozen=True)
class Predicate:
    name: str
    test: Callable[[ParamSet, float], bool]

    def __call__(self, p, x) -> bool:
        return bool(self.test(p, x))


@dataclass(frozen=True)
class Identity:
    id: str
    lhs: LhsKind
    tol_class: ToleranceClass
    domain: str  # "s" or "t"
    family: FunctionFamily | None
    wrt: Wrt | None
    mode: ProfileMode
    oracle: Callable  # (p, xs, cfg) -> VectorResult over the grid
    rhs: Callable  # (p, x) -> float
    validity: tuple = ()
    presets: tuple = ()
    erratum: str | None = None
    erratum_note: str | None = None
    printed_oracle: Callable | None = None
    printed_rhs: Callable | None = None

    def params(self, p: ParamSet) -> ParamSet:
        return p if p.mode is self.mode else p.with_(mode=self.mode)

    def violated(self, p: ParamSet, x: float) -> str | None:
        for pred in self.validity:
            try:
                ok = pred(p, x)
            except (TypeError, ValueError, ArithmeticError):
                ok = False
            if not ok:
                return pred.name
        return None

    @property
    def has_printed_variant(self) -> bool:
        return self.printed_oracle is not None or self.printed_rhs is not None


# -- validity predicates ------------------------------------------------------

S_POS = Predicate("s > 0", lambda p, s: s > 0)
T_POS = Predicate("t > 0", lambda p, t: t > 0)
INSIDE = Predicate("|λ s^{−α}| < 1", lambda p, s: abs(p.lam) * s ** (-p.alpha) < 1)
ALPHA_GT1 = Predicate("α > 1", lambda p, x: p.alpha > 1)
GAMMA_GT1 = Predicate("γ > 1", lambda p, x: p.gamma > 1)
GAMMA_IS2 = Predicate("γ = 2", lambda p, x: p.gamma == 2)
AB_GT1 = Predicate("α + β > 1", lambda p, x: p.alpha + p.beta > 1)
BETA_GT1 = Predicate("β > 1", lambda p, x: p.beta > 1)
BETA_GT_ALPHA = Predicate("β > α", lambda p, x: p.beta > p.alpha)
ALPHA_LT1 = Predicate("α < 1", lambda p, x: p.alpha < 1)
HAS_R = Predicate("r > −1", lambda p, x: p.r is not None and p.r > -1)
HAS_ML4 = Predicate("α₂, β₂ given", lambda p, x: p.alpha2 is not None and p.beta2 is not None)


# -- s-domain and t-domain series helpers ------------------------------------

class _TermRule:
    """Duck-typed stand-in for series coefficients given by a formula."""

    def __init__(self, log_coeff):
        self._f = log_coeff
        self._cache = {}

    def log_coeffs(self, K):
        if K not in self._cache:
            logc, sign = self._f(np.arange(K, dtype=float))
            self._cache[K] = (np.where(sign == 0, -np.inf, logc), sign)
        return self._cache[K]

    def stirling_terms(self, log_absz, tol):
        return 32


def _sum(coeffs, z, weight=None) -> float:
    wfn = None if weight is None else (lambda K: weight(np.arange(K, dtype=float))[None, :])
    vals, _, _ = _weighted_sum(coeffs, [z], RHS_TOL, weight=wfn)
    return float(vals[0])


def _ml(alpha, beta):
    return _Coeffs(F.ML2, alpha, beta)


def _prab(gamma, alpha, beta):
    return _Coeffs(F.PRABHAKAR, alpha, beta, gamma)


def _psi(alpha, beta):
    return lambda k: sc.psi(alpha * k + beta)


def _pure_rule(p):
    """k!/Γ(αk+β)."""
    return _TermRule(lambda k: (sc.gammaln(k + 1.0) - sc.gammaln(p.alpha * k + p.beta),
                                sc.gammasgn(p.alpha * k + p.beta)))


def _p2_rule(p):
    """(γ)_k Γ(γ+k) / (k! Γ(αk+β))."""
    def f(k):
        lp, sp = log_pochhammer_array(p.gamma, k)
        return (lp + sc.gammaln(p.gamma + k) - sc.gammaln(k + 1.0) - sc.gammaln(p.alpha * k + p.beta),
                sp * sc.gammasgn(p.alpha * k + p.beta))
    return _TermRule(f)


# -- oracles ------------------------------------------------------------------

def _exponent(p: ParamSet) -> float:
    if p.mode is ProfileMode.BETA:
        return p.beta - 1.0
    if p.mode is ProfileMode.GAMMA:
        return p.gamma - 1.0
    return 0.0


def _transform_oracle(time_fn_factory, exponent=_exponent):
    """Oracle: Laplace transform of ``time_fn_factory(p)`` at each s."""
    def oracle(p, xs, cfg):
        fn = time_fn_factory(p)
        vals, errs, n = [], [], 0
        for s in xs:
            r = laplace_forward(fn, s, cfg, singularity_exp=exponent(p))
            vals.append(r.value)
            errs.append(r.abs_error_est)
            n += r.evaluations
        return VectorResult(np.array(vals), np.array(errs), n)
    return oracle


def _profile_fn(family):
    return lambda p: (lambda t: profile_array(family, p, t))


def _deriv_fn(family, wrt):
    target = DerivTarget(family, wrt)
    return lambda p: (lambda t: deriv_array(target, p, t))


def _over_grid(single):
    """Lift an oracle for one t to the whole grid."""
    def oracle(p, xs, cfg):
        vals, errs, n = [], [], 0
        for x in xs:
            r = single(p, float(x), cfg)
            vals.append(r.value[0])
            errs.append(r.abs_error_est[0])
            n += r.evaluations
        return VectorResult(np.array(vals), np.array(errs), n)
    return oracle


def _powered(power, coeffs_fn, lam, alpha):
    """t ↦ t^power Σ c_k (λ t^α)^k for raw coefficients."""
    def fn(t):
        t = np.asarray(t, dtype=float)
        vals, _, _ = _weighted_sum(coeffs_fn, (lam * t ** alpha).ravel(), 1e-14)
        return t ** power * vals.reshape(t.shape)
    return fn


def _scaled(res: VectorResult, factor: float) -> VectorResult:
    return VectorResult(factor * res.value, abs(factor) * res.abs_error_est, res.evaluations)


def _log_conv_oracle(kernel_factory, factor=lambda p: 1.0, shift=True):
    """factor(p) · ∫_0^t (ln(t-t₁) [+ γ₀]) g(t₁) dt₁ with (g, exponent) = kernel_factory(p)."""
    def single(p, t, cfg):
        g, sigma = kernel_factory(p)
        return _scaled(log_kernel_convolve_vector(g, t, cfg, g_exp=sigma, shift=shift), factor(p))
    return _over_grid(single)


def _plain_integral_oracle(kernel_factory):
    def single(p, t, cfg):
        g, sigma = kernel_factory(p)
        return integrate(lambda x: g(x), 0.0, t, cfg, left_exp=sigma)
    return _over_grid(single)


def _g_t1(p):
    """t^(α+β-2) E²_{α,α+β-1}(λ t^α)."""
    return _powered(p.alpha + p.beta - 2.0, _prab(2.0, p.alpha, p.alpha + p.beta - 1.0), p.lam, p.alpha), \
        p.alpha + p.beta - 2.0


def _g_t2(p):
    """t^(β-2) E_{α,β-1}(λ t^α)."""
    return _powered(p.beta - 2.0, _ml(p.alpha, p.beta - 1.0), p.lam, p.alpha), p.beta - 2.0


def _g_t6(p):
    """t^(α+β-2) E^{γ+1}_{α,α+β-1}(λ t^α)."""
    return _powered(p.alpha + p.beta - 2.0, _prab(p.gamma + 1.0, p.alpha, p.alpha + p.beta - 1.0), p.lam,
                    p.alpha), p.alpha + p.beta - 2.0


def _g_t7(p):
    """t^(β-2) E^γ_{α,β-1}(λ t^α)."""
    return _powered(p.beta - 2.0, _prab(p.gamma, p.alpha, p.beta - 1.0), p.lam, p.alpha), p.beta - 2.0


def _g_intplog(p):
    return (lambda t: np.asarray(t, dtype=float) ** p.r), p.r


# nested (kernel-superposition) oracles use a slightly looser inner tolerance
def _nested_cfgs(cfg: QuadratureConfig):
    outer = QuadratureConfig(max(cfg.rel_tol, 1e-9), max(cfg.abs_tol, 1e-11), cfg.max_subdivisions,
                             cfg.tail_cutoff_decades)
    inner = QuadratureConfig(max(cfg.rel_tol, 1e-10), max(cfg.abs_tol, 1e-12), cfg.max_subdivisions,
                             cfg.tail_cutoff_decades)
    return outer, inner


def _bessel_source(lam):
    return lambda x: series_array(F.BESSEL_I0, lam * np.asarray(x, dtype=float), 1e-14)


def _efros_of_bessel(p, b, cfg):
    """t₁ ↦ ∫_0^∞ Φ_{α,b}(t₁, t₂) I₀(2√(λ t₂)) dt₂ as a vectorised callable."""
    outer, inner = _nested_cfgs(cfg)
    spec = EfrosKernelSpec(p.alpha, b)
    src = _bessel_source(p.lam)
    return lambda t1: efros_superpose_vector(spec, src, t1, outer, inner_cfg=inner).value


def _t3_oracle(p, xs, cfg):
    outer, inner = _nested_cfgs(cfg)
    return efros_superpose_vector(EfrosKernelSpec(p.alpha, p.beta - p.alpha), _bessel_source(p.lam),
                                  np.asarray(xs, dtype=float), outer, inner_cfg=inner)


def _t4_single(p, t, cfg):
    outer, _ = _nested_cfgs(cfg)
    h = _efros_of_bessel(p, p.beta - 1.0, cfg)
    return _scaled(log_kernel_convolve_vector(h, t, outer, g_exp=p.alpha + p.beta - 2.0), p.lam)


def _t5_single(p, t, cfg):
    outer, _ = _nested_cfgs(cfg)
    h = _efros_of_bessel(p, p.beta - p.alpha - 1.0, cfg)
    return log_kernel_convolve_vector(h, t, outer, g_exp=p.beta - 2.0)


def _t8_terms(p, t, cfg):
    """(first, second) terms of the two-part convolution form for ∂/∂γ."""
    outer, inner = _nested_cfgs(cfg)
    g7, sigma7 = _g_t7(p)
    first = log_kernel_convolve_vector(g7, t, outer, g_exp=sigma7)
    lam = p.lam

    def source(x):
        x = np.asarray(x, dtype=float)
        return np.exp(lam * x) * (np.log(x) + G0)

    spec = EfrosKernelSpec(p.alpha, 0.0)

    def inner_fn(t1):
        return efros_superpose_vector(spec, source, t1, outer, f_exp=0.0, inner_cfg=inner).value

    kernel = _powered(p.beta - p.alpha - 1.0, _prab(p.gamma - 1.0, p.alpha, p.beta - p.alpha), lam, p.alpha)
    second = convolve_vector(inner_fn, kernel, t, outer, f_exp=p.alpha - 1.0, g_exp=p.beta - p.alpha - 1.0)
    return first, second


def _combine(a: VectorResult, ca: float, b: VectorResult, cb: float) -> VectorResult:
    return VectorResult(ca * a.value + cb * b.value, abs(ca) * a.abs_error_est + abs(cb) * b.abs_error_est,
                        a.evaluations + b.evaluations)


def _t8_single(p, t, cfg):
    first, second = _t8_terms(p, t, cfg)
    return _combine(first, -p.alpha, second, 1.0)


def _t8_printed_single(p, t, cfg):
    first, second = _t8_terms(p, t, cfg)
    return _combine(first, p.alpha, second, -1.0)


def _shifted_subject(p, t, kind, wrt):
    """Transform subject t^(γ-1) F^(γ)(λ t^α) (and its derivatives) for Le Roy."""
    t = np.asarray(t, dtype=float)
    shift = t ** (p.gamma - p.beta)
    base = profile_array(F.LEROY, p, t)
    if kind == "profile":
        return shift * base
    d = deriv_array(DerivTarget(F.LEROY, wrt), p, t)
    if wrt is Wrt.BETA:
        d = d - np.log(t) * base
    elif wrt is Wrt.GAMMA:
        d = d + np.log(t) * base
    return shift * d


def _shifted_oracle(kind, wrt=None):
    return _transform_oracle(lambda p: (lambda t: _shifted_subject(p, t, kind, wrt)),
                             exponent=lambda p: p.gamma - 1.0)


def _deriv_rhs(family, wrt):
    target = DerivTarget(family, wrt)
    return lambda p, t: deriv_series(target, p, t, 1e-12).value


# -- right-hand sides -----------------------------------------------------------

def _ml_lt(p, s):
    return s ** (p.alpha - p.beta) / (s ** p.alpha - p.lam)


def _ml_da(p, s):
    return -p.lam * s ** (p.alpha - p.beta) * math.log(s) / (s ** p.alpha - p.lam) ** 2


def _ml_db(p, s):
    return -s ** (p.alpha - p.beta) * math.log(s) / (s ** p.alpha - p.lam)


def _pure_lt(p, s):
    return _sum(_pure_rule(p), p.lam / s) / s


def _pure_da(p, s, printed=False):
    val = -_sum(_pure_rule(p), p.lam / s, lambda k: k * sc.psi(p.alpha * k + p.beta))
    return val if printed else val / s


def _pure_db(p, s, printed=False):
    val = -_sum(_pure_rule(p), p.lam / s, _psi(p.alpha, p.beta))
    return val if printed else val / s


def _w_lt1(p, s):
    return _sum(_ml(p.alpha, p.beta), p.lam / s) / s


def _w_d1(p, s, k_weight, printed=False):
    def w(k):
        base = sc.psi(p.alpha * k + p.beta)
        return k * base if k_weight else base
    if printed:
        # "± s^-k": the sign multiplies every term instead of alternating
        return -math.copysign(1.0, p.lam) * _sum(_ml(p.alpha, p.beta), abs(p.lam) / s, w) / s
    return -_sum(_ml(p.alpha, p.beta), p.lam / s, w) / s


def _w_lt2(p, s):
    return s ** (-p.beta) * math.exp(p.lam * s ** (-p.alpha))


def _w_da2(p, s):
    return -p.lam * math.log(s) * s ** (-p.alpha - p.beta) * math.exp(p.lam * s ** (-p.alpha))


def _w_db2(p, s):
    return -math.log(s) * s ** (-p.beta) * math.exp(p.lam * s ** (-p.alpha))


def _p_lt(p, s):
    return s ** (p.alpha * p.gamma - p.beta) / (s ** p.alpha - p.lam) ** p.gamma


def _p_da(p, s):
    return -p.gamma * p.lam * s ** (p.alpha * p.gamma - p.beta) * math.log(s) / (s ** p.alpha - p.lam) ** (
        p.gamma + 1.0)


def _p_db(p, s):
    return -s ** (p.alpha * p.gamma - p.beta) * math.log(s) / (s ** p.alpha - p.lam) ** p.gamma


def _p_dg(p, s, printed=False):
    bracket = p.alpha * math.log(s) - math.log(s ** p.alpha - p.lam)
    return _p_lt(p, s) * (-bracket if printed else bracket)


def _p2_lt(p, s):
    return s ** (-p.gamma) * _sum(_p2_rule(p), p.lam / s)


def _p2_da(p, s):
    return -s ** (-p.gamma) * _sum(_p2_rule(p), p.lam / s, lambda k: k * sc.psi(p.alpha * k + p.beta))


def _p2_db(p, s):
    return -s ** (-p.gamma) * _sum(_p2_rule(p), p.lam / s, _psi(p.alpha, p.beta))


def _p2_dg(p, s):
    ls = math.log(s)
    return s ** (-p.gamma) * _sum(_p2_rule(p), p.lam / s,
                                  lambda k: 2.0 * sc.psi(p.gamma + k) - sc.psi(p.gamma) - ls)


def _p2_printed(kind):
    def rhs(p, s):
        pref = sc.gamma(p.gamma) * s ** (-p.gamma)
        co = _ml(p.alpha, p.beta)
        z = p.lam / s
        if kind == "lt":
            return pref * _sum(co, z)
        if kind == "da":
            return -pref * _sum(co, z, lambda k: k * sc.psi(p.alpha * k + p.beta))
        if kind == "db":
            return -pref * _sum(co, z, _psi(p.alpha, p.beta))
        return pref * (sc.psi(p.gamma) - math.log(s)) * _sum(co, z)
    return rhs


def _m4_z(p, s):
    return p.lam * s ** (-p.alpha)


def _m4_lt(p, s):
    return s ** (-p.beta) * _sum(_ml(p.alpha2, p.beta2), _m4_z(p, s))


def _m4_da1(p, s, printed=False):
    val = -s ** (-p.beta) * _sum(_ml(p.alpha2, p.beta2), _m4_z(p, s), lambda k: k)
    return val if printed else math.log(s) * val


def _m4_db1(p, s):
    return -math.log(s) * _m4_lt(p, s)


def _m4_da2(p, s):
    return -s ** (-p.beta) * _sum(_ml(p.alpha2, p.beta2), _m4_z(p, s),
                                  lambda k: k * sc.psi(p.alpha2 * k + p.beta2))


def _m4_db2(p, s):
    return -s ** (-p.beta) * _sum(_ml(p.alpha2, p.beta2), _m4_z(p, s), _psi(p.alpha2, p.beta2))


def _lr(p, power):
    return _Coeffs(F.LEROY, p.alpha, p.beta, power)


def _lr_lt(p, s):
    return s ** (-p.beta) * _sum(_lr(p, p.gamma - 1.0), p.lam * s ** (-p.alpha))


def _lr_lt_printed(p, s):
    return s ** (-p.beta) * _sum(_lr(p, p.gamma), p.lam * s ** (-p.alpha))


def _lr_g2(p, s):
    return s ** (-p.beta) * _sum(_ml(p.alpha, p.beta), p.lam * s ** (-p.alpha))


def _lr_d(p, s, k_weight):
    ls = math.log(s)

    def w(k):
        base = ls + (p.gamma - 1.0) * sc.psi(p.alpha * k + p.beta)
        return k * base if k_weight else base
    return -s ** (-p.beta) * _sum(_lr(p, p.gamma - 1.0), p.lam * s ** (-p.alpha), w)


def _lr_dg(p, s):
    return -s ** (-p.beta) * _sum(_lr(p, p.gamma - 1.0), p.lam * s ** (-p.alpha),
                                  lambda k: sc.gammaln(p.alpha * k + p.beta))


def _log_weight_series(coeffs, power, shift, printed=False):
    """t^power Σ c_n z^n (ln t − γ₀ − ψ(αn+β')) with z = λ t^α.

    ``shift`` is β' (the Γ argument offset of ``coeffs``).  The printed
    variant carries the prefactor (1+r) of the log-power integral instead of
    1/(1+r), i.e. an extra factor (αn+β'−1)².
    """
    def rhs(p, t):
        lt = math.log(t) - G0
        a = p.alpha
        b = shift(p)

        def w(k):
            base = lt - sc.psi(a * k + b)
            return base * (a * k + b - 1.0) ** 2 if printed else base
        return t ** power(p) * _sum(coeffs(p), p.lam * t ** p.alpha, w)
    return rhs


def _rhs2(coeffs, power):
    return lambda p, t: t ** power(p) * _sum(coeffs(p), p.lam * t ** p.alpha)


def _intplog(p, t, printed=False):
    r = p.r
    core = t ** (1.0 + r) * (math.log(t) - G0 - sc.psi(2.0 + r))
    return (1.0 + r) * core if printed else core / (1.0 + r)


# -- catalog ----------------------------------------------------------------------

def _P(alpha, beta, lam, gamma=1.0, **kw):
    return ParamSet(alpha=alpha, beta=beta, gamma=gamma, lam=lam, **kw)


_ML_PRESETS = (_P(0.5, 1.0, 1.0), _P(0.7, 1.3, -0.5), _P(2.0, 0.5, 0.5))
_ML_D_PRESETS = (_P(0.5, 1.0, 1.0), _P(1.3, 0.7, -0.5), _P(2.0, 2.0, 0.5))
_PURE_PRESETS = (_P(1.3, 1.0, 1.0, mode=ProfileMode.PLAIN), _P(2.0, 0.5, 1.0, mode=ProfileMode.PLAIN))
_W1_PRESETS = (_P(0.5, 1.0, 1.0, mode=ProfileMode.PLAIN), _P(0.7, 1.3, -1.0, mode=ProfileMode.PLAIN),
               _P(1.3, 0.5, 0.5, mode=ProfileMode.PLAIN))
_W2_PRESETS = (_P(0.5, 1.0, 1.0), _P(0.7, 1.3, -0.5), _P(2.0, 0.7, 0.5))
_PR_PRESETS = (_P(0.5, 1.0, 1.0, gamma=2.0), _P(0.7, 1.3, -0.5, gamma=0.5), _P(1.3, 2.0, 0.5, gamma=1.3))
_P2_PRESETS = (_P(1.3, 1.0, 1.0, gamma=2.0, mode=ProfileMode.GAMMA),
               _P(2.0, 0.7, -0.5, gamma=0.5, mode=ProfileMode.GAMMA))
_M4_PRESETS = (_P(0.5, 1.0, 1.0, alpha2=1.3, beta2=0.7), _P(0.7, 1.3, -0.5, alpha2=0.5, beta2=2.0))
_LR_PRESETS = (_P(0.5, 1.0, 1.0, gamma=2.0), _P(0.7, 1.3, -0.5, gamma=1.3), _P(1.3, 0.7, 0.5, gamma=2.0))
_LR2_PRESETS = (_P(0.5, 1.0, 1.0, gamma=2.0), _P(1.3, 0.7, 0.5, gamma=2.0))
_T1_PRESETS = (_P(0.5, 1.0, 1.0), _P(0.7, 1.3, -0.5), _P(1.0, 2.0, 0.5))
_T2_PRESETS = (_P(0.5, 1.3, 1.0), _P(1.0, 2.0, 0.5), _P(0.7, 2.0, -0.5))
_T6_PRESETS = (_P(0.5, 1.0, 1.0, gamma=2.0), _P(0.7, 1.3, -0.5, gamma=0.5))
_T7_PRESETS = (_P(0.5, 1.3, 1.0, gamma=2.0), _P(0.7, 2.0, -0.5, gamma=0.5))
_AUX_PRESETS = (ParamSet(r=0.0), ParamSet(r=0.5), ParamSet(r=-0.5))
_T3_PRESETS = (_P(0.5, 1.0, 1.0), _P(0.7, 1.3, 0.5))
_T4_PRESETS = (_P(0.5, 1.3, 1.0), _P(0.7, 1.0, 0.5))
_T5_PRESETS = (_P(0.5, 1.3, 1.0), _P(0.7, 2.0, 0.5))
_T8_PRESETS = (_P(0.5, 1.3, 0.5, gamma=2.0), _P(0.7, 2.0, -0.5, gamma=0.5))

NOTES = {
    "TH23-EXP": "printed series carries s^{-k}; term-wise transform of the pure profile gives s^{-k-1}",
    "W1AB-SIGN": "printed '± s^{-k}' puts one sign on every term; the argument -t needs (±1)^k s^{-k}",
    "W2A-MID": "printed middle expression repeats the undifferentiated transform; the final expression is right",
    "M4A1-LOG": "printed right side lacks the factor ln s",
    "LR-SUBJ": "printed subject is t^{γ-1}; the image series with [Γ]^{γ-1} needs t^{β-1} "
               "(and equals s^{-β}F^{(γ-1)}, printed as F^{(γ)})",
    "P-DG-SIGN": "printed bracket [-α ln s + ln(s^α-λ)] has the opposite sign of ∂/∂γ of the transform",
    "P2-COEF": "printed right sides match the coefficient Γ(γ)/Γ(γ+k) rather than (γ)_k/k!; "
               "with the standard Prabhakar coefficient the image is s^{-γ}Σ(γ)_kΓ(γ+k)λ^k/(k!Γ(αk+β))s^{-k}",
    "INTPLOG-PREF": "printed prefactor (1+r) should be 1/(1+r)",
    "RHS1-PREF": "printed expansion inherits the (1+r) prefactor of the log-power integral",
    "T8-SIGN": "printed combination equals minus ∂/∂γ (inherits the sign of the printed ∂/∂γ transform)",
}


def _ident(id, lhs, tol, domain, family, wrt, mode, oracle, rhs, validity, presets, erratum=None,
           printed_oracle=None, printed_rhs=None):
    return Identity(
        id=id, lhs=lhs, tol_class=tol, domain=domain, family=family, wrt=wrt, mode=mode, oracle=oracle,
        rhs=rhs, validity=tuple(validity), presets=tuple(presets), erratum=erratum,
        erratum_note=NOTES.get(erratum) if erratum else None,
        printed_oracle=printed_oracle, printed_rhs=printed_rhs,
    )


def _build_catalog() -> tuple:
    S, N = ToleranceClass.SINGLE, ToleranceClass.NESTED
    TP, TD = LhsKind.TRANSFORM_OF_PROFILE, LhsKind.TRANSFORM_OF_DERIV
    CV, AX = LhsKind.CONV_FORM_EQUALS_DERIV, LhsKind.AUX_INTEGRAL
    B, Gm, Pl = ProfileMode.BETA, ProfileMode.GAMMA, ProfileMode.PLAIN
    A_, B_, G_ = Wrt.ALPHA, Wrt.BETA, Wrt.GAMMA
    sv = (S_POS, INSIDE)
    out = [
        _ident("ML.LT", TP, S, "s", F.ML2, None, B, _transform_oracle(_profile_fn(F.ML2)), _ml_lt, sv,
               _ML_PRESETS),
        _ident("ML.dA", TD, S, "s", F.ML2, A_, B, _transform_oracle(_deriv_fn(F.ML2, A_)), _ml_da, sv,
               _ML_D_PRESETS),
        _ident("ML.dB", TD, S, "s", F.ML2, B_, B, _transform_oracle(_deriv_fn(F.ML2, B_)), _ml_db, sv,
               _ML_D_PRESETS),
        _ident("ML.pure.LT", TP, S, "s", F.ML2, None, Pl, _transform_oracle(_profile_fn(F.ML2)), _pure_lt,
               (S_POS, ALPHA_GT1), _PURE_PRESETS),
        _ident("ML.pure.dA", TD, S, "s", F.ML2, A_, Pl, _transform_oracle(_deriv_fn(F.ML2, A_)), _pure_da,
               (S_POS, ALPHA_GT1), _PURE_PRESETS, "TH23-EXP",
               printed_rhs=lambda p, s: _pure_da(p, s, printed=True)),
        _ident("ML.pure.dB", TD, S, "s", F.ML2, B_, Pl, _transform_oracle(_deriv_fn(F.ML2, B_)), _pure_db,
               (S_POS, ALPHA_GT1), _PURE_PRESETS, "TH23-EXP",
               printed_rhs=lambda p, s: _pure_db(p, s, printed=True)),
        _ident("W.LT1", TP, S, "s", F.WRIGHT, None, Pl, _transform_oracle(_profile_fn(F.WRIGHT)), _w_lt1,
               (S_POS,), _W1_PRESETS),
        _ident("W.dA1", TD, S, "s", F.WRIGHT, A_, Pl, _transform_oracle(_deriv_fn(F.WRIGHT, A_)),
               lambda p, s: _w_d1(p, s, True), (S_POS,), _W1_PRESETS, "W1AB-SIGN",
               printed_rhs=lambda p, s: _w_d1(p, s, True, printed=True)),
        _ident("W.dB1", TD, S, "s", F.WRIGHT, B_, Pl, _transform_oracle(_deriv_fn(F.WRIGHT, B_)),
               lambda p, s: _w_d1(p, s, False), (S_POS,), _W1_PRESETS, "W1AB-SIGN",
               printed_rhs=lambda p, s: _w_d1(p, s, False, printed=True)),
        _ident("W.LT2", TP, S, "s", F.WRIGHT, None, B, _transform_oracle(_profile_fn(F.WRIGHT)), _w_lt2,
               (S_POS,), _W2_PRESETS),
        _ident("W.dA2", TD, S, "s", F.WRIGHT, A_, B, _transform_oracle(_deriv_fn(F.WRIGHT, A_)), _w_da2,
               (S_POS,), _W2_PRESETS, "W2A-MID", printed_rhs=_w_lt2),
        _ident("W.dB2", TD, S, "s", F.WRIGHT, B_, B, _transform_oracle(_deriv_fn(F.WRIGHT, B_)), _w_db2,
               (S_POS,), _W2_PRESETS, "W2A-MID", printed_rhs=_w_lt2),
        _ident("P.LT", TP, S, "s", F.PRABHAKAR, None, B, _transform_oracle(_profile_fn(F.PRABHAKAR)), _p_lt,
               sv, _PR_PRESETS),
        _ident("P.dA", TD, S, "s", F.PRABHAKAR, A_, B, _transform_oracle(_deriv_fn(F.PRABHAKAR, A_)), _p_da,
               sv, _PR_PRESETS),
        _ident("P.dB", TD, S, "s", F.PRABHAKAR, B_, B, _transform_oracle(_deriv_fn(F.PRABHAKAR, B_)), _p_db,
               sv, _PR_PRESETS),
        _ident("P.dG", TD, S, "s", F.PRABHAKAR, G_, B, _transform_oracle(_deriv_fn(F.PRABHAKAR, G_)), _p_dg,
               sv, _PR_PRESETS, "P-DG-SIGN", printed_rhs=lambda p, s: _p_dg(p, s, printed=True)),
        _ident("P2.LT", TP, S, "s", F.PRABHAKAR, None, Gm, _transform_oracle(_profile_fn(F.PRABHAKAR)),
               _p2_lt, (S_POS, ALPHA_GT1), _P2_PRESETS, "P2-COEF", printed_rhs=_p2_printed("lt")),
        _ident("P2.dA", TD, S, "s", F.PRABHAKAR, A_, Gm, _transform_oracle(_deriv_fn(F.PRABHAKAR, A_)),
               _p2_da, (S_POS, ALPHA_GT1), _P2_PRESETS, "P2-COEF", printed_rhs=_p2_printed("da")),
        _ident("P2.dB", TD, S, "s", F.PRABHAKAR, B_, Gm, _transform_oracle(_deriv_fn(F.PRABHAKAR, B_)),
               _p2_db, (S_POS, ALPHA_GT1), _P2_PRESETS, "P2-COEF", printed_rhs=_p2_printed("db")),
        _ident("P2.dG", TD, S, "s", F.PRABHAKAR, G_, Gm, _transform_oracle(_deriv_fn(F.PRABHAKAR, G_)),
               _p2_dg, (S_POS, ALPHA_GT1), _P2_PRESETS, "P2-COEF", printed_rhs=_p2_printed("dg")),
        _ident("M4.LT", TP, S, "s", F.ML4, None, B, _transform_oracle(_profile_fn(F.ML4)), _m4_lt,
               (S_POS, HAS_ML4), _M4_PRESETS),
        _ident("M4.dA1", TD, S, "s", F.ML4, Wrt.ALPHA1, B, _transform_oracle(_deriv_fn(F.ML4, Wrt.ALPHA1)),
               _m4_da1, (S_POS, HAS_ML4), _M4_PRESETS, "M4A1-LOG",
               printed_rhs=lambda p, s: _m4_da1(p, s, printed=True)),
        _ident("M4.dB1", TD, S, "s", F.ML4, Wrt.BETA1, B, _transform_oracle(_deriv_fn(F.ML4, Wrt.BETA1)),
               _m4_db1, (S_POS, HAS_ML4), _M4_PRESETS),
        _ident("M4.dA2", TD, S, "s", F.ML4, Wrt.ALPHA2, B, _transform_oracle(_deriv_fn(F.ML4, Wrt.ALPHA2)),
               _m4_da2, (S_POS, HAS_ML4), _M4_PRESETS),
        _ident("M4.dB2", TD, S, "s", F.ML4, Wrt.BETA2, B, _transform_oracle(_deriv_fn(F.ML4, Wrt.BETA2)),
               _m4_db2, (S_POS, HAS_ML4), _M4_PRESETS),
        _ident("LR.LT", TP, S, "s", F.LEROY, None, B, _transform_oracle(_profile_fn(F.LEROY)), _lr_lt,
               (S_POS, GAMMA_GT1), _LR_PRESETS, "LR-SUBJ",
               printed_oracle=_shifted_oracle("profile"), printed_rhs=_lr_lt_printed),
        _ident("LR.g2", TP, S, "s", F.LEROY, None, B, _transform_oracle(_profile_fn(F.LEROY)), _lr_g2,
               (S_POS, GAMMA_IS2), _LR2_PRESETS, "LR-SUBJ", printed_oracle=_shifted_oracle("profile")),
        _ident("LR.dA", TD, S, "s", F.LEROY, A_, B, _transform_oracle(_deriv_fn(F.LEROY, A_)),
               lambda p, s: _lr_d(p, s, True), (S_POS, GAMMA_GT1), _LR_PRESETS, "LR-SUBJ",
               printed_oracle=_shifted_oracle("deriv", A_)),
        _ident("LR.dB", TD, S, "s", F.LEROY, B_, B, _transform_oracle(_deriv_fn(F.LEROY, B_)),
               lambda p, s: _lr_d(p, s, False), (S_POS, GAMMA_GT1), _LR_PRESETS, "LR-SUBJ",
               printed_oracle=_shifted_oracle("deriv", B_)),
        _ident("LR.dG", TD, S, "s", F.LEROY, G_, B, _transform_oracle(_deriv_fn(F.LEROY, G_)), _lr_dg,
               (S_POS, GAMMA_GT1), _LR_PRESETS, "LR-SUBJ", printed_oracle=_shifted_oracle("deriv", G_)),
        # convolution forms: the oracle is the convolution, the right side the derivative series
        _ident("CONV.T1", CV, S, "t", F.ML2, A_, B, _log_conv_oracle(_g_t1, lambda p: p.lam),
               _deriv_rhs(F.ML2, A_), (T_POS, AB_GT1), _T1_PRESETS),
        _ident("CONV.T1.rhs1", AX, S, "t", F.ML2, A_, B, _log_conv_oracle(_g_t1, shift=False),
               _log_weight_series(lambda p: _prab(2.0, p.alpha, p.alpha + p.beta), lambda p: p.alpha + p.beta - 1.0,
                                  lambda p: p.alpha + p.beta),
               (T_POS, AB_GT1), _T1_PRESETS, "RHS1-PREF",
               printed_rhs=_log_weight_series(lambda p: _prab(2.0, p.alpha, p.alpha + p.beta),
                                              lambda p: p.alpha + p.beta - 1.0, lambda p: p.alpha + p.beta,
                                              printed=True)),
        _ident("CONV.T1.rhs2", AX, S, "t", F.ML2, A_, B, _plain_integral_oracle(_g_t1),
               _rhs2(lambda p: _prab(2.0, p.alpha, p.alpha + p.beta), lambda p: p.alpha + p.beta - 1.0),
               (T_POS, AB_GT1), _T1_PRESETS),
        _ident("CONV.T2", CV, S, "t", F.ML2, B_, B, _log_conv_oracle(_g_t2), _deriv_rhs(F.ML2, B_),
               (T_POS, BETA_GT1), _T2_PRESETS),
        _ident("CONV.T2.rhs1", AX, S, "t", F.ML2, B_, B, _log_conv_oracle(_g_t2, shift=False),
               _log_weight_series(lambda p: _ml(p.alpha, p.beta), lambda p: p.beta - 1.0, lambda p: p.beta),
               (T_POS, BETA_GT1), _T2_PRESETS, "RHS1-PREF",
               printed_rhs=_log_weight_series(lambda p: _ml(p.alpha, p.beta), lambda p: p.beta - 1.0,
                                              lambda p: p.beta, printed=True)),
        _ident("CONV.T2.rhs2", AX, S, "t", F.ML2, B_, B, _plain_integral_oracle(_g_t2),
               _rhs2(lambda p: _ml(p.alpha, p.beta), lambda p: p.beta - 1.0), (T_POS, BETA_GT1), _T2_PRESETS),
        _ident("AUX.INTPLOG", AX, S, "t", None, None, B, _log_conv_oracle(_g_intplog, shift=False), _intplog,
               (T_POS, HAS_R), _AUX_PRESETS, "INTPLOG-PREF",
               printed_rhs=lambda p, t: _intplog(p, t, printed=True)),
        _ident("CONV.T3", CV, N, "t", F.WRIGHT, None, B, _t3_oracle,
               lambda p, t: time_profile(F.WRIGHT, p, t, 1e-12), (T_POS, ALPHA_LT1), _T3_PRESETS),
        _ident("CONV.T4", CV, N, "t", F.WRIGHT, A_, B, _over_grid(_t4_single), _deriv_rhs(F.WRIGHT, A_),
               (T_POS, ALPHA_LT1, AB_GT1), _T4_PRESETS),
        _ident("CONV.T5", CV, N, "t", F.WRIGHT, B_, B, _over_grid(_t5_single), _deriv_rhs(F.WRIGHT, B_),
               (T_POS, ALPHA_LT1, BETA_GT1), _T5_PRESETS),
        _ident("CONV.T6", CV, S, "t", F.PRABHAKAR, A_, B, _log_conv_oracle(_g_t6, lambda p: p.gamma * p.lam),
               _deriv_rhs(F.PRABHAKAR, A_), (T_POS, AB_GT1), _T6_PRESETS),
        _ident("CONV.T6.rhs1", AX, S, "t", F.PRABHAKAR, A_, B, _log_conv_oracle(_g_t6, shift=False),
               _log_weight_series(lambda p: _prab(p.gamma + 1.0, p.alpha, p.alpha + p.beta),
                                  lambda p: p.alpha + p.beta - 1.0, lambda p: p.alpha + p.beta),
               (T_POS, AB_GT1), _T6_PRESETS, "RHS1-PREF",
               printed_rhs=_log_weight_series(lambda p: _prab(p.gamma + 1.0, p.alpha, p.alpha + p.beta),
                                              lambda p: p.alpha + p.beta - 1.0, lambda p: p.alpha + p.beta,
                                              printed=True)),
        _ident("CONV.T6.rhs2", AX, S, "t", F.PRABHAKAR, A_, B, _plain_integral_oracle(_g_t6),
               _rhs2(lambda p: _prab(p.gamma + 1.0, p.alpha, p.alpha + p.beta), lambda p: p.alpha + p.beta - 1.0),
               (T_POS, AB_GT1), _T6_PRESETS),
        _ident("CONV.T7", CV, S, "t", F.PRABHAKAR, B_, B, _log_conv_oracle(_g_t7), _deriv_rhs(F.PRABHAKAR, B_),
               (T_POS, BETA_GT1), _T7_PRESETS),
        _ident("CONV.T7.rhs1", AX, S, "t", F.PRABHAKAR, B_, B, _log_conv_oracle(_g_t7, shift=False),
               _log_weight_series(lambda p: _prab(p.gamma, p.alpha, p.beta), lambda p: p.beta - 1.0,
                                  lambda p: p.beta),
               (T_POS, BETA_GT1), _T7_PRESETS, "RHS1-PREF",
               printed_rhs=_log_weight_series(lambda p: _prab(p.gamma, p.alpha, p.beta), lambda p: p.beta - 1.0,
                                              lambda p: p.beta, printed=True)),
        _ident("CONV.T7.rhs2", AX, S, "t", F.PRABHAKAR, B_, B, _plain_integral_oracle(_g_t7),
               _rhs2(lambda p: _prab(p.gamma, p.alpha, p.beta), lambda p: p.beta - 1.0), (T_POS, BETA_GT1),
               _T7_PRESETS),
        _ident("CONV.T8", CV, N, "t", F.PRABHAKAR, G_, B, _over_grid(_t8_single), _deriv_rhs(F.PRABHAKAR, G_),
               (T_POS, ALPHA_LT1, BETA_GT1, BETA_GT_ALPHA), _T8_PRESETS, "T8-SIGN",
               printed_oracle=_over_grid(_t8_printed_single)),
    ]
    return tuple(out)


_CATALOG = _build_catalog()
_BY_ID = {ident.id: ident for ident in _CATALOG}


def catalog() -> list:
    """All identities in a fixed order."""
    return list(_CATALOG)


def get_identity(identity_id: str) -> Identity:
    try:
        return _BY_ID[identity_id]
    except KeyError:
        raise DomainError(f"unknown identity {identity_id!r}") from None


def closed_form_rhs(identity_id: str, p: ParamSet, x: float, printed: bool = False) -> float:
    """Right-hand side of an identity at s (transforms) or t (convolutions)."""
    ident = get_identity(identity_id)
    p = ident.params(p)
    bad = ident.violated(p, x)
    if bad is not None:
        raise ValidityError(f"{identity_id}: outside validity region {bad}", predicate=bad)
    fn = ident.printed_rhs if printed and ident.printed_rhs is not None else ident.rhs
    return float(fn(p, float(x)))


def default_grid(ident: Identity, p: ParamSet) -> list:
    """Default samples; the s grid is scaled up until |λ s^-α| ≤ 0.8."""
    if ident.domain == "t":
        return list(T_GRID)
    factor = 1.0
    if p.lam != 0:
        s_min = (abs(p.lam) / S_MARGIN) ** (1.0 / p.alpha)
        factor = max(1.0, s_min / S_GRID[0])
    return [s * factor for s in S_GRID]


# -- checking ---------------------------------------------------------------------

@dataclass
class PointResult:
    x: float
    lhs: float | None
    rhs: float | None
    rel_err: float | None
    status: str  # "ok", "out_of_region", "degraded", "error"
    message: str | None = None


@dataclass
class IdentityCheckReport:
    id: str
    params: dict
    grid: list
    points: list
    max_rel_err: float | None
    verdict: Verdict
    tol_class: ToleranceClass
    tolerance: float
    erratum_note: str | None
    oracle_cost: int
    degraded: bool = False
    variant: str = "canonical"

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "variant": self.variant,
            "params": dict(self.params),
            "grid": list(self.grid),
            "max_rel_err": self.max_rel_err,
            "verdict": self.verdict.value,
            "tol_class": self.tol_class.value,
            "tolerance": self.tolerance,
            "erratum_note": self.erratum_note,
            "degraded": self.degraded,
            "oracle_cost": self.oracle_cost,
            "points": [
                {"x": pt.x, "lhs": pt.lhs, "rhs": pt.rhs, "rel_err": pt.rel_err, "status": pt.status,
                 "message": pt.message}
                for pt in self.points
            ],
        }


def relative_error(lhs: float, rhs: float) -> float:
    """|lhs - rhs| / |rhs|, or the absolute error when rhs is exactly zero."""
    diff = abs(lhs - rhs)
    return diff if rhs == 0 else diff / abs(rhs)


DEFAULT_CFG = QuadratureConfig()


def check_identity(identity_id: str, p: ParamSet, grid: Sequence[float] | None = None,
                   tol_class: ToleranceClass | None = None, cfg: QuadratureConfig = DEFAULT_CFG,
                   printed: bool = False) -> IdentityCheckReport:
    """Compare oracle and right side over a grid of s (or t) values.

    ``printed=True`` evaluates the printed variant of a flagged formula.
    """
    ident = get_identity(identity_id)
    p = ident.params(p)
    if grid is None:
        grid = default_grid(ident, p)
    grid = [float(x) for x in grid]
    tclass = ToleranceClass(tol_class) if tol_class is not None else ident.tol_class
    tol = tclass.tolerance
    oracle = ident.oracle
    rhs_fn = ident.rhs
    if printed:
        if not ident.has_printed_variant:
            raise DomainError(f"{identity_id} has no printed variant")
        oracle = ident.printed_oracle or oracle
        rhs_fn = ident.printed_rhs or rhs_fn

    points = [PointResult(x, None, None, None, "ok") for x in grid]
    inside = []
    for pt in points:
        bad = ident.violated(p, pt.x)
        if bad is None:
            inside.append(pt)
        else:
            pt.status = "out_of_region"
            pt.message = f"outside validity region {bad}"

    cost = 0
    degraded = False
    if inside:
        xs = [pt.x for pt in inside]
        lhs_vals = None
        try:
            res = oracle(p, xs, cfg)
            lhs_vals = res.value
            cost = res.evaluations
        except AccuracyError as exc:
            degraded = True
            cost = exc.evaluations
            # fall back to point-by-point so the best estimates are kept
            lhs_vals = []
            for x in xs:
                try:
                    r = oracle(p, [x], cfg)
                    lhs_vals.append(float(r.value[0]))
                    cost += r.evaluations
                except AccuracyError as inner:
                    best = inner.best_estimate
                    lhs_vals.append(float(np.ravel(best)[0]) if best is not None else float("nan"))
            lhs_vals = np.array(lhs_vals)
        for pt, lv in zip(inside, lhs_vals):
            pt.lhs = float(lv)
            try:
                pt.rhs = float(rhs_fn(p, pt.x))
            except ParamlapError as exc:
                pt.status = "error"
                pt.message = str(exc)
                continue
            pt.rel_err = relative_error(pt.lhs, pt.rhs) if math.isfinite(pt.lhs) else float("inf")
            if degraded and pt.rel_err > tol:
                pt.status = "degraded"

    judged = [pt for pt in inside if pt.status in ("ok", "error")]
    errs = [pt.rel_err for pt in inside if pt.rel_err is not None]
    max_err = max(errs) if errs else None
    if not inside:
        verdict = Verdict.SKIPPED_OUT_OF_REGION
    elif any(pt.status == "error" for pt in judged) or any(pt.rel_err > tol for pt in judged if pt.rel_err is not None):
        verdict = Verdict.FAIL
    else:
        verdict = Verdict.PASS
    return IdentityCheckReport(
        id=ident.id, params=p.as_dict(), grid=grid, points=points, max_rel_err=max_err, verdict=verdict,
        tol_class=tclass, tolerance=tol, erratum_note=ident.erratum_note, oracle_cost=cost, degraded=degraded,
        variant="printed" if printed else "canonical",
    )


@dataclass(frozen=True)
class Preset:
    """One parameter set to check, optionally restricted to some identities."""

    params: ParamSet
    grid: tuple | None = None
    identity_id: str | None = None
    family: FunctionFamily | None = None
    wrt: Wrt | None = None

    def matches(self, ident: Identity) -> bool:
        if self.identity_id is not None:
            return ident.id == self.identity_id
        if self.family is not None and ident.family is not self.family:
            return False
        if self.wrt is not None and ident.wrt is not self.wrt:
            return False
        return True


def preset_from_dict(d: dict) -> Preset:
    """Build a preset from ``{id?, family?, wrt?, alpha, beta, gamma?, lambda, alpha2?, beta2?, r?, grid?}``."""
    known = {"id", "family", "wrt", "alpha", "beta", "gamma", "lambda", "alpha2", "beta2", "r", "mode", "grid"}
    extra = set(d) - known
    if extra:
        raise DomainError(f"unknown preset field(s): {', '.join(sorted(extra))}")
    kwargs = {}
    for key, name in (("alpha", "alpha"), ("beta", "beta"), ("gamma", "gamma"), ("lambda", "lam"),
                      ("alpha2", "alpha2"), ("beta2", "beta2"), ("r", "r"), ("mode", "mode")):
        if key in d and d[key] is not None:
            kwargs[name] = d[key] if key == "mode" else float(d[key])
    params = ParamSet(**kwargs)
    family = FunctionFamily(d["family"]) if d.get("family") else None
    wrt = Wrt(d["wrt"]) if d.get("wrt") else None
    if family is FunctionFamily.ML4 and wrt is not None:
        wrt = {Wrt.ALPHA: Wrt.ALPHA1, Wrt.BETA: Wrt.BETA1}.get(wrt, wrt)
    grid = tuple(float(x) for x in d["grid"]) if d.get("grid") else None
    if d.get("id") is not None:
        get_identity(d["id"])
    return Preset(params, grid, d.get("id"), family, wrt)


def default_jobs(ids: Iterable[str] | None = None) -> list:
    """(identity id, params, grid) for every catalog entry's default presets."""
    wanted = None if ids is None else set(ids)
    out = []
    for ident in _CATALOG:
        if wanted is not None and ident.id not in wanted:
            continue
        for p in ident.presets:
            out.append((ident.id, p, None))
    return out


def run_all(presets: Sequence[Preset] | None = None, sink: Callable | None = None,
            cfg: QuadratureConfig = DEFAULT_CFG, ids: Iterable[str] | None = None,
            jobs: int = 1) -> list:
    """Check every catalog entry on its default presets (or on ``presets``).

    Reports come back in catalog order whatever the execution order; each is
    also handed to ``sink`` when given.
    """
    if presets is None:
        work = default_jobs(ids)
    else:
        wanted = None if ids is None else set(ids)
        work = []
        for ident in _CATALOG:
            if wanted is not None and ident.id not in wanted:
                continue
            for pre in presets:
                if pre.matches(ident):
                    work.append((ident.id, pre.params, pre.grid))

    def one(item):
        identity_id, p, grid = item
        return check_identity(identity_id, p, grid, cfg=cfg)

    if jobs > 1 and len(work) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(one, work))
    else:
        reports = [one(item) for item in work]
    if sink is not None:
        for rep in reports:
            sink(rep)
    return reports

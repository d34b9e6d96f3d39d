import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from paramlap.derivatives import ALLOWED, DerivTarget, Wrt, deriv_array, deriv_fd_oracle, deriv_series
from paramlap.errors import DomainError
from paramlap.gamma_kernel import EULER_MASCHERONI
from paramlap.series import FunctionFamily as F, ParamSet, ProfileMode

mp.mp.dps = 30
PAIRS = [(fam, wrt) for fam, wrts in ALLOWED.items() for wrt in sorted(wrts, key=lambda w: w.value)]


def test_examples():
    assert deriv_series(DerivTarget(F.ML2, Wrt.ALPHA), ParamSet(0.7, 1.2, lam=0), 2.0).value == 0.0
    assert deriv_series(DerivTarget(F.ML2, Wrt.BETA), ParamSet(1, 1, lam=0), 1.0).value == pytest.approx(
        0.5772156649015329, rel=1e-15)
    tgt = DerivTarget(F.ML2, Wrt.ALPHA)
    p = ParamSet(1, 1, lam=1)
    assert deriv_series(tgt, p, 1.0).value == pytest.approx(deriv_fd_oracle(tgt, p, 1.0), rel=1e-6)


def test_fd_oracle_examples():
    tb = DerivTarget(F.ML2, Wrt.BETA)
    assert deriv_fd_oracle(tb, ParamSet(1, 1, lam=0), 1.0, h=1e-4) == pytest.approx(EULER_MASCHERONI, abs=1e-7)
    ta = DerivTarget(F.ML2, Wrt.ALPHA)
    p = ParamSet(1, 1, lam=1)
    assert deriv_fd_oracle(ta, p, 1.0, h=1e-4) == pytest.approx(deriv_fd_oracle(ta, p, 1.0, h=5e-5), abs=1e-7)
    tg = DerivTarget(F.PRABHAKAR, Wrt.GAMMA)
    q = ParamSet(1, 1, gamma=1, lam=0.5)
    assert deriv_fd_oracle(tg, q, 1.0, h=1e-4) == pytest.approx(deriv_series(tg, q, 1.0).value, rel=1e-6)


def test_target_validation():
    with pytest.raises(DomainError, match="no parameter"):
        DerivTarget(F.ML2, Wrt.GAMMA)
    with pytest.raises(DomainError):
        DerivTarget(F.BESSEL_I0, Wrt.ALPHA)
    assert DerivTarget(F.ML4, Wrt.ALPHA).wrt is Wrt.ALPHA1
    with pytest.raises(DomainError, match="leaves the domain"):
        deriv_fd_oracle(DerivTarget(F.ML2, Wrt.BETA), ParamSet(1, 1e-5, lam=1), 1.0, h=1e-4)
    with pytest.raises(DomainError):
        deriv_series(DerivTarget(F.ML2, Wrt.BETA), ParamSet(1, 1), 0.0)


params = st.tuples(st.floats(0.3, 2), st.floats(0.3, 2), st.floats(0.3, 2), st.floats(-0.9, 0.9),
                   st.floats(0.3, 2), st.floats(0.3, 2), st.floats(0.25, 4))


@pytest.mark.parametrize("family, wrt", PAIRS, ids=[f"{f.value}-{w.value}" for f, w in PAIRS])
@given(vals=params)
def test_series_matches_fd_oracle(family, wrt, vals):
    a, b, g, lam, a2, b2, t = vals
    p = ParamSet(a, b, g, lam, alpha2=a2, beta2=b2)
    tgt = DerivTarget(family, wrt)
    d = deriv_series(tgt, p, t).value
    fd = deriv_fd_oracle(tgt, p, t)
    assert abs(d - fd) <= 1e-6 * max(1.0, abs(d))


def _mp_profile(family, a, b, g, lam, t, a2=1.0, b2=1.0):
    z = lam * t ** a
    if family is F.ML2:
        c = lambda k: mp.rgamma(a * k + b)  # noqa: E731
    elif family is F.PRABHAKAR:
        c = lambda k: mp.rf(g, k) / mp.factorial(k) * mp.rgamma(a * k + b)  # noqa: E731
    elif family is F.WRIGHT:
        c = lambda k: mp.rgamma(a * k + b) / mp.factorial(k)  # noqa: E731
    elif family is F.LEROY:
        c = lambda k: mp.rgamma(a * k + b) ** g  # noqa: E731
    else:
        c = lambda k: mp.rgamma(a * k + b) * mp.rgamma(a2 * k + b2)  # noqa: E731
    return t ** (b - 1) * mp.fsum(c(k) * z ** k for k in range(120))


@pytest.mark.parametrize("family, wrt, index", [
    (F.ML2, Wrt.ALPHA, 0), (F.ML2, Wrt.BETA, 1), (F.PRABHAKAR, Wrt.GAMMA, 2), (F.WRIGHT, Wrt.ALPHA, 0),
    (F.LEROY, Wrt.GAMMA, 2), (F.LEROY, Wrt.BETA, 1), (F.ML4, Wrt.ALPHA2, 4),
])
def test_series_matches_mpmath_derivative(family, wrt, index):
    base = [mp.mpf("0.8"), mp.mpf("1.3"), mp.mpf("1.7"), mp.mpf("-0.6"), mp.mpf("0.9"), mp.mpf("1.1")]
    t = mp.mpf("1.9")

    def f(x):
        args = list(base)
        args[index] = x
        a, b, g, lam, a2, b2 = args
        return _mp_profile(family, a, b, g, lam, t, a2, b2)

    ref = float(mp.diff(f, base[index]))
    p = ParamSet(*(float(v) for v in base[:4]), alpha2=float(base[4]), beta2=float(base[5]))
    assert deriv_series(DerivTarget(family, wrt), p, float(t)).value == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("family", [F.ML2, F.PRABHAKAR, F.ML4, F.WRIGHT, F.LEROY])
def test_alpha_derivative_vanishes_without_lambda(family):
    p = ParamSet(0.8, 1.4, 1.6, 0.0, alpha2=0.7, beta2=1.1)
    assert deriv_series(DerivTarget(family, Wrt.ALPHA), p, 2.3).value == 0.0


@given(st.floats(0.3, 2), st.floats(0.3, 2), st.floats(0.25, 4))
def test_beta_derivative_constant_term(alpha, beta, t):
    # with λ = 0 only k = 0 survives: t^(β-1) (ln t - ψ(β)) / Γ(β)
    val = deriv_series(DerivTarget(F.ML2, Wrt.BETA), ParamSet(alpha, beta, lam=0.0), t).value
    expected = t ** (beta - 1) * (math.log(t) - float(mp.digamma(beta))) / math.gamma(beta)
    assert val == pytest.approx(expected, rel=1e-12, abs=1e-15)


def test_modes_change_log_weights():
    p = ParamSet(1.3, 0.9, gamma=1.4, lam=0.7)
    for mode in ProfileMode:
        q = p.with_(mode=mode)
        for wrt in (Wrt.ALPHA, Wrt.BETA, Wrt.GAMMA):
            tgt = DerivTarget(F.PRABHAKAR, wrt)
            assert deriv_series(tgt, q, 1.7).value == pytest.approx(deriv_fd_oracle(tgt, q, 1.7), rel=1e-8)


def test_deriv_array_vectorised():
    tgt = DerivTarget(F.WRIGHT, Wrt.BETA)
    p = ParamSet(0.6, 1.2, lam=-0.8)
    ts = np.array([0.3, 1.0, 2.5])
    np.testing.assert_allclose(deriv_array(tgt, p, ts), [deriv_series(tgt, p, t).value for t in ts], rtol=1e-11)

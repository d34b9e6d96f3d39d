import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from paramlap.errors import DomainError, RangeError
from paramlap.series import (
    FunctionFamily as F,
    ParamSet,
    ProfileMode,
    eval_series,
    profile_array,
    tail_terms_needed,
    time_profile,
)

mp.mp.dps = 40
pos = st.floats(0.2, 2.5)


def mp_series(coeff, z, kmax=400):
    """Direct high-precision partial sum used as the reference."""
    return float(mp.fsum(coeff(k) * mp.mpf(z) ** k for k in range(kmax)))


def test_examples():
    assert eval_series(F.ML2, ParamSet(1, 1), 1.0).value == pytest.approx(math.e, rel=1e-15)
    assert eval_series(F.ML2, ParamSet(2, 1), 4.0).value == pytest.approx(3.7621956910836314, rel=1e-15)
    assert eval_series(F.ML2, ParamSet(0.5, 2), 0.0).value == 1.0
    assert eval_series(F.WRIGHT, ParamSet(1, 1), 1.0).value == pytest.approx(2.2795853023360673, rel=1e-15)
    p = ParamSet(0.7, 1.3, gamma=1.0)
    assert eval_series(F.PRABHAKAR, p, 0.5).value == pytest.approx(eval_series(F.ML2, p, 0.5).value, rel=1e-14)


def test_time_profile_examples():
    assert time_profile(F.ML2, ParamSet(1, 1, lam=1), 1.0) == pytest.approx(math.e, rel=1e-14)
    assert time_profile(F.ML2, ParamSet(1, 2, lam=0), 3.0) == pytest.approx(3.0, rel=1e-15)
    p = ParamSet(0.5, 1, lam=1)
    assert time_profile(F.WRIGHT, p, 1.0) == pytest.approx(eval_series(F.WRIGHT, p, 1.0).value, rel=1e-15)


def test_profile_modes():
    p = ParamSet(0.7, 1.3, gamma=2.0, lam=0.5)
    t = 1.7
    g = time_profile(F.PRABHAKAR, p.with_(mode=ProfileMode.GAMMA), t)
    assert g == pytest.approx(t ** (p.gamma - 1) * eval_series(F.PRABHAKAR, p, p.lam * t).value, rel=1e-14)
    pl = time_profile(F.ML2, p.with_(mode="plain"), t)
    assert pl == pytest.approx(eval_series(F.ML2, p, p.lam * t).value, rel=1e-14)


def test_parameter_validation():
    with pytest.raises(DomainError, match="alpha must be positive"):
        ParamSet(alpha=-1.0)
    with pytest.raises(DomainError):
        ParamSet(beta=0.0)
    with pytest.raises(DomainError):
        ParamSet(lam=float("nan"))
    with pytest.raises(DomainError):
        eval_series(F.ML4, ParamSet(1, 1), 0.5)
    with pytest.raises(DomainError):
        eval_series(F.ML2, ParamSet(1, 1), 0.5, tol=1e-1)
    with pytest.raises(DomainError):
        time_profile(F.ML2, ParamSet(1, 1), 0.0)


def test_huge_argument_is_range_error():
    with pytest.raises(RangeError):
        eval_series(F.ML2, ParamSet(0.3, 1), 1e4)
    # alternating series whose cancellation defeats double precision
    with pytest.raises(RangeError):
        eval_series(F.ML2, ParamSet(1, 1), -60.0)


@given(pos, pos, st.floats(-1, 3))
def test_ml2_against_mpmath(alpha, beta, z):
    ref = mp_series(lambda k: mp.rgamma(alpha * k + beta), z, kmax=3000)
    sv = eval_series(F.ML2, ParamSet(alpha, beta), z)
    assert sv.value == pytest.approx(ref, rel=1e-11, abs=1e-12)


def test_cancellation_is_reported():
    # Σ|terms| is ~1e4 times the value here; 1e-12 cannot be certified
    with pytest.raises(RangeError, match="cancellation"):
        eval_series(F.ML2, ParamSet(0.5, 1), -3.0, tol=1e-12)
    assert eval_series(F.ML2, ParamSet(0.5, 1), -3.0, tol=1e-9).value == pytest.approx(
        float(mp.exp(9) * mp.erfc(3)), rel=1e-8)


@given(pos, pos, pos, st.floats(-1, 2))
def test_prabhakar_against_mpmath(alpha, beta, gamma, z):
    ref = mp_series(lambda k: mp.rf(gamma, k) / mp.factorial(k) * mp.rgamma(alpha * k + beta), z)
    sv = eval_series(F.PRABHAKAR, ParamSet(alpha, beta, gamma), z)
    assert sv.value == pytest.approx(ref, rel=1e-10, abs=1e-12)


@given(pos, pos, pos, pos, st.floats(-1, 2))
def test_ml4_against_mpmath(a1, b1, a2, b2, z):
    ref = mp_series(lambda k: mp.rgamma(a1 * k + b1) * mp.rgamma(a2 * k + b2), z)
    sv = eval_series(F.ML4, ParamSet(a1, b1, alpha2=a2, beta2=b2), z)
    assert sv.value == pytest.approx(ref, rel=1e-10, abs=1e-12)


@given(pos, pos, st.floats(0.5, 3), st.floats(-1, 2))
def test_leroy_against_mpmath(alpha, beta, gamma, z):
    ref = mp_series(lambda k: mp.rgamma(alpha * k + beta) ** gamma, z, kmax=3000)
    sv = eval_series(F.LEROY, ParamSet(alpha, beta, gamma), z)
    assert sv.value == pytest.approx(ref, rel=1e-10, abs=1e-12)


def test_bessel_and_classical_leroy():
    assert eval_series(F.BESSEL_I0, ParamSet(), 1.5).value == pytest.approx(float(mp.besseli(0, 2 * mp.sqrt(1.5))),
                                                                          rel=1e-14)
    assert eval_series(F.LEROY_CLASSICAL, ParamSet(gamma=1.0), 0.7).value == pytest.approx(math.exp(0.7), rel=1e-14)


@given(pos, pos, st.floats(-1, 3))
def test_reductions_to_ml2(alpha, beta, z):
    ml = eval_series(F.ML2, ParamSet(alpha, beta), z).value
    assert eval_series(F.PRABHAKAR, ParamSet(alpha, beta, 1.0), z).value == pytest.approx(ml, rel=1e-10, abs=1e-10)
    assert eval_series(F.LEROY, ParamSet(alpha, beta, 1.0), z).value == pytest.approx(ml, rel=1e-10, abs=1e-10)


@given(st.floats(0.3, 3), st.floats(-3, 3))
def test_leroy_unit_parameters_is_classical(gamma, z):
    a = eval_series(F.LEROY, ParamSet(1, 1, gamma), z).value
    b = eval_series(F.LEROY_CLASSICAL, ParamSet(gamma=gamma), z).value
    assert a == pytest.approx(b, rel=1e-10, abs=1e-10)


@given(pos, pos, st.floats(-2, 2))
def test_ml4_small_second_order_approaches_ml2(a1, b1, z):
    ml = eval_series(F.ML2, ParamSet(a1, b1), z).value
    m4 = eval_series(F.ML4, ParamSet(a1, b1, alpha2=1e-6, beta2=1.0), z).value
    assert m4 == pytest.approx(ml, rel=1e-4, abs=1e-4)


@given(pos, pos, pos, pos, pos)
def test_value_at_zero(alpha, beta, gamma, a2, b2):
    p = ParamSet(alpha, beta, gamma, alpha2=a2, beta2=b2)
    g = math.gamma
    assert eval_series(F.ML2, p, 0.0).value == pytest.approx(1 / g(beta), rel=1e-14)
    assert eval_series(F.PRABHAKAR, p, 0.0).value == pytest.approx(1 / g(beta), rel=1e-14)
    assert eval_series(F.WRIGHT, p, 0.0).value == pytest.approx(1 / g(beta), rel=1e-14)
    assert eval_series(F.ML4, p, 0.0).value == pytest.approx(1 / (g(beta) * g(b2)), rel=1e-14)
    assert eval_series(F.LEROY, p, 0.0).value == pytest.approx(g(beta) ** -gamma, rel=1e-13)


@given(st.sampled_from([F.ML2, F.PRABHAKAR, F.WRIGHT, F.LEROY]), pos, pos, st.floats(0.5, 2), st.floats(-1, 3))
def test_tail_bound_is_honest(family, alpha, beta, gamma, z):
    p = ParamSet(alpha, beta, gamma)
    coarse = eval_series(family, p, z, tol=1e-8)
    fine = eval_series(family, p, z, tol=1e-9)
    assert coarse.tail_bound <= 1e-8 * max(1, abs(coarse.value))
    assert abs(fine.value - coarse.value) <= coarse.tail_bound + 1e-15 * max(1, abs(fine.value))


@given(st.sampled_from([F.ML2, F.PRABHAKAR, F.ML4, F.WRIGHT, F.LEROY]), pos, pos,
       st.lists(st.floats(0, 4), min_size=2, max_size=6))
def test_monotone_in_nonnegative_z(family, alpha, beta, zs):
    p = ParamSet(alpha, beta, 1.5, alpha2=0.8, beta2=1.2)
    zs = sorted(zs)
    vals = [eval_series(family, p, z).value for z in zs]
    assert all(b >= a - 1e-13 * abs(b) for a, b in zip(vals, vals[1:]))


def test_tail_terms_needed_examples():
    assert tail_terms_needed(F.ML2, ParamSet(1, 1), 0.0, 1e-12) == 0
    n = tail_terms_needed(F.ML2, ParamSet(1, 1), 1.0, 1e-12)
    assert 15 <= n <= 25
    # direct check: the remainder of e after n terms is below tol
    assert math.e - sum(1 / math.factorial(k) for k in range(n + 1)) <= 1e-12
    assert tail_terms_needed(F.LEROY, ParamSet(1, 1, 2), 1.0, 1e-12) <= n


@given(st.sampled_from([F.ML2, F.WRIGHT, F.LEROY]), pos, pos, st.floats(0.01, 5), st.floats(0.01, 5))
def test_tail_terms_monotone_in_abs_z(family, alpha, beta, z1, z2):
    p = ParamSet(alpha, beta, 1.5)
    lo, hi = sorted((z1, z2))
    assert tail_terms_needed(family, p, lo, 1e-12) <= tail_terms_needed(family, p, hi, 1e-12)


def test_profile_array_matches_scalar():
    p = ParamSet(0.6, 0.8, lam=-0.7)
    ts = np.array([0.1, 0.5, 2.0, 3.5])
    np.testing.assert_allclose(profile_array(F.ML2, p, ts), [time_profile(F.ML2, p, t, 1e-14) for t in ts],
                               rtol=1e-12)


def test_large_gamma_arguments_do_not_overflow():
    # Γ(αk+β) passes 171 long before the terms become negligible
    v = eval_series(F.ML2, ParamSet(0.25, 1), 3.0).value
    ref = mp_series(lambda k: mp.rgamma(0.25 * k + 1), 3.0, kmax=2000)
    assert v == pytest.approx(ref, rel=1e-12)

import cmath
import math

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from askeycalc.errors import DenominatorPole, NearDegenerate, QOutOfRange
from askeycalc.scalars import (Mode, QContext, close, hyper_terminating, q_binomial,
                               q_factorial, q_half, q_int, qhyper_terminating,
                               qpoch_finite, qpoch_infinite, recip_gamma, rel_err,
                               shift_ratio)

finite = st.floats(-3, 3, allow_nan=False)


def cx(re, im):
    return complex(re, im)


def test_q_int_generic_values():
    ctx = QContext(2.0)
    assert q_int(ctx, 0) == 0
    assert q_int(ctx, 1) == pytest.approx(1)
    # (8 - 1/8) / (2 - 1/2)
    assert q_int(ctx, 3) == pytest.approx(5.25)
    assert q_int(ctx, -3) == pytest.approx(-5.25)


def test_degenerate_modes_give_limits():
    one = QContext(1, Mode.LAMBDA_ONE)
    minus = QContext(-1, Mode.LAMBDA_MINUS_ONE)
    assert [q_int(one, m) for m in range(5)] == [0, 1, 2, 3, 4]
    assert [q_int(minus, m) for m in range(5)] == [0, 1, -2, 3, -4]
    assert shift_ratio(one, 3) == 9
    assert [shift_ratio(minus, m) for m in range(4)] == [0, 1, 0, 1]


def test_generic_tends_to_limit():
    near = QContext(1 + 1e-5)
    assert q_int(near, 7) == pytest.approx(7, rel=1e-8)
    assert shift_ratio(near, 4) == pytest.approx(16, rel=1e-8)


def test_near_degenerate_rejected():
    with pytest.raises(NearDegenerate):
        QContext(1 + 1e-8)
    with pytest.raises(NearDegenerate):
        QContext(-1 - 1e-9j)
    with pytest.raises(NearDegenerate):
        QContext(0)


def test_from_a_round_trip():
    ctx = QContext.from_a(0.5)
    assert (ctx.lam + 1 / ctx.lam) / 2 == pytest.approx(0.5)
    assert QContext.from_a(1).mode is Mode.LAMBDA_ONE
    assert QContext.from_a(-1).mode is Mode.LAMBDA_MINUS_ONE


@given(finite, finite, st.integers(0, 9), st.integers(0, 9))
def test_q_binomial_against_gaussian(re, im, r, k):
    lam = cmath.exp(complex(0.2 * re, im))
    if abs(lam - 1) < 1e-3 or abs(lam + 1) < 1e-3:
        return
    k = min(k, r)
    ctx = QContext(lam)
    q = lam * lam
    gauss = 1
    for j in range(k):
        gauss *= (1 - q ** (r - j)) / (1 - q ** (k - j))
    assert close(q_binomial(ctx, r, k), lam ** (-k * (r - k)) * gauss, rel=1e-9)


def test_q_factorial_matches_product():
    ctx = QContext(0.7 + 0.2j)
    assert close(q_factorial(ctx, 4), q_int(ctx, 2) * q_int(ctx, 3) * q_int(ctx, 4))
    assert q_half(ctx, 0) == 1


def test_qpoch_against_mpmath():
    for a, q in [(0.3, 0.5), (2 + 1j, 0.25 - 0.1j), (-5, 0.9)]:
        ref = complex(mp.qp(a, q))
        assert rel_err(qpoch_infinite(a, q), ref) < 1e-13
    assert qpoch_finite(0.5, 0.5, 3) == pytest.approx(0.5 * 0.75 * 0.875)
    assert qpoch_finite(7, 0.3, 0) == 1


def test_qpoch_rejects_large_q():
    with pytest.raises(QOutOfRange):
        qpoch_infinite(0.1, 0.995)


@given(st.floats(-12, 12), st.floats(-6, 6))
def test_recip_gamma_against_mpmath(re, im):
    z = cx(re, im)
    ref = complex(mp.rgamma(z))
    got = recip_gamma(z)
    assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref))


def test_recip_gamma_zeros_are_exact():
    assert recip_gamma(0) == 0
    assert recip_gamma(-3) == 0
    assert recip_gamma(5) == pytest.approx(1 / 24)


def test_hyper_terminating_against_mpmath():
    num, den = [-4, 2.5, 1.2 + 0.3j], [3.1, -0.7]
    ref = complex(mp.hyper(num, den, 0.8))
    assert rel_err(hyper_terminating(num, den, 0.8, 4), ref) < 1e-13


def test_hyper_pole_detected():
    with pytest.raises(DenominatorPole):
        hyper_terminating([-3, 1], [-1], 1, 3)


def test_qhyper_against_mpmath():
    q = 0.3
    num, den = [q ** -3, 0.4, 2.0], [0.7, 1.5]
    ref = complex(mp.qhyper(num, den, q, 0.9))
    assert rel_err(qhyper_terminating(num, den, q, 0.9, 3), ref) < 1e-12
    # unbalanced case picks up the extra power factor
    num2, den2 = [q ** -2, 0.4], [0.7, 1.5]
    ref2 = complex(mp.qhyper(num2, den2, q, 0.9))
    assert rel_err(qhyper_terminating(num2, den2, q, 0.9, 2), ref2) < 1e-12


def test_close_and_rel_err():
    assert close(1.0, 1.0 + 1e-12)
    assert not close(1.0, 1.1)
    assert rel_err(0, 0) == 0
    assert math.isclose(rel_err(2, 1), 0.5)

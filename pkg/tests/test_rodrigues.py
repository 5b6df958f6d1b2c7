from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from askeycalc.errors import CoincidentNodes, DegenerateChi, QOutOfRange, RamifiedOnly
from askeycalc.families import (ArithmeticChi, GeometricChi, QuadraticChi, TrigChi,
                                askey_wilson, chi_to_problem, hahn, jacobi, qhahn, wilson)
from askeycalc.hyperop import HProblem
from askeycalc.poly import LaurentPoly, Poly
from askeycalc.pseq import canonical, Form, make_pseq
from askeycalc.rodrigues import (RationalFactored, closed_weight, feq_residual, rho1_from_rho,
                                 rodrigues_eval, rodrigues_verify, sample_window, solve_feq,
                                 solve_rho)
from askeycalc.suite import random_q, random_rational, trig_pair_constant, trig_pair_constant_recursive

OFF = 0.3 + 0.2j
PRESETS = [hahn((2, 3), (5, 7)), wilson((0.3, 0.7, 1.1, 1.9)),
           qhahn(0.3, (2, 3), (5, 7)), askey_wilson(0.25, (0.9, 0.6, 0.3, 0.2))]
IDS = [s.name for s in PRESETS]


@given(st.integers(0, 10 ** 6))
def test_feq_random(seed):
    rng = np.random.default_rng(seed)
    R, q = random_rational(rng), random_q(rng)
    F = solve_feq(R, q)
    for _ in range(4):
        x = complex(rng.normal(), rng.normal())
        assert feq_residual(F, R, q, x) < 1e-10


def test_feq_large_q_is_inverted():
    R = RationalFactored(0.7 - 0.2j, 1, (0.3,), (0.5j,))
    q = 1 / (0.4 + 0.3j)
    F = solve_feq(R, q)
    for x in (0.3, 1 + 1j, -1.5j):
        assert feq_residual(F, R, q, x) < 1e-10


def test_feq_against_mpmath_product():
    # R = 1 - xi x is solved by (xi x; q)_inf
    F = solve_feq(RationalFactored(1, 0, (0.4,)), 0.5)
    assert abs(F(1.5) - complex(mp.qp(0.6, 0.5))) < 1e-14


def test_feq_factor_law():
    rng = np.random.default_rng(5)
    for _ in range(10):
        R1, R2, q = random_rational(rng), random_rational(rng), random_q(rng)
        F1, F2 = solve_feq(R1, q), solve_feq(R2, q)
        prod = lambda x: F1(x) * F2(x)
        x = complex(rng.normal(), rng.normal())
        assert feq_residual(prod, R1 * R2, q, x) < 1e-10


def test_feq_rejects_unit_circle():
    with pytest.raises(QOutOfRange):
        solve_feq(RationalFactored(1), 1j)
    with pytest.raises(QOutOfRange):
        solve_feq(RationalFactored(1), 0.995)
    with pytest.raises(DegenerateChi):
        RationalFactored(0)


@pytest.mark.parametrize("spec", PRESETS, ids=IDS)
def test_rodrigues_presets(spec):
    chain = solve_rho(spec.problem, spec.theta.shifted(OFF))
    for k in range(7):
        assert rodrigues_verify(chain, k, sample_window(chain.theta, 2 * k + 4)) < 1e-7


@pytest.mark.parametrize("spec", PRESETS, ids=IDS)
def test_chain_closed_vs_recurrence(spec):
    chain = solve_rho(spec.problem, spec.theta.shifted(OFF))
    closed = np.array([[chain.rho(j, i / 2) for i in range(40)] for j in range(9)])
    for sign in (1, -1):
        grid = chain.grid(8, 0, 40, sign)
        assert np.max(np.abs(grid - closed) / np.abs(closed)) < 1e-9
    assert max(chain.functional_residual(i / 2) for i in range(40)) < 1e-8
    assert max(chain.consistency_residual(i / 2) for i in range(20)) < 1e-9
    for t in (0.5, 1.0, 2.5):
        assert abs(rho1_from_rho(chain, t) - chain.rho(1, t)) < 1e-9 * abs(chain.rho(1, t))


def test_hahn_weight_against_gamma():
    spec = PRESETS[0]
    rho = closed_weight(spec.problem)
    x = 1.3 + 0.4j
    ref = mp.rgamma(1 + x - 5) * mp.rgamma(1 + x - 7) * mp.rgamma(1 - x + 2) * mp.rgamma(1 - x + 3)
    assert abs(rho(0, x) - complex(ref)) < 1e-12 * abs(complex(ref))


def test_qhahn_weight_against_qp():
    spec = PRESETS[2]
    rho = closed_weight(spec.problem)
    q, x = 0.3, 0.11 + 0.05j
    ref = (mp.qp(5 * q * x, q) * mp.qp(7 * q * x, q)) / (mp.qp(2 * x, q) * mp.qp(3 * x, q))
    assert abs(rho(0, x) - complex(ref)) < 1e-12 * abs(complex(ref))


def test_trig_constants_exact():
    lam = Fraction(3, 5)
    for j in range(10):
        assert trig_pair_constant(lam, j) == trig_pair_constant_recursive(lam, j)
    assert trig_pair_constant(Fraction(1, 2), 3) == Fraction(-1, 8) * 64


def test_trig_chain_uses_pair_constant():
    spec = PRESETS[3]
    chain = solve_rho(spec.problem, spec.theta.shifted(OFF))
    lam = spec.problem.ctx.lam
    xi = (0.9, 0.6, 0.3, 0.2)
    q = lam * lam
    for j in range(5):
        u = chain.theta.at(0.25) * 1
        x = chain.theta.at(0.25)
        u = x + np.sqrt(x * x - 1 + 0j)
        body = complex(mp.qp(lam * u * u, q) * mp.qp(lam / (u * u), q))
        for v in xi:
            body /= complex(mp.qp(v * lam ** j * u, q) * mp.qp(v * lam ** j / u, q))
        want = trig_pair_constant(lam, j) * body
        assert abs(chain.rho(j, 0.25) - want) < 1e-11 * abs(want)


def _random_chain(chi, x0):
    p = chi_to_problem(chi, dmax=6)
    return solve_rho(p, make_pseq(p.P, x0, 1))


@given(st.integers(0, 10 ** 6))
def test_random_chi_chains(seed):
    rng = np.random.default_rng(seed)
    c = lambda n, s=1.0: rng.normal(size=n) * s + 1j * rng.normal(size=n) * s
    lam = np.sqrt(0.3 + 0.1j)
    g2 = c(1)[0]
    g0 = c(1)[0]
    xis = 0.2 + 0.6 * rng.random(2)
    chis = [
        ArithmeticChi(Poly([*c(2), g2]), Poly([*c(2), g2])),
        ArithmeticChi(Poly(c(2)), Poly(c(1))),
        QuadraticChi(Poly(c(5))),
        GeometricChi(Poly([g0, *c(2, 0.5)]), Poly([g0, *c(1, 0.5)]), lam),
        TrigChi(LaurentPoly(np.polynomial.polynomial.polyfromroots(1 / xis) * np.prod(xis), -2), lam),
        TrigChi(LaurentPoly(np.polynomial.polynomial.polyfromroots(1 / xis[:1]) * xis[0], -1), lam),
    ]
    for chi in chis:
        try:
            chain = _random_chain(chi, 0.37 + 0.21j)
        except Exception as exc:  # sampled an eigenvalue collision
            assert type(exc).__name__ == "EigenvalueCollision"
            continue
        assert max(chain.functional_residual(0.5 * i) for i in range(6)) < 1e-8
        g = chain.grid(3, 0, 6, 1)
        cl = np.array([[chain.rho(j, i / 2) for i in range(6)] for j in range(4)])
        assert np.max(np.abs(g - cl) / np.abs(cl)) < 1e-8


def test_continuous_weights():
    spec = jacobi(0.5, 1.5)
    rho = closed_weight(spec.problem)
    p = spec.problem
    for x in (0.1, -0.4, 0.73):
        lhs = mp.diff(lambda y: rho(1, complex(y)), x, h=1e-4)
        assert abs(complex(lhs) - rho(0, x) * p.tau(x)) < 1e-6
    lag = HProblem(canonical(Form.C), Poly([0, 1]), Poly([1.5, -1]))
    rho = closed_weight(lag)
    assert abs(rho(0, 2.0) - 2.0 ** 0.5 * np.exp(-2)) < 1e-14
    herm = HProblem(canonical(Form.C), Poly([1]), Poly([0, -2]))
    assert abs(closed_weight(herm)(0, 1.0) - np.exp(-1)) < 1e-14
    with pytest.raises(RamifiedOnly):
        closed_weight(HProblem(canonical(Form.C), Poly([1, 1, 1]), Poly([0, 1])))
    with pytest.raises(CoincidentNodes):
        rodrigues_eval(solve_rho(spec.problem, spec.theta), 1, 0)


def test_rodrigues_terms_shape():
    spec = PRESETS[0]
    chain = solve_rho(spec.problem, spec.theta.shifted(OFF))
    terms = rodrigues_eval(chain, 3, 0.5)
    assert len(terms.nodes) == 4 and terms.residual < 1e-9

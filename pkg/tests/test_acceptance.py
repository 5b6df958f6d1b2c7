"""End-to-end acceptance gates. Each test prints one PASS/FAIL line; the
lines are repeated in the terminal summary."""
import time
from fractions import Fraction

import numpy as np
import pytest

from askeycalc.families import askey_wilson, cross_check, hahn, jacobi, qhahn, wilson
from askeycalc.hyperop import eigen_matrix_oracle, eigenfunction
from askeycalc.operators import op_D, op_partial, op_S, phi, taylor_coeffs, taylor_reconstruct
from askeycalc.ortho import eigen_gram, measure, off_diagonal_ratio
from askeycalc.poly import Poly
from askeycalc.pseq import Form, canonical, classify, discriminant
from askeycalc.rodrigues import (feq_residual, rodrigues_verify, sample_window, solve_feq,
                                 solve_rho)
from askeycalc.sampling import (FORMS, base_P, cnormal, normalized_lattice, random_conjugate,
                                random_poly, random_problem)
from askeycalc.scalars import q_binomial, worst_of
from askeycalc.suite import (random_q, random_rational, trig_pair_constant,
                             trig_pair_constant_recursive)

pytestmark = pytest.mark.acceptance

OFF = 0.3 + 0.2j
HAHN = hahn((2, 3), (5, 7))
WILSON = wilson((0.3, 0.7, 1.1, 1.9))
QHAHN = qhahn(0.3, (2, 3), (5, 7))
AW = askey_wilson(0.25, (0.9, 0.6, 0.3, 0.2))
JACOBI = jacobi(0.5, 0.5)
LATTICE_PRESETS = (HAHN, WILSON, QHAHN, AW)


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def test_c01_taylor_round_trip(gate):
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    for i in range(1000):
        d = int(rng.integers(0, 13))
        P, s = normalized_lattice(FORMS[i % 5], rng, 2 * max(d, 1))
        f = random_poly(rng, d)
        worst = worst_of(worst, f.distance(taylor_reconstruct(s, taylor_coeffs(P, s, f))))
    elapsed = time.perf_counter() - start
    gate("C1 Taylor round trip", worst < 1e-9 and elapsed < 5.0,
         f"1000 cases, max rel {worst:.2e} (< 1e-9), {elapsed:.2f}s (< 5s)")


def test_c02_lowering_law(gate):
    rng = np.random.default_rng(102)
    worst = 0.0
    for form in FORMS:
        for _ in range(3):
            P = random_conjugate(base_P(form, rng), rng)
            x = cnormal(rng, 0.5)
            ys = [cnormal(rng) for _ in range(4)]
            for r in range(11):
                Pr = phi(P, x, r)
                for k in range(r + 1):
                    lhs = op_partial(P, Pr, k)
                    rhs = phi(P, x, r - k) * q_binomial(P.ctx, r, k)
                    worst = worst_of(worst, (_rel(complex(lhs(y)), complex(rhs(y))) for y in ys))
    gate("C2 lowering law", worst < 1e-9, f"r <= 10, pointwise max rel {worst:.2e} (< 1e-9)")


def test_c03_operator_identities(gate):
    rng = np.random.default_rng(103)
    worst = 0.0
    for i in range(500):
        P = random_conjugate(base_P(FORMS[i % 5], rng), rng)
        f = random_poly(rng, int(rng.integers(0, 9)))
        g = random_poly(rng, int(rng.integers(0, 9)))
        delta, a = discriminant(P), P.a
        shift = Poly([P.b, a - 1])
        Sf, Sg, Df, Dg = op_S(P, f), op_S(P, g), op_D(P, f), op_D(P, g)
        D2f, SDf = op_D(P, Df), op_S(P, Df)
        worst = worst_of(
            worst,
            op_S(P, f * g).distance(Sf * Sg + delta * Df * Dg),
            op_D(P, f * g).distance(Df * Sg + Sf * Dg),
            op_D(P, Sf).distance((a + 1) * shift * D2f + a * SDf),
            op_S(P, Sf).distance(a * delta * D2f + (a + 1) * shift * SDf + f))
    gate("C3 operator identities", worst < 1e-9, f"500 pairs, max coeff residual {worst:.2e} (< 1e-9)")


def test_c04_eigen_dual_oracle(gate):
    rng = np.random.default_rng(104)
    worst = 0.0
    for form in FORMS:
        for _ in range(20):
            p, th = random_problem(form, rng, dmax=10)
            for k in range(11):
                worst = worst_of(worst, eigenfunction(p, th, k).poly.distance(eigen_matrix_oracle(p, k)))
    gate("C4 eigenfunction dual oracle", worst < 1e-8,
         f"100 problems, k <= 10, max rel {worst:.2e} (< 1e-8)")


def test_c05_family_closed_forms(gate):
    errs = {s.name: cross_check(s, 8) for s in (HAHN, WILSON, QHAHN, AW, JACOBI)}
    worst = worst_of(errs.values())
    gate("C5 classical family match", worst < 1e-8,
         ", ".join(f"{n} {e:.1e}" for n, e in errs.items()) + " (< 1e-8)")


def test_c06_rodrigues(gate):
    worst = 0.0
    for spec in LATTICE_PRESETS:
        chain = solve_rho(spec.problem, spec.theta.shifted(OFF))
        for k in range(7):
            worst = worst_of(worst, rodrigues_verify(chain, k, sample_window(chain.theta, 2 * k + 4)))
    lam = Fraction(1, 2)
    exact = all(trig_pair_constant(lam, j) == trig_pair_constant_recursive(lam, j) for j in range(13))
    exact &= all(trig_pair_constant(Fraction(3, 7), j) == trig_pair_constant_recursive(Fraction(3, 7), j)
                 for j in range(13))
    gate("C6 Rodrigues identity", worst < 1e-7 and exact,
         f"k <= 6, 2k+4 points, max rel {worst:.2e} (< 1e-7); trig constants exact: {exact}")


def test_c07_rho_chain(gate):
    chain_err = func_err = 0.0
    for spec in LATTICE_PRESETS:
        chain = solve_rho(spec.problem, spec.theta.shifted(OFF))
        closed = np.array([[chain.rho(j, i / 2) for i in range(40)] for j in range(9)])
        for sign in (1, -1):
            chain_err = worst_of(chain_err, np.abs(chain.grid(8, 0, 40, sign) - closed) / np.abs(closed))
        func_err = worst_of(func_err, (chain.functional_residual(i / 2) for i in range(40)))
    gate("C7 rho chain consistency", chain_err < 1e-9 and func_err < 1e-8,
         f"j <= 8, 40 half-steps, recurrence {chain_err:.2e} (< 1e-9), functional {func_err:.2e} (< 1e-8)")


def test_c08_orthogonality(gate):
    spec = hahn((8, 10.3), (0, -1.6))
    gm = measure(solve_rho(spec.problem, spec.theta), 8)
    ratio = off_diagonal_ratio(eigen_gram(gm, 8))
    lo, hi = gm.boundary_values()
    gate("C8 discrete orthogonality", ratio < 1e-9,
         f"Hahn m = 8, boundary rho_1 {abs(lo):.1e}/{abs(hi):.1e}, off-diagonal {ratio:.2e} (< 1e-9)")


def test_c09_classification(gate):
    rng = np.random.default_rng(109)
    fails = 0
    for form in Form:
        rep = canonical(form)
        fails += classify(rep).tag is not form
        for _ in range(100):
            fails += classify(random_conjugate(rep, rng)).tag is not form
    gate("C9 classification invariance", fails == 0, f"7 representatives + 700 conjugates, {fails} failures")


def test_c10_feq_solver(gate):
    rng = np.random.default_rng(110)
    worst = 0.0
    for _ in range(50):
        R, q = random_rational(rng), random_q(rng, 0.9)
        F = solve_feq(R, q)
        worst = worst_of(worst, (feq_residual(F, R, q, cnormal(rng)) for _ in range(10)))
    law = 0.0
    for _ in range(20):
        R1, R2, q = random_rational(rng), random_rational(rng), random_q(rng, 0.9)
        F1, F2, F12 = solve_feq(R1, q), solve_feq(R2, q), solve_feq(R1 * R2, q)
        prod = lambda x: F1(x) * F2(x)
        for _ in range(5):
            x = cnormal(rng)
            law = worst_of(law, feq_residual(prod, R1 * R2, q, x))
            # F12 / (F1 F2) is q-periodic
            law = worst_of(law, _rel(F12(x) / prod(x), F12(q * x) / prod(q * x)))
    gate("C10 functional-equation solver", worst < 1e-10 and law < 1e-10,
         f"50 R x 10 points, max rel {worst:.2e} (< 1e-10); factor law {law:.2e}")

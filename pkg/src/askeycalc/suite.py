"""Seeded battery of identity checks shared by the command line and tests."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .families import askey_wilson, cross_check, hahn, jacobi, qhahn, wilson
from .hyperop import eigen_matrix_oracle, eigenfunction
from .operators import op_D, op_partial, op_S, phi, taylor_coeffs, taylor_reconstruct
from .ortho import eigen_gram, measure, off_diagonal_ratio, sbp_residual
from .poly import Poly
from .pseq import Form, canonical, classify, discriminant
from .rodrigues import (RationalFactored, feq_residual, rodrigues_verify, sample_window,
                        solve_feq, solve_rho)
from .sampling import (FORMS, base_P, cnormal, normalized_lattice, random_conjugate,
                       random_poly, random_problem)
from .scalars import q_binomial, worst_of


@dataclass(frozen=True)
class SuiteItem:
    name: str
    identity: str
    tol: float
    run: Callable[[np.random.Generator], float]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    identity: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


def _taylor(rng) -> float:
    worst = 0.0
    for i in range(200):
        form = FORMS[i % 5]
        d = int(rng.integers(0, 13))
        P, s = normalized_lattice(form, rng, 2 * max(d, 1))
        f = random_poly(rng, d)
        worst = worst_of(worst, f.distance(taylor_reconstruct(s, taylor_coeffs(P, s, f))))
    return worst


def _lowering(rng) -> float:
    worst = 0.0
    for form in FORMS:
        P = base_P(form, rng)
        x = cnormal(rng, 0.5)
        for r in range(11):
            Pr = phi(P, x, r)
            for k in range(r + 1):
                lhs = op_partial(P, Pr, k)
                rhs = phi(P, x, r - k) * q_binomial(P.ctx, r, k)
                worst = worst_of(worst, lhs.distance(rhs))
    return worst


def _operator_pairs(rng, n: int):
    for i in range(n):
        P = random_conjugate(base_P(FORMS[i % 5], rng), rng)
        yield P, random_poly(rng, int(rng.integers(0, 9))), random_poly(rng, int(rng.integers(0, 9)))


def _leibniz(rng) -> float:
    worst = 0.0
    for P, f, g in _operator_pairs(rng, 100):
        delta = discriminant(P)
        Sf, Sg, Df, Dg = op_S(P, f), op_S(P, g), op_D(P, f), op_D(P, g)
        worst = worst_of(worst,
                    op_S(P, f * g).distance(Sf * Sg + delta * Df * Dg),
                    op_D(P, f * g).distance(Df * Sg + Sf * Dg))
    return worst


def _commutation(rng) -> float:
    worst = 0.0
    for P, f, _ in _operator_pairs(rng, 100):
        a = P.a
        shift = Poly([P.b, a - 1])
        delta = discriminant(P)
        Df = op_D(P, f)
        D2f, SDf = op_D(P, Df), op_S(P, Df)
        lhs1 = op_D(P, op_S(P, f))
        lhs2 = op_S(P, op_S(P, f))
        worst = worst_of(worst,
                    lhs1.distance((a + 1) * shift * D2f + a * SDf),
                    lhs2.distance(a * delta * D2f + (a + 1) * shift * SDf + f))
    return worst


def _eigen(rng) -> float:
    worst = 0.0
    for form in FORMS:
        for _ in range(4):
            p, th = random_problem(form, rng, dmax=10)
            for k in range(11):
                worst = worst_of(worst, eigenfunction(p, th, k).poly.distance(eigen_matrix_oracle(p, k)))
    return worst


def presets():
    return [
        hahn((2, 3), (5, 7)),
        wilson((0.3, 0.7, 1.1, 1.9)),
        qhahn(0.3, (2, 3), (5, 7)),
        askey_wilson(0.25, (0.9, 0.6, 0.3, 0.2)),
        jacobi(0.5, 0.5),
    ]


def _families(rng) -> float:
    return worst_of(cross_check(spec, 8) for spec in presets())


OFF_LATTICE = 0.3 + 0.2j


def _rodrigues(rng) -> float:
    worst = 0.0
    for spec in presets()[:4]:
        chain = solve_rho(spec.problem, spec.theta.shifted(OFF_LATTICE))
        for k in range(7):
            worst = worst_of(worst, rodrigues_verify(chain, k, sample_window(chain.theta, 2 * k + 4)))
    return worst


def _rho_chain(rng) -> float:
    worst = 0.0
    for spec in presets()[:4]:
        chain = solve_rho(spec.problem, spec.theta.shifted(OFF_LATTICE))
        closed = np.array([[chain.rho(j, i / 2) for i in range(40)] for j in range(9)])
        for sign in (1, -1):
            grid = chain.grid(8, 0, 40, sign)
            worst = worst_of(worst, np.abs(grid - closed) / np.abs(closed))
    return worst


def _feq_lattice(rng) -> float:
    worst = 0.0
    for spec in presets()[:4]:
        chain = solve_rho(spec.problem, spec.theta.shifted(OFF_LATTICE))
        worst = worst_of(worst, (chain.functional_residual(0.5 * i) for i in range(40)))
    return worst


def trig_pair_constant(lam, j: int):
    """``(-lam)^j q^(-j(j-1)/2)``; exact for ``Fraction`` input."""
    return (-lam) ** j * (lam * lam) ** (-(j * (j - 1) // 2))


def trig_pair_constant_recursive(lam, j: int):
    """Product of the two one-sided constants ``k_{j+1} = +-lam^(1/2 - j) k_j``."""
    out = lam ** 0
    for i in range(j):
        out *= -lam ** (1 - 2 * i)
    return out


def _trig_constants(rng) -> float:
    lam = Fraction(2, 7)
    bad = sum(trig_pair_constant(lam, j) != trig_pair_constant_recursive(lam, j) for j in range(12))
    return float(bad)


def _ortho(rng) -> float:
    spec = hahn((8, 10.3), (0, -1.6))
    gm = measure(solve_rho(spec.problem, spec.theta), 8)
    return off_diagonal_ratio(eigen_gram(gm, 8))


def _sbp(rng) -> float:
    worst = 0.0
    for spec in presets()[:4]:
        chain = solve_rho(spec.problem, spec.theta.shifted(OFF_LATTICE))
        f, g = random_poly(rng, 4), random_poly(rng, 5)
        worst = worst_of(worst, (sbp_residual(chain, f, g, 0.5 * i) for i in range(6)))
    return worst


def _classify(rng) -> float:
    fails = 0
    for form in Form:
        rep = canonical(form)
        fails += classify(rep).tag is not form
        for _ in range(20):
            fails += classify(random_conjugate(rep, rng)).tag is not form
    return float(fails)


def random_rational(rng) -> RationalFactored:
    return RationalFactored(
        cnormal(rng), int(rng.integers(-2, 3)),
        tuple(cnormal(rng, 0.7) for _ in range(int(rng.integers(0, 3)))),
        tuple(cnormal(rng, 0.7) for _ in range(int(rng.integers(0, 3)))))


def random_q(rng, qmax: float = 0.9) -> complex:
    return complex(rng.uniform(0.1, qmax) * np.exp(2j * np.pi * rng.uniform()))


def _feq_solver(rng) -> float:
    worst = 0.0
    for _ in range(20):
        R, q = random_rational(rng), random_q(rng)
        F = solve_feq(R, q)
        for _ in range(5):
            worst = worst_of(worst, feq_residual(F, R, q, cnormal(rng)))
    return worst


ITEMS = [
    SuiteItem("taylor-roundtrip", "f = sum_k (partial_k f)(x_{k/2}) Phi_k(x_0, .)", 1e-9, _taylor),
    SuiteItem("lowering-law", "partial_k Phi_r(x, .) = [r k] Phi_{r-k}(x, .)", 1e-9, _lowering),
    SuiteItem("leibniz", "S(fg) = Sf Sg + delta Df Dg and D(fg) = Df Sg + Sf Dg", 1e-9, _leibniz),
    SuiteItem("commutation", "DS = (a+1)(A-x)D^2 + aSD and S^2 = a delta D^2 + (a+1)(A-x)SD + 1",
              1e-9, _commutation),
    SuiteItem("eigen-dual", "Taylor-ladder eigenfunction equals triangular-matrix eigenvector", 1e-8, _eigen),
    SuiteItem("family-closed-forms", "Hahn/Wilson/q-Hahn/Askey-Wilson/Jacobi closed hypergeometric forms",
              1e-8, _families),
    SuiteItem("rodrigues", "prod (mu_j - mu_k) rho f_k = prod [k-j] D^k rho_k", 1e-7, _rodrigues),
    SuiteItem("rho-chain", "closed rho_j equals both lattice recurrences", 1e-9, _rho_chain),
    SuiteItem("rho-functional", "rho(theta_t) s+(t) = rho(theta_{t+1}) s-(t+1)", 1e-8, _feq_lattice),
    SuiteItem("trig-constants", "(-lam)^j q^(-C(j,2)) from one-sided constants (exact)", 0.0, _trig_constants),
    SuiteItem("orthogonality", "Hahn Gram matrix on 9 nodes is diagonal", 1e-9, _ortho),
    SuiteItem("summation-by-parts", "rho (f Lg - g Lf) = D(rho_1 W(f, g))", 1e-9, _sbp),
    SuiteItem("classification", "affine conjugates keep their orbit tag (failure count)", 0.0, _classify),
    SuiteItem("feq-solver", "F(x) = R(x) F(qx) for factored R", 1e-10, _feq_solver),
]


def run_suite(seed: int = 0, tol: float | None = None,
              names: list[str] | None = None) -> list[SuiteResult]:
    """Run the items in a fixed order; each item gets its own seeded stream."""
    out = []
    for i, item in enumerate(ITEMS):
        if names and item.name not in names:
            continue
        rng = np.random.default_rng([seed, i])
        res = worst_of(item.run(rng))
        out.append(SuiteResult(item.name, item.identity, res, item.tol if tol is None else tol))
    return out


__all__ = ["SuiteItem", "SuiteResult", "ITEMS", "run_suite", "presets",
           "trig_pair_constant", "trig_pair_constant_recursive", "random_rational", "random_q"]

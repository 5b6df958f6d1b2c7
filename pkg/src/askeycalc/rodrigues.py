"""Weights for the hypergeometric operator: solutions of ``F(x) = R(x) F(qx)``,
the weight chain ``rho_j`` in closed form and by lattice recurrence, and the
Rodrigues-type representation of eigenfunctions."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

import numpy as np

from .errors import (CoincidentNodes, DegenerateChi, QOutOfRange, RamifiedOnly,
                     UnsupportedForm)
from .families import ArithmeticChi, GeometricChi, QuadraticChi, TrigChi, problem_to_chi
from .hyperop import HProblem, _roots, eigen_matrix_oracle, sigma_tilde
from .operators import centered_nodes, divided_difference
from .poly import Poly
from .pseq import Form, PSeq
from .scalars import (Q_MAX, q_factorial, qpoch_infinite, qpoch_infinite_scaled, recip_gamma,
                      worst_of)


# ------------------------------------------------------- F(x) = R(x) F(qx)

@dataclass(frozen=True)
class RationalFactored:
    """``R(x) = zeta x^r prod (1 - zeros_k x) / prod (1 - poles_k x)``."""

    zeta: complex
    r: int = 0
    zeros: tuple[complex, ...] = ()
    poles: tuple[complex, ...] = ()

    def __post_init__(self):
        if self.zeta == 0:
            raise DegenerateChi("zeta must be nonzero")

    def __call__(self, x: complex) -> complex:
        out = self.zeta * complex(x) ** self.r
        for z in self.zeros:
            out *= 1 - z * x
        for p in self.poles:
            out /= 1 - p * x
        return out

    def __mul__(self, other: "RationalFactored") -> "RationalFactored":
        return RationalFactored(self.zeta * other.zeta, self.r + other.r,
                                self.zeros + other.zeros, self.poles + other.poles)


def _g(xi: complex, q: complex, x: complex) -> complex:
    return qpoch_infinite(xi * x, q)


def _h(xi: complex, q: complex, x: complex) -> complex:
    return qpoch_infinite(q / (xi * x), q)


@dataclass(frozen=True)
class FeqSolution:
    """Meromorphic solution of ``F(x) = R(x) F(qx)`` built from q-products."""

    R: RationalFactored
    q: complex
    base: RationalFactored = field(repr=False)
    base_q: complex = field(repr=False)

    def __call__(self, x: complex) -> complex:
        R, q = self.base, self.base_q
        x = complex(x)
        gam = (-1) ** R.r * R.zeta
        out = 1 + 0j
        if gam != 1:
            out *= _g(gam, q, x) * _h(gam, q, x) / (_g(1, q, x) * _h(1, q, x))
        if R.r:
            out *= (_g(1, q, x) * _h(1, q, x)) ** R.r
        for z in R.zeros:
            out *= _g(z, q, x)
        for p in R.poles:
            out /= _g(p, q, x)
        return out


def solve_feq(R: RationalFactored, q: complex) -> FeqSolution:
    """Solve ``F(x) = R(x) F(qx)``; ``|q| > 1`` is folded onto ``1/q``."""
    q = complex(q)
    if q == 0 or abs(abs(q) - 1) < 1e-12:
        raise QOutOfRange(f"|q| = {abs(q)} admits no q-product solution")
    base, bq = R, q
    if abs(q) > 1:
        # F(x) = S(x) F(x/q) with S(x) = 1/R(x/q)
        base = RationalFactored(q ** R.r / R.zeta, -R.r,
                                tuple(p / q for p in R.poles), tuple(z / q for z in R.zeros))
        bq = 1 / q
    if abs(bq) > Q_MAX:
        raise QOutOfRange(f"|q| = {abs(bq)} exceeds {Q_MAX}")
    return FeqSolution(R, q, base, bq)


def feq_residual(F: Callable, R: Callable, q: complex, x: complex) -> float:
    lhs, rhs = F(x), R(x) * F(q * x)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


# ------------------------------------------------------- closed weight chains

ZERO_TOL = 1e-13


def _factor(poly: Poly) -> tuple[complex, list[complex]]:
    if poly.degree < 0:
        raise DegenerateChi("chi vanishes identically")
    return poly.lead, _roots(poly)


def _arith_closed(chi: ArithmeticChi):
    cp, rp = _factor(chi.plus)
    cm, rm = _factor(chi.minus)
    log_zeta = cmath.log((-1) ** len(rp) * cp / cm)

    def rho(j: int, x: complex) -> complex:
        out = cmath.exp((x + j / 2) * log_zeta) * cm ** j
        for r in rm:
            out *= recip_gamma(1 + x - j / 2 - r)
        for r in rp:
            out *= recip_gamma(1 - x - j / 2 + r)
        return out
    return rho


def _quad_closed(chi: QuadraticChi):
    c, roots = _factor(chi.chi)
    xis = [-r for r in roots]
    n = len(xis)

    def rho(j: int, x: complex) -> complex:
        t = cmath.sqrt(x)
        out = c ** j * (-1) ** (n * j)
        for xi in xis:
            out *= recip_gamma(1 - xi - j / 2 + t) * recip_gamma(1 - xi - j / 2 - t)
        return out
    return rho


def _inverse_roots(poly: Poly) -> tuple[complex, list[complex]]:
    # poly = g0 prod (1 - xi x)
    g0 = poly.coef(0)
    if abs(g0) <= ZERO_TOL * poly.norm():
        raise UnsupportedForm("chi has no constant term; only the product case is closed")
    return g0, [1 / r for r in _roots(poly)]


def _geom_closed(chi: GeometricChi):
    lam = chi.lam
    q = lam * lam
    g0, xp = _inverse_roots(chi.plus)
    _, xm = _inverse_roots(chi.minus)

    def rho(j: int, x: complex) -> complex:
        out = g0 ** j
        for v in xm:
            out *= qpoch_infinite(v * lam ** (2 - j) * x, q)
        for v in xp:
            out /= qpoch_infinite(v * lam ** j * x, q)
        return out
    return rho


def _trig_closed(chi: TrigChi):
    lam = chi.lam
    q = lam * lam
    lp = chi.chi
    top = float(np.abs(lp.coeffs).max())
    nz = [k for k in range(lp.low, lp.high + 1) if abs(lp.coef(k)) > ZERO_TOL * top]
    if not nz:
        raise DegenerateChi("chi vanishes identically")
    s = -nz[0]
    zeta = lp.coef(-s)
    # u^s chi(u) / zeta = prod (1 - xi u)
    poly = Poly([lp.coef(k) for k in range(-s, nz[-1] + 1)]) / zeta
    xis = [1 / r for r in _roots(poly)]
    sqlam = cmath.sqrt(lam)

    def monomial(j: int, u: complex) -> tuple[complex, int]:
        # weight chain for chi = u^-|s|, as a scaled pair
        m, odd = divmod(abs(s), 2)
        a, ea = qpoch_infinite_scaled(lam * u * u, q)
        b, eb = qpoch_infinite_scaled(lam / (u * u), q)
        out, e = ((-lam) ** j * q ** (-comb(j, 2)) * a * b) ** m, m * (ea + eb)
        if odd:
            a, ea = qpoch_infinite_scaled(-sqlam * u, lam)
            b, eb = qpoch_infinite_scaled(-sqlam / u, lam)
            out, e = out * lam ** (j / 2 - comb(j, 2)) * a * b, e + ea + eb
        return (out, e) if s >= 0 else (1 / out, -e)

    def rho(j: int, x: complex) -> complex:
        u = x + cmath.sqrt(x * x - 1)
        out, e = monomial(j, u)
        out *= zeta ** j
        for xi in xis:
            a, ea = qpoch_infinite_scaled(xi * lam ** j * u, q)
            b, eb = qpoch_infinite_scaled(xi * lam ** j / u, q)
            out, e = out / (a * b), e - ea - eb
        return complex(math.ldexp(out.real, e), math.ldexp(out.imag, e))
    return rho


def _continuous_closed(p: HProblem):
    s, t = p.sigma, p.tau
    s0, s1, s2 = s.padded(3)[:3]
    t0, t1 = t.padded(2)[:2]
    if s2 != 0 and s1 == 0 and abs(s0 + s2) < 1e-14 * abs(s2):
        # sigma = s0 (1 - x^2): Jacobi weight (1 - x)^alpha (1 + x)^beta
        a0, a1 = t0 / s0, t1 / s0
        beta = (a0 - a1 - 2) / 2
        alpha = (-a1 - 2 - a0) / 2
        base = lambda x: (1 - x) ** alpha * (1 + x) ** beta
    elif s2 == 0 and s0 == 0 and s1 != 0:
        # sigma = s1 x: Laguerre weight x^alpha exp(-c x)
        alpha, cc = t0 / s1 - 1, -t1 / s1
        base = lambda x: x ** alpha * cmath.exp(-cc * x)
    elif s2 == 0 and s1 == 0 and s0 != 0:
        a0, a1 = t0 / s0, t1 / s0
        base = lambda x: cmath.exp(a0 * x + a1 * x * x / 2)
    else:
        raise RamifiedOnly("continuous weight is closed only for the Jacobi, Laguerre and Hermite shapes")

    def rho(j: int, x: complex) -> complex:
        return complex(base(complex(x))) * complex(s(x)) ** j
    return rho


def closed_weight(p: HProblem) -> Callable[[int, complex], complex]:
    """``(j, x) -> rho_j(x)`` for a problem on the canonical representative."""
    if p.form is Form.C:
        return _continuous_closed(p)
    chi = problem_to_chi(p)
    if isinstance(chi, ArithmeticChi):
        return _arith_closed(chi)
    if isinstance(chi, QuadraticChi):
        return _quad_closed(chi)
    if isinstance(chi, GeometricChi):
        return _geom_closed(chi)
    if isinstance(chi, TrigChi):
        return _trig_closed(chi)
    raise UnsupportedForm(f"no closed weight for form {p.form.value}")


@dataclass
class RhoChain:
    """Weight chain ``rho_j`` for ``p`` read along the P-function ``theta``."""

    problem: HProblem
    theta: PSeq
    closed: Callable[[int, complex], complex] = field(repr=False)

    @property
    def form(self) -> Form:
        return self.problem.form

    def rho(self, j: int, t) -> complex:
        return complex(self.closed(j, self.theta.at(t)))

    def sigma_tilde(self, sign: int, t) -> complex:
        return sigma_tilde(self.problem, self.theta, sign, 0, t)

    def grid(self, jmax: int, t0, n_half: int, sign: int = 1) -> np.ndarray:
        """``rho_j(theta_{t0 + i/2})`` for ``j <= jmax`` and ``i < n_half``,
        generated from ``rho_0`` by the upward (``sign=+1``) or downward
        recurrence; entries the recurrence cannot reach are ``nan``."""
        if self.form is Form.C:
            raise CoincidentNodes("the continuous lattice has no half-steps")
        pad = jmax
        size = n_half + 2 * pad
        start = t0 - pad / 2
        ts = [start + i / 2 for i in range(size)]
        out = np.full((jmax + 1, size), np.nan + 0j, dtype=complex)
        out[0] = [self.rho(0, t) for t in ts]
        for j in range(jmax):
            for i in range(size):
                t = ts[i]
                if sign > 0 and i >= 1:
                    out[j + 1, i] = out[j, i - 1] * self.sigma_tilde(1, t + (j - 1) / 2)
                elif sign < 0 and i + 1 < size:
                    out[j + 1, i] = out[j, i + 1] * self.sigma_tilde(-1, t - (j - 1) / 2)
        return out[:, pad: pad + n_half]

    def functional_residual(self, t) -> float:
        lhs = self.rho(0, t) * self.sigma_tilde(1, t)
        rhs = self.rho(0, t + 1) * self.sigma_tilde(-1, t + 1)
        return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)

    def consistency_residual(self, t) -> float:
        """Residual of ``S rho_1 = rho sigma`` and ``D rho_1 = rho tau`` at ``theta_t``."""
        p, th = self.problem, self.theta
        x, xp, xm = th.at(t), th.at(t + 0.5), th.at(t - 0.5)
        rp, rm = self.rho(1, t + 0.5), self.rho(1, t - 0.5)
        r0 = self.rho(0, t)
        s_err = abs((rp + rm) / 2 - r0 * p.sigma(x))
        d_err = abs((rp - rm) / (xp - xm) - r0 * p.tau(x))
        scale = max(abs(r0 * p.sigma(x)), abs(r0 * p.tau(x)), abs(rp), abs(rm), 1e-300)
        return worst_of(s_err, d_err) / scale


def solve_rho(p: HProblem, theta: PSeq) -> RhoChain:
    return RhoChain(p, theta, closed_weight(p))


def rho1_from_rho(chain: RhoChain, t) -> complex:
    """``rho_1(theta_t) = rho(theta_{t-1/2}) sigma~^+(t - 1/2)``."""
    return chain.rho(0, t - 0.5) * chain.sigma_tilde(1, t - 0.5)


@dataclass(frozen=True)
class RodriguesTerms:
    k: int
    t: complex
    lhs: complex
    rhs: complex
    nodes: tuple[complex, ...]
    values: tuple[complex, ...]

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs) / max(abs(self.lhs), abs(self.rhs), 1e-300)


def rodrigues_eval(chain: RhoChain, k: int, t, f: Poly | None = None) -> RodriguesTerms:
    """Both sides of ``prod_{j<k}(mu_j - mu_k) rho f_k = prod_{j<k}[k-j] D^k rho_k``
    at ``theta_t`` for the monic ``f_k``; ``D^k`` is ``[k]!`` times the divided
    difference over ``theta_{t+i-k/2}``."""
    p, th = chain.problem, chain.theta
    if p.form is Form.C:
        raise CoincidentNodes("the continuous lattice has no distinct nodes")
    if f is None:
        f = _monic(p, k)
    mus = p.mus
    left = 1 + 0j
    for j in range(k):
        left *= mus[j] - mus[k]
    lhs = left * chain.rho(0, t) * complex(f(th.at(t)))
    nodes = centered_nodes(th, k, t)
    values = [chain.rho(k, t + i - k / 2) for i in range(k + 1)]
    fact = q_factorial(p.ctx, k)
    rhs = fact * fact * divided_difference(nodes, values)
    return RodriguesTerms(k, complex(t), complex(lhs), complex(rhs), tuple(nodes), tuple(values))


def _monic(p: HProblem, k: int) -> Poly:
    return eigen_matrix_oracle(p, k)


def sample_window(theta, n: int) -> list[float]:
    """``n`` half-step points from ``t = 0`` heading away from any accumulation
    point of the lattice, where divided differences stay well conditioned."""
    ahead = abs(theta.at(1) - theta.at(0))
    behind = abs(theta.at(0) - theta.at(-1))
    step = 0.5 if ahead >= behind else -0.5
    return [step * i for i in range(n)]


def rodrigues_verify(chain: RhoChain, kmax: int, ts: Sequence) -> float:
    worst = 0.0
    for k in range(kmax + 1):
        f = _monic(chain.problem, k)
        for t in ts:
            worst = worst_of(worst, rodrigues_eval(chain, k, t, f).residual)
    return worst


__all__ = [
    "RationalFactored", "FeqSolution", "solve_feq", "feq_residual",
    "closed_weight", "RhoChain", "solve_rho", "rho1_from_rho",
    "RodriguesTerms", "rodrigues_eval", "rodrigues_verify", "sample_window",
]

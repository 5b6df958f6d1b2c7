"""The hypergeometric operator ``L = sigma D^2 + tau S D``: eigenvalues, the
iterated coefficient chain, auxiliary lattice functions and two independent
ways to build polynomial eigenfunctions."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (DegreeOverflow, EigenvalueCollision, NoThetaRoot,
                     ThetaMismatch, UnsupportedForm, ZeroTauOnLattice)
from .operators import op_D, op_S, taylor_reconstruct
from .poly import Poly
from .pseq import Form, PSeq, SymP, classify, discriminant, make_pseq
from .scalars import q_half, q_int

COLLISION_TOL = 1e-10
THETA_TOL = 1e-8
TAU_TOL = 1e-12


def _bounded(p: Poly, deg: int, what: str) -> Poly:
    if p.degree <= deg:
        return p
    excess = np.abs(p.coeffs[deg + 1:]).max()
    if excess > 1e-9 * max(1.0, p.norm()):
        raise DegreeOverflow(f"{what} has degree {p.degree} > {deg}")
    return Poly(p.coeffs[: deg + 1])


class HProblem:
    """A hypergeometric problem ``(P, sigma, tau)``.

    Construction rejects the ``a = -1`` orbits and any spectrum with two
    eigenvalues ``mu_i, mu_j`` (``i, j <= dmax``) closer than ``1e-10``
    relative to the larger of the pair.
    """

    def __init__(self, P: SymP, sigma: Poly, tau: Poly, dmax: int = 32):
        sigma = sigma if isinstance(sigma, Poly) else Poly(sigma)
        tau = tau if isinstance(tau, Poly) else Poly(tau)
        self.form = classify(P).tag
        if self.form in (Form.O, Form.E):
            raise UnsupportedForm(f"form {self.form.value} is not supported")
        self.P = P
        self.ctx = P.ctx
        self.sigma = _bounded(sigma, 2, "sigma")
        self.tau = _bounded(tau, 1, "tau")
        self.dmax = int(dmax)
        self.mus = [self._mu(k) for k in range(self.dmax + 1)]
        self._check_spectrum()
        self._chain = [(self.sigma, self.tau)]

    @property
    def alpha2(self) -> complex:
        return self.sigma.coef(2)

    @property
    def beta1(self) -> complex:
        return self.tau.coef(1)

    def _mu(self, k: int) -> complex:
        ctx = self.ctx
        return -q_int(ctx, k) * (self.alpha2 * q_int(ctx, k - 1) + self.beta1 * q_half(ctx, k - 1))

    def _check_spectrum(self) -> None:
        mus = self.mus
        hits = []
        for i in range(len(mus)):
            for j in range(i):
                if abs(mus[i] - mus[j]) <= COLLISION_TOL * max(abs(mus[i]), abs(mus[j])):
                    hits.append((j, i))
        if hits:
            raise EigenvalueCollision(f"colliding eigenvalue indices {hits[:8]}")

    def mu(self, k: int) -> complex:
        return self.mus[k] if 0 <= k <= self.dmax else self._mu(k)

    def chain(self, j: int) -> tuple[Poly, Poly]:
        """``(sigma_j, tau_j)`` of the iterated operator ``L_j``."""
        P = self.P
        a = P.a
        shift = Poly([P.b, a - 1])  # A(x) - x
        delta = discriminant(P)
        while len(self._chain) <= j:
            s, t = self._chain[-1]
            St, Dt = op_S(P, t), op_D(P, t)
            s_next = op_S(P, s) + (a + 1) * shift * St + a * delta * Dt
            t_next = op_D(P, s) + a * St + (a + 1) * shift * Dt
            n = len(self._chain)
            self._chain.append((_bounded(s_next, 2, f"sigma_{n}"), _bounded(t_next, 1, f"tau_{n}")))
        return self._chain[j]

    def __repr__(self) -> str:
        return (f"HProblem(form={self.form.value}, sigma={self.sigma.tolist()}, "
                f"tau={self.tau.tolist()})")


def op_L(p: HProblem, f: Poly, j: int = 0) -> Poly:
    """``L_j f = sigma_j D^2 f + tau_j S D f`` (``j = 0`` gives L)."""
    sj, tj = p.chain(j)
    Df = op_D(p.P, f)
    return sj * op_D(p.P, Df) + tj * op_S(p.P, Df)


def mu(p: HProblem, k: int) -> complex:
    return p.mu(k)


def mu_difference(p: HProblem, k: int, j: int) -> complex:
    """``mu_k - mu_j`` from the factored closed form (generic lambda only)."""
    lam = p.ctx.lam
    e = lam - 1 / lam
    return ((lam ** (j - k) - lam ** (k - j)) / e ** 2
            * ((p.alpha2 + e / 2 * p.beta1) * lam ** (j + k - 1)
               - (p.alpha2 - e / 2 * p.beta1) * lam ** (1 - j - k)))


def iterate_chain(p: HProblem, jmax: int) -> list[tuple[Poly, Poly]]:
    return [p.chain(j) for j in range(jmax + 1)]


def sigma_tilde(p: HProblem, theta: PSeq, sign: int, j: int, t) -> complex:
    """``sigma_j(theta_t) + sign * (theta_{t+1/2} - theta_{t-1/2}) tau_j(theta_t) / 2``."""
    sj, tj = p.chain(j)
    x = theta.at(t)
    gap = theta.at(t + 0.5) - theta.at(t - 0.5)
    return complex(sj(x) + sign * gap * tj(x) / 2)


def q_polynomial(p: HProblem) -> Poly:
    """``sigma^2 - delta tau^2``, whose roots are the admissible base points."""
    return p.sigma * p.sigma - discriminant(p.P) * p.tau * p.tau


def _roots(poly: Poly) -> list[complex]:
    if poly.degree <= 0:
        return []
    roots = np.roots(poly.coeffs[::-1])
    dpoly = poly.deriv()
    out = []
    for r in roots:
        d = dpoly(r)
        if abs(d) > 0:
            r = r - poly(r) / d
        out.append(complex(r))
    return out


def theta_gate(p: HProblem, theta: PSeq) -> float:
    """``|sigma~^-(0)|`` relative to the size of its two summands."""
    x = theta.at(0)
    gap = theta.at(0.5) - theta.at(-0.5)
    s, t = complex(p.sigma(x)), complex(gap * p.tau(x) / 2)
    return abs(s - t) / max(1.0, abs(s), abs(t))


def find_theta0(p: HProblem) -> list[PSeq]:
    """P-functions ``theta`` with ``sigma~^-(0) = 0``, one per distinct root of
    ``sigma^2 - delta tau^2``, ordered by ``(re, im)`` of the base point."""
    Qp = q_polynomial(p)
    if Qp.degree < 0:
        raise NoThetaRoot("sigma^2 - delta tau^2 vanishes identically")
    roots = _roots(Qp)
    if not roots:
        raise NoThetaRoot("sigma^2 - delta tau^2 has no roots; no explicit expansion point")
    scale = max(1.0, max(abs(r) for r in roots))
    distinct: list[complex] = []
    for r in sorted(roots, key=lambda z: (round(z.real, 9), round(z.imag, 9))):
        if all(abs(r - d) > THETA_TOL * scale for d in distinct):
            distinct.append(r)
    out = []
    for r in distinct:
        cands = [make_pseq(p.P, r, s) for s in (1, -1)]
        best = min(cands, key=lambda th: theta_gate(p, th))
        if theta_gate(p, best) < THETA_TOL:
            out.append(best)
    if not out:
        raise NoThetaRoot("no root passes the sigma~^-(0) = 0 gate")
    return sorted(out, key=lambda th: (th.at(0).real, th.at(0).imag))


class Normalization(str, Enum):
    MONIC = "Monic"
    AT_THETA0 = "AtTheta0"


@dataclass(frozen=True)
class Eigenfunction:
    k: int
    poly: Poly
    normalization: Normalization
    theta: PSeq
    taylor_seq: tuple[complex, ...]
    mu: complex

    def residual(self, p: HProblem) -> float:
        r = op_L(p, self.poly) + self.mu * self.poly
        return r.norm() / self.poly.norm()


def _ladder(p: HProblem, theta: PSeq, k: int) -> list[complex]:
    # [1+i] tau_i(theta_{i/2}) for i < k
    return [q_int(p.ctx, 1 + i) * complex(p.chain(i)[1](theta.at(i / 2))) for i in range(k)]


def eigenfunction(p: HProblem, theta: PSeq, k: int,
                  normalization: Normalization | str = Normalization.MONIC) -> Eigenfunction:
    """Degree-``k`` eigenfunction expanded in the Newton basis at
    ``theta_0, theta_1, ...``; its Taylor coefficients come from a one-step
    ladder in ``tau_i(theta_{i/2}) / (mu_i - mu_k)``."""
    normalization = Normalization(normalization)
    if theta_gate(p, theta) >= THETA_TOL:
        raise ThetaMismatch(f"sigma~^-(0) != 0 (relative {theta_gate(p, theta):.3g})")
    if k > p.dmax:
        raise ValueError(f"k={k} exceeds dmax={p.dmax}")
    mus = p.mus
    ladder = _ladder(p, theta, k)
    coeffs = [0j] * (k + 1)
    if normalization is Normalization.MONIC:
        coeffs[k] = 1 + 0j
        for j in range(k - 1, -1, -1):
            coeffs[j] = coeffs[j + 1] * ladder[j] / (mus[j] - mus[k])
    else:
        scale = max(1.0, max((abs(v) for v in ladder), default=1.0))
        for i, v in enumerate(ladder):
            if abs(v) <= TAU_TOL * scale:
                raise ZeroTauOnLattice(f"tau_{i}(theta_{i}/2) vanishes")
        coeffs[0] = 1 + 0j
        for j in range(k):
            coeffs[j + 1] = coeffs[j] * (mus[j] - mus[k]) / ladder[j]
    poly = taylor_reconstruct(theta, coeffs)
    return Eigenfunction(k, poly, normalization, theta, tuple(coeffs), mus[k])


def l_matrix(p: HProblem, n: int) -> np.ndarray:
    """Matrix of L on polynomials of degree < n; column m is ``L x^m``."""
    M = np.zeros((n, n), dtype=complex)
    for m in range(n):
        e = np.zeros(m + 1, dtype=complex)
        e[m] = 1
        M[:, m] = op_L(p, Poly.raw(e)).padded(n)[:n]
    return M


def eigen_matrix_oracle(p: HProblem, k: int) -> Poly:
    """Monic eigenfunction by back substitution in the triangular matrix of L."""
    if k > p.dmax:
        raise ValueError(f"k={k} exceeds dmax={p.dmax}")
    M = l_matrix(p, k + 1)
    muk = p.mus[k]
    f = np.zeros(k + 1, dtype=complex)
    f[k] = 1
    for m in range(k - 1, -1, -1):
        pivot = M[m, m] + muk
        if pivot == 0:
            raise EigenvalueCollision(f"zero pivot at degree {m}")
        f[m] = -(M[m, m + 1:] @ f[m + 1:]) / pivot
    return Poly(f)


def recurrence_residual(p: HProblem, theta: PSeq, f: Poly, k: int, j: int, t) -> float:
    """Residual of ``sigma~_j^-(t) f^(j+2)(theta_t) + tau_j(theta_t) f^(j+1)(theta_{t+1/2})
    + (mu_k - mu_j) f^(j)(theta_t)`` with ``f^(j) = D^j f``."""
    P = p.P
    fj = f
    for _ in range(j):
        fj = op_D(P, fj)
    fj1 = op_D(P, fj)
    fj2 = op_D(P, fj1)
    x = theta.at(t)
    terms = [
        sigma_tilde(p, theta, -1, j, t) * fj2(x),
        complex(p.chain(j)[1](x)) * fj1(theta.at(t + 0.5)),
        (p.mu(k) - p.mu(j)) * fj(x),
    ]
    return abs(sum(terms)) / max(1.0, max(abs(v) for v in terms))

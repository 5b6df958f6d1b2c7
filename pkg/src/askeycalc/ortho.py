"""Wronskian, summation by parts and discrete orthogonality on a finite
lattice segment."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BoundaryViolated
from .hyperop import Normalization, eigenfunction, op_L
from .operators import op_D
from .poly import Poly
from .pseq import SymP
from .rodrigues import RhoChain
from .scalars import worst_of

BOUNDARY_TOL = 1e-8


def _pow(P: SymP, n: int) -> Poly:
    out = Poly([1])
    for _ in range(n):
        out = out * P.B_poly
    return out


def wronskian(P: SymP, f: Poly, g: Poly) -> Poly:
    """``W(f, g)(x) = (f(u) g(v) - f(v) g(u)) / (v - u)`` over the two roots
    ``u, v`` of ``P(x, .)``, expanded with ``W(x^m, x^n) = B^m D(x^(n-m))``."""
    out = Poly(0)
    fc, gc = f.coeffs, g.coeffs
    for m, a in enumerate(fc):
        if a == 0:
            continue
        for n, b in enumerate(gc):
            if b == 0 or m == n:
                continue
            lo, hi = min(m, n), max(m, n)
            mono = np.zeros(hi - lo + 1, dtype=complex)
            mono[-1] = 1
            term = _pow(P, lo) * op_D(P, Poly.raw(mono))
            out = out + (a * b) * (term if m < n else -term)
    return out


def sbp_residual(chain: RhoChain, f: Poly, g: Poly, t) -> float:
    """Residual of ``rho (f Lg - g Lf) = D(rho_1 W(f, g))`` at ``theta_t``."""
    p, th = chain.problem, chain.theta
    x, xp, xm = th.at(t), th.at(t + 0.5), th.at(t - 0.5)
    W = wronskian(p.P, f, g)
    lhs = chain.rho(0, t) * complex(f(x) * op_L(p, g)(x) - g(x) * op_L(p, f)(x))
    rhs = (chain.rho(1, t + 0.5) * W(xp) - chain.rho(1, t - 0.5) * W(xm)) / (xp - xm)
    return float(abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))


@dataclass(frozen=True)
class GridMeasure:
    """Discrete measure ``rho(x_i)(x_{i+1/2} - x_{i-1/2})`` on ``x_i = theta_i``,
    ``i = 0..m``; requires ``rho_1`` to vanish just outside both ends."""

    chain: RhoChain
    m: int

    @property
    def nodes(self) -> np.ndarray:
        return np.array([self.chain.theta.at(i) for i in range(self.m + 1)])

    @property
    def weights(self) -> np.ndarray:
        th = self.chain.theta
        return np.array([self.chain.rho(0, i) * (th.at(i + 0.5) - th.at(i - 0.5))
                         for i in range(self.m + 1)])

    def boundary_values(self) -> tuple[complex, complex]:
        return self.chain.rho(1, -0.5), self.chain.rho(1, self.m + 0.5)

    def check_boundary(self, tol: float = BOUNDARY_TOL) -> None:
        inner = [abs(self.chain.rho(1, i + 0.5)) for i in range(self.m)]
        scale = max(inner + [1e-300])
        lo, hi = self.boundary_values()
        if max(abs(lo), abs(hi)) > tol * scale:
            raise BoundaryViolated(
                f"rho_1 at the ends is {abs(lo):.3g}, {abs(hi):.3g} (scale {scale:.3g})")


def measure(chain: RhoChain, m: int, check: bool = True) -> GridMeasure:
    gm = GridMeasure(chain, m)
    if check:
        gm.check_boundary()
    return gm


def gram(gm: GridMeasure, polys: Sequence[Poly]) -> np.ndarray:
    """``G[j, k] = sum_i f_j(x_i) f_k(x_i) w_i`` (bilinear, no conjugation)."""
    x, w = gm.nodes, gm.weights
    V = np.array([[complex(f(xi)) for xi in x] for f in polys])
    return (V * w) @ V.T


def eigen_gram(gm: GridMeasure, kmax: int) -> np.ndarray:
    p = gm.chain.problem
    polys = [eigenfunction(p, gm.chain.theta, k, Normalization.MONIC).poly for k in range(kmax + 1)]
    return gram(gm, polys)


def off_diagonal_ratio(G: np.ndarray) -> float:
    """Largest ``|G_jk|`` (``j != k``) over ``sqrt(|G_jj G_kk|)``."""
    n = G.shape[0]
    d = np.abs(np.diag(G))
    worst = 0.0
    for j in range(n):
        for k in range(n):
            if j != k:
                worst = worst_of(worst, abs(G[j, k]) / np.sqrt(d[j] * d[k]))
    return float(worst)


__all__ = ["wronskian", "sbp_residual", "GridMeasure", "measure", "gram",
           "eigen_gram", "off_diagonal_ratio"]

"""The companion operator S, the divided-difference operator D, divided
powers, the Newton-type basis Phi_k and the generalized Taylor formula.

S and D act on polynomials through the power-sum recurrences in A(x) and
B(x), so no square root of the discriminant is ever taken.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import CoincidentNodes
from .poly import Poly
from .pseq import PSeq, SymP, pj_context
from .scalars import q_factorial, q_int

COINCIDENT_TOL = 1e-10


@lru_cache(maxsize=256)
def _sd_matrices(a: complex, b: complex, c: complex, n: int) -> tuple[np.ndarray, np.ndarray]:
    # column k holds the coefficients of S x^k (resp. D x^k)
    A = np.array([b, a], dtype=complex)
    B = np.array([c, -2 * b, 1], dtype=complex)
    S = np.zeros((n, n), dtype=complex)
    D = np.zeros((n, n), dtype=complex)
    p_prev, p_cur = np.array([2], dtype=complex), 2 * A
    d_prev, d_cur = np.array([0], dtype=complex), np.array([1], dtype=complex)
    for k in range(n):
        if k == 0:
            p, d = p_prev, d_prev
        elif k == 1:
            p, d = p_cur, d_cur
        else:
            p = np.polynomial.polynomial.polysub(
                2 * np.polynomial.polynomial.polymul(A, p_cur),
                np.polynomial.polynomial.polymul(B, p_prev))
            d = np.polynomial.polynomial.polysub(
                2 * np.polynomial.polynomial.polymul(A, d_cur),
                np.polynomial.polynomial.polymul(B, d_prev))
            p_prev, p_cur = p_cur, p
            d_prev, d_cur = d_cur, d
        S[: min(p.size, n), k] = p[:n] / 2
        D[: min(d.size, n), k] = d[:n]
    S.setflags(write=False)
    D.setflags(write=False)
    return S, D


def sd_matrices(P: SymP, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of S and D on polynomials of degree < n (monomial basis)."""
    return _sd_matrices(P.a, P.b, P.c, n)


def op_S(P: SymP, f: Poly) -> Poly:
    S, _ = sd_matrices(P, f.coeffs.size)
    return Poly(S @ f.coeffs)


def op_D(P: SymP, f: Poly) -> Poly:
    _, D = sd_matrices(P, f.coeffs.size)
    return Poly(D @ f.coeffs)


def op_D_power(P: SymP, f: Poly, k: int) -> Poly:
    for _ in range(k):
        f = op_D(P, f)
    return f


def op_partial(P: SymP, f: Poly, k: int) -> Poly:
    """Divided power ``D^k f / ([1] [2] ... [k])``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return op_D_power(P, f, k) / q_factorial(P.ctx, k)


def phi_nodes(s: PSeq, k: int) -> Poly:
    """``prod_{j<k} (y - x_j)``."""
    return Poly.from_roots([s.at(j) for j in range(k)])


def phi(P: SymP, x: complex, k: int) -> Poly:
    """``Phi_k(x, .)`` built from the subsampled quadratics ``P_j``."""
    out = Poly([1])
    if k % 2:
        out = Poly([-x, 1])
        js = range(2, k, 2)
    else:
        js = range(1, k, 2)
    for j in js:
        out = out * pj_context(P, j).in_y(x)
    return out


def phi_centered(s: PSeq, k: int, t0=0) -> Poly:
    """``Phi_k(x_{t0}, .)`` through its nodes ``x_{t0 + j - (k-1)/2}``."""
    return Poly.from_roots([s.at(t0 + j - (k - 1) / 2) for j in range(k)])


def taylor_coeffs(P: SymP, s: PSeq, f: Poly) -> list[complex]:
    """``c_k = (partial_k f)(x_{k/2})`` for ``k = 0..deg f``."""
    n = f.coeffs.size
    _, D = sd_matrices(P, n)
    g = f.coeffs.copy()
    out = []
    fact = 1 + 0j
    for k in range(max(f.degree, 0) + 1):
        if k:
            g = D[: n - k, : n - k + 1] @ g
            fact *= q_int(P.ctx, k)
        out.append(complex(np.polynomial.polynomial.polyval(s.at(k / 2), g)) / fact)
    return out


def taylor_reconstruct(s: PSeq, coeffs: Sequence[complex]) -> Poly:
    """Nested Newton form ``c_0 + (y - x_0)(c_1 + (y - x_1)(c_2 + ...))``."""
    n = len(coeffs)
    if n == 0:
        return Poly(0)
    acc = np.zeros(n, dtype=complex)
    acc[0] = coeffs[-1]
    for k in range(n - 2, -1, -1):
        node = s.at(k)
        shifted = np.zeros(n, dtype=complex)
        shifted[1:] = acc[:-1]
        acc = shifted - node * acc
        acc[0] += coeffs[k]
    return Poly(acc)


def _check_nodes(nodes: Sequence[complex]) -> None:
    scale = max(1.0, max(abs(v) for v in nodes))
    for i in range(len(nodes)):
        for j in range(i):
            if abs(nodes[i] - nodes[j]) <= COINCIDENT_TOL * scale:
                raise CoincidentNodes(f"nodes {j} and {i} coincide")


def divided_difference(nodes: Sequence[complex], values: Sequence[complex]) -> complex:
    """Classical divided difference ``f[z_0, ..., z_k]`` in Lagrange form."""
    _check_nodes(nodes)
    total = 0j
    for j, zj in enumerate(nodes):
        den = 1 + 0j
        for i, zi in enumerate(nodes):
            if i != j:
                den *= zj - zi
        total += values[j] / den
    return total


def centered_nodes(s: PSeq, k: int, t=0) -> list[complex]:
    """``x_{t + j - k/2}`` for ``j = 0..k``."""
    return [s.at(t + j - k / 2) for j in range(k + 1)]


def divided_diff_oracle(s: PSeq, f: Callable | Sequence[complex], k: int, t=0) -> complex:
    """Brute-force ``partial_k f(x_t)`` from the values on ``x_{t+j-k/2}``."""
    nodes = centered_nodes(s, k, t)
    values = [f(z) for z in nodes] if callable(f) else list(f)
    if len(values) != k + 1:
        raise ValueError("need k + 1 values")
    return divided_difference(nodes, values)

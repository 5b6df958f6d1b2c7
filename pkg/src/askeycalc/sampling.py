"""Random instances for property checks: quadratics per orbit, lattices
rescaled to the unit disk, polynomials and hypergeometric problems with an
admissible base point."""
from __future__ import annotations

import cmath

import numpy as np

from .hyperop import HProblem
from .poly import Poly
from .pseq import Form, PSeq, SymP, affine_act, canonical, make_pseq

FORMS = (Form.T, Form.G, Form.Q, Form.A, Form.C)


def cnormal(rng: np.random.Generator, scale: float = 1.0) -> complex:
    return complex(rng.normal(), rng.normal()) * scale


def random_poly(rng: np.random.Generator, deg: int) -> Poly:
    return Poly.raw([cnormal(rng) for _ in range(deg + 1)])


def random_lambda(rng: np.random.Generator) -> complex:
    # modulus near 1 keeps lambda^(2t) tame over a dozen half-steps
    return cmath.exp(1j * rng.uniform(0.3, 2.8)) * rng.uniform(0.9, 1.1)


def base_P(form: Form, rng: np.random.Generator) -> SymP:
    form = Form(form)
    if form in (Form.T, Form.G):
        lam = random_lambda(rng)
        a = (lam + 1 / lam) / 2
        return SymP.from_lambda(lam, 0, 0 if form is Form.G else a * a - 1)
    return canonical(form)


def random_conjugate(P: SymP, rng: np.random.Generator, shift: float = 0.3) -> SymP:
    g = (cmath.exp(1j * rng.uniform(0, 2 * np.pi)) * rng.uniform(0.5, 2.0), cnormal(rng, shift))
    return affine_act(g, P)


def normalized_lattice(form: Form, rng: np.random.Generator, span: int) -> tuple[SymP, PSeq]:
    """A random quadratic of the given orbit with a P-sequence whose nodes
    ``x_{j/2}``, ``j <= span``, are mapped into the unit disk by an affine
    conjugation (keeps monomial-basis round trips well conditioned)."""
    base = base_P(form, rng)
    P = affine_act((cmath.exp(1j * rng.uniform(0, 2 * np.pi)), cnormal(rng, 0.3)), base)
    s = make_pseq(P, cnormal(rng, 0.5), 1 if rng.random() < 0.5 else -1)
    nodes = [s.at(j / 2) for j in range(span + 1)]
    c = complex(np.mean(nodes))
    r = max(abs(v - c) for v in nodes)
    g = (1 / r, -c / r) if r > 1e-12 else (1, 0)
    P2 = affine_act(g, P)
    x0 = g[0] * s.at(0) + g[1]
    s2 = make_pseq(P2, x0, 1)
    if abs(s2.at(0.5) - (g[0] * s.at(0.5) + g[1])) > 1e-9:
        s2 = make_pseq(P2, x0, -1)
    return P2, s2


def random_problem(form: Form, rng: np.random.Generator, dmax: int = 12,
                   tries: int = 20) -> tuple[HProblem, PSeq]:
    """Random ``(sigma, tau)`` on a unit-disk lattice with ``sigma~^-(0) = 0``
    imposed by adjusting the constant term of sigma."""
    last = None
    for _ in range(tries):
        P, th = normalized_lattice(form, rng, 2 * dmax)
        x0 = th.at(0)
        gap = th.at(0.5) - th.at(-0.5)
        tau = random_poly(rng, 1)
        sigma = random_poly(rng, 2)
        fix = gap * tau(x0) / 2 - sigma(x0)
        sigma = sigma + fix
        try:
            return HProblem(P, sigma, tau, dmax), th
        except Exception as exc:  # resample on a rare collision
            last = exc
    raise last


__all__ = ["FORMS", "cnormal", "random_poly", "random_lambda", "base_P",
           "random_conjugate", "normalized_lattice", "random_problem"]

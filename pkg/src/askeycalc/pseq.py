"""Symmetric quadratics P(x, y), their discriminant, affine orbits and the
closed-form lattice sequences they generate."""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .errors import SingularMap
from .poly import Poly
from .scalars import Mode, QContext, q_half, q_int, shift_ratio

CLASSIFY_TOL = 1e-10


@dataclass(frozen=True)
class SymP:
    """``P(x,y) = x^2 + y^2 - 2a xy - 2b (x+y) + c``.

    ``ctx`` holds a root ``lam`` of ``a = (lam + 1/lam)/2``; by default the
    principal one, ``a + sqrt(a^2 - 1)``.
    """

    a: complex
    b: complex
    c: complex
    ctx: Optional[QContext] = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.ctx is None:
            object.__setattr__(self, "ctx", QContext.from_a(self.a))
        elif not self.ctx.degenerate and abs(self.ctx.a - self.a) > 1e-12 * max(1, abs(self.a)):
            raise ValueError("lambda is inconsistent with the main coefficient")

    @classmethod
    def from_lambda(cls, lam: complex, b: complex = 0, c: complex = 0) -> "SymP":
        ctx = QContext.from_lambda(lam)
        a = 1 if ctx.mode is Mode.LAMBDA_ONE else -1 if ctx.mode is Mode.LAMBDA_MINUS_ONE else ctx.a
        return cls(a, b, c, ctx)

    @property
    def lam(self) -> complex:
        return self.ctx.lam

    @property
    def q(self) -> complex:
        return self.ctx.q

    def __call__(self, x, y):
        return x * x + y * y - 2 * self.a * x * y - 2 * self.b * (x + y) + self.c

    def A(self, x):
        return self.a * x + self.b

    def B(self, x):
        return x * x - 2 * self.b * x + self.c

    def delta(self, x):
        return self.A(x) ** 2 - self.B(x)

    @property
    def A_poly(self) -> Poly:
        return Poly([self.b, self.a])

    @property
    def B_poly(self) -> Poly:
        return Poly([self.c, -2 * self.b, 1])

    def in_y(self, x: complex) -> Poly:
        """``P(x, .)`` as a polynomial in ``y``."""
        return Poly([x * x - 2 * self.b * x + self.c, -2 * (self.a * x + self.b), 1])


def discriminant(P: SymP) -> Poly:
    a, b, c = P.a, P.b, P.c
    return Poly([b * b - c, 2 * b * (a + 1), a * a - 1])


def affine_act(g: tuple[complex, complex], P: SymP) -> SymP:
    """``(g.P)(x,y) = zeta^2 P(g^-1 x, g^-1 y)`` for ``g(x) = zeta x + eta``."""
    zeta, eta = complex(g[0]), complex(g[1])
    if zeta == 0:
        raise SingularMap("affine map with zeta = 0")
    a, b, c = P.a, P.b, P.c
    b2 = eta * (1 - a) + b * zeta
    c2 = 2 * eta * eta * (1 - a) + 4 * b * zeta * eta + c * zeta * zeta
    return SymP(a, b2, c2, P.ctx)


class Form(str, Enum):
    T = "T"
    G = "G"
    Q = "Q"
    A = "A"
    C = "C"
    O = "O"
    E = "E"


ISOTROPY = {
    Form.T: "{+-1}",
    Form.G: "GL(C)",
    Form.Q: "1",
    Form.A: "T(C) x| {+-1}",
    Form.C: "Aff(C)",
    Form.O: "{+-1}",
    Form.E: "GL(C)",
}

NEG_INF = float("-inf")
INF = float("inf")


def canonical(form: Form, a: complex = 0.5) -> SymP:
    """Representative of an orbit; ``a`` is used by T and G only."""
    a = complex(a)
    table = {
        Form.T: (a, 0, a * a - 1),
        Form.G: (a, 0, 0),
        Form.Q: (1, 0.25, 1 / 16),
        Form.A: (1, 0, -0.25),
        Form.C: (1, 0, 0),
        Form.O: (-1, 0, -0.25),
        Form.E: (-1, 0, 0),
    }
    return SymP(*table[form])


@dataclass(frozen=True)
class CanonicalForm:
    tag: Form
    witness_map: tuple[complex, complex]
    a: complex
    deg_delta: float
    ev_P: float
    isotropy_label: str

    def image(self, P: SymP) -> SymP:
        return affine_act(self.witness_map, P)


def _is_zero(v: complex) -> bool:
    return abs(v) <= CLASSIFY_TOL


def classify(P: SymP) -> CanonicalForm:
    """Orbit tag, invariants and an affine witness map to the representative."""
    a, b, c = P.a, P.b, P.c
    # length scale: b ~ zeta, c ~ zeta^2 under the action
    s = max(1.0, abs(b), abs(c) ** 0.5)
    d2, d1, d0 = a * a - 1, 2 * b * (a + 1) / s, (b * b - c) / (s * s)
    a_one, a_minus = _is_zero(a - 1), _is_zero(a + 1)
    if not (a_one or a_minus):
        disc = d1 * d1 - 4 * d2 * d0
        d1z, d0z = _is_zero(d1), _is_zero(d0)
        double = (d1z and d0z) or abs(disc) <= CLASSIFY_TOL * max(abs(d1) ** 2, abs(4 * d2 * d0))
        eta_over_zeta = -b / (1 - a)
        rest = c - 2 * b * b / (1 - a)
        if double:
            tag, deg, ev, zeta = Form.G, 2, 1, 1 + 0j
        else:
            tag, deg, ev = Form.T, 2, 2
            zeta = cmath.sqrt((a * a - 1) / rest)
        return CanonicalForm(tag, (zeta, eta_over_zeta * zeta), a, deg, ev, ISOTROPY[tag])
    if a_one:
        if not _is_zero(d1):
            zeta = 1 / (4 * b)
            eta = 1 / 16 - c * zeta * zeta
            return CanonicalForm(Form.Q, (zeta, eta), 1, 1, 1, ISOTROPY[Form.Q])
        if not _is_zero(d0):
            zeta = cmath.sqrt(-0.25 / c)
            return CanonicalForm(Form.A, (zeta, 0j), 1, 0, 0, ISOTROPY[Form.A])
        return CanonicalForm(Form.C, (1 + 0j, 0j), 1, NEG_INF, INF, ISOTROPY[Form.C])
    if not _is_zero(d0):
        zeta = cmath.sqrt(-0.25 / (c - b * b))
        return CanonicalForm(Form.O, (zeta, -b * zeta / 2), -1, 0, 0, ISOTROPY[Form.O])
    return CanonicalForm(Form.E, (1 + 0j, -b / 2), -1, NEG_INF, INF, ISOTROPY[Form.E])


class SeqMode(str, Enum):
    GENERIC = "Generic"
    A_ONE = "AOne"
    A_MINUS_ONE = "AMinusOne"


@dataclass(frozen=True)
class PSeq:
    """Closed-form sequence over half-integers (and, outside the ``a = -1``
    case, an entire function of ``t``).

    Generic: ``k0 + k1 lam^(2t) + k2 lam^(-2t)``; AOne: ``k0 + k1 t + k2 t^2``;
    AMinusOne: ``k0 + (-1)^(2t) (k1 + k2 t)``.
    """

    parent: SymP
    k0: complex
    k1: complex
    k2: complex

    @property
    def mode(self) -> SeqMode:
        m = self.parent.ctx.mode
        if m is Mode.LAMBDA_ONE:
            return SeqMode.A_ONE
        if m is Mode.LAMBDA_MINUS_ONE:
            return SeqMode.A_MINUS_ONE
        return SeqMode.GENERIC

    def _lam_pow(self, t) -> complex:
        two_t = 2 * t
        if isinstance(two_t, (int, float)) and float(two_t).is_integer():
            return self.parent.lam ** int(two_t)
        return cmath.exp(two_t * cmath.log(self.parent.lam))

    def at(self, t) -> complex:
        mode = self.mode
        if mode is SeqMode.GENERIC:
            p = self._lam_pow(t)
            return self.k0 + self.k1 * p + self.k2 / p
        if mode is SeqMode.A_ONE:
            return self.k0 + self.k1 * t + self.k2 * t * t
        two_t = complex(2 * t)
        if two_t.imag or not two_t.real.is_integer():
            raise ValueError("sequences with a = -1 live on half-integers only")
        sign = -1 if int(two_t.real) % 2 else 1
        return self.k0 + sign * (self.k1 + self.k2 * t)

    __call__ = at

    def values(self, ts) -> np.ndarray:
        return np.array([self.at(t) for t in ts], dtype=complex)

    def shifted(self, t0) -> "PSeq":
        """The function ``t -> x_{t + t0}``."""
        mode = self.mode
        if mode is SeqMode.GENERIC:
            p = self._lam_pow(t0)
            return PSeq(self.parent, self.k0, self.k1 * p, self.k2 / p)
        if mode is SeqMode.A_ONE:
            return PSeq(self.parent, self.at(t0), self.k1 + 2 * self.k2 * t0, self.k2)
        if not float(2 * t0).is_integer():
            raise ValueError("a = -1 sequences shift by half-integers only")
        sign = -1 if int(2 * t0) % 2 else 1
        return PSeq(self.parent, self.k0, sign * (self.k1 + self.k2 * t0), sign * self.k2)

    def reversed(self) -> "PSeq":
        """The function ``t -> x_{-t}``."""
        mode = self.mode
        if mode is SeqMode.GENERIC:
            return PSeq(self.parent, self.k0, self.k2, self.k1)
        if mode is SeqMode.A_ONE:
            return PSeq(self.parent, self.k0, -self.k1, self.k2)
        return PSeq(self.parent, self.k0, self.k1, -self.k2)


PFun = PSeq


def make_pseq(P: SymP, x0: complex, sign: int = 1) -> PSeq:
    """Sequence with ``x_0 = x0`` and ``x_{1/2} = A(x0) + sign sqrt(delta(x0))``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    x0 = complex(x0)
    a, b = P.a, P.b
    xh = P.A(x0) + sign * cmath.sqrt(P.delta(x0))
    mode = P.ctx.mode
    if mode is Mode.LAMBDA_ONE:
        k2 = 4 * b
        return PSeq(P, x0, 2 * (xh - x0 - b), k2)
    if mode is Mode.LAMBDA_MINUS_ONE:
        k0 = b / 2
        k1 = x0 - k0
        return PSeq(P, k0, k1, 2 * (k0 - k1 - xh))
    lam = P.lam
    k0 = b / (1 - a)
    d0, dh = x0 - k0, xh - k0
    k1 = (dh - d0 / lam) / (lam - 1 / lam)
    return PSeq(P, k0, k1, d0 - k1)


def theta_function(P: SymP, k0: complex, k1: complex, k2: complex) -> PSeq:
    """Wrap explicit closed-form coefficients as a P-function of ``P``."""
    return PSeq(P, complex(k0), complex(k1), complex(k2))


def shift_identities_check(s: PSeq, t, h) -> float:
    """Largest residual of the shift and half-step identities at ``(t, h)``,
    scaled by the magnitude of the values involved."""
    P = s.parent
    ctx, a, b = P.ctx, P.a, P.b
    x = s.at
    n = int(round(2 * h))
    xt, xp, xm = x(t), x(t + h), x(t - h)
    hp, hm = x(t + 0.5), x(t - 0.5)
    p1, m1 = x(t + 1), x(t - 1)
    scale = max(1.0, *(abs(v) for v in (xt, xp, xm, hp, hm, p1, m1)))
    linear = [
        (xp + xm) / 2 - q_half(ctx, n) * xt - shift_ratio(ctx, n) * b,
        (xp - xm) - q_int(ctx, n) * (hp - hm),
        (p1 - m1) - 2 * a * (hp - hm),
        (p1 - 2 * xt + m1) - 4 * (a + 1) * (P.A(xt) - xt),
    ]
    quadratic = 8 * a * P.delta(xt) - (p1 - m1) * (hp - hm)
    return max(max(abs(r) for r in linear) / scale, abs(quadratic) / scale ** 2)


def pj_context(P: SymP, j: int) -> SymP:
    """The polynomial governing the subsequence ``t -> x_{jt}``."""
    if j < 1:
        raise ValueError("j must be >= 1")
    ctx = P.ctx
    aj = q_half(ctx, j)
    bj = shift_ratio(ctx, j) * P.b
    qj = q_int(ctx, j)
    cj = bj * bj - qj * qj * (P.b * P.b - P.c)
    sub = ctx.power(j)
    if sub.mode is Mode.LAMBDA_ONE:
        aj = 1
    elif sub.mode is Mode.LAMBDA_MINUS_ONE:
        aj = -1
    return SymP(aj, bj, cj, sub)

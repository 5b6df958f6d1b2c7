"""Canonical parameterizations of (sigma, tau) by chi data, classical
family presets and their closed hypergeometric forms."""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from .errors import DegenerateChi, NoThetaRoot, UnsupportedForm
from .hyperop import HProblem, Normalization, eigenfunction
from .operators import taylor_coeffs
from .poly import LaurentPoly, Poly
from .pseq import Form, PSeq, SymP, canonical, theta_function
from .scalars import hyper_terminating, qhyper_terminating, worst_of


def _gauss_binomial(q: complex, k: int, j: int) -> complex:
    out = 1 + 0j
    for i in range(j):
        out *= (1 - q ** (k - i)) / (1 - q ** (j - i))
    return out


def canonical_P(form: Form | str, lam: complex | None = None) -> SymP:
    """Canonical representative; G and T take ``lam`` with ``q = lam^2``."""
    form = Form(form)
    if form in (Form.G, Form.T):
        if lam is None:
            raise ValueError("lam is required for the G and T forms")
        P = SymP.from_lambda(lam)
        if form is Form.T:
            P = SymP(P.a, 0, P.a * P.a - 1, P.ctx)
        return P
    return canonical(form)


# ---------------------------------------------------------------- chi data

@dataclass(frozen=True)
class ArithmeticChi:
    """``chi^+ = sigma + tau/2`` and ``chi^- = sigma - tau/2`` (same ``x^2`` term)."""

    plus: Poly
    minus: Poly
    form = Form.A

    def __post_init__(self):
        if abs(self.plus.coef(2) - self.minus.coef(2)) > 1e-12 * max(1.0, abs(self.plus.coef(2))):
            raise DegenerateChi("chi^+ and chi^- must share the x^2 coefficient")

    def sigma_tau(self) -> tuple[Poly, Poly]:
        return (self.plus + self.minus) / 2, self.plus - self.minus


@dataclass(frozen=True)
class QuadraticChi:
    """``chi(t) = sigma(t^2) + t tau(t^2)`` with a base shift ``t0``."""

    chi: Poly
    t0: complex = 0j
    form = Form.Q

    def sigma_tau(self) -> tuple[Poly, Poly]:
        c = self.chi.padded(5)
        return Poly([c[0], c[2], c[4]]), Poly([c[1], c[3]])


@dataclass(frozen=True)
class GeometricChi:
    """``chi^+(x) = sigma + ((lam - 1/lam)/2) x tau`` and ``chi^-`` with the
    opposite sign; both share the constant term."""

    plus: Poly
    minus: Poly
    lam: complex
    form = Form.G

    def __post_init__(self):
        if abs(self.plus.coef(0) - self.minus.coef(0)) > 1e-12 * max(1.0, abs(self.plus.coef(0))):
            raise DegenerateChi("chi^+ and chi^- must share the constant term")

    def sigma_tau(self) -> tuple[Poly, Poly]:
        e = self.lam - 1 / self.lam
        if abs(e) < 1e-12:
            raise DegenerateChi("lam - 1/lam vanishes")
        diff = (self.plus - self.minus).padded(3)
        return (self.plus + self.minus) / 2, Poly(diff[1:3] / e)


@dataclass(frozen=True)
class TrigChi:
    """Laurent ``chi(u) = sum_{k=-2}^{2} gamma_k u^k`` with base ``u0``."""

    chi: LaurentPoly
    lam: complex
    u0: complex = 1 + 0j
    form = Form.T

    def gamma(self, k: int) -> complex:
        return self.chi.coef(k)

    def sigma_tau(self) -> tuple[Poly, Poly]:
        g = self.gamma
        if self.chi.low < -2 or self.chi.high > 2:
            raise DegenerateChi("chi must be supported on u^-2 .. u^2")
        e = self.lam - 1 / self.lam
        if abs(e) < 1e-12:
            raise DegenerateChi("lam - 1/lam vanishes")
        # u^k + u^-k = 2 T_k(x);  (u^k - u^-k)/(u - 1/u) = U_{k-1}(x)
        s2, s1 = g(2) + g(-2), g(1) + g(-1)
        sigma = Poly([g(0) - s2, s1, 2 * s2])
        d1, d2 = g(1) - g(-1), g(2) - g(-2)
        tau = Poly([2 * d1 / e, 4 * d2 / e])
        return sigma, tau


@dataclass(frozen=True)
class ContinuousChi:
    sigma: Poly
    tau: Poly
    form = Form.C

    def sigma_tau(self) -> tuple[Poly, Poly]:
        return self.sigma, self.tau


ChiData = ArithmeticChi | QuadraticChi | GeometricChi | TrigChi | ContinuousChi


def _lam_of(chi) -> complex | None:
    return getattr(chi, "lam", None)


def chi_to_problem(chi: ChiData, dmax: int = 32) -> HProblem:
    sigma, tau = chi.sigma_tau()
    return HProblem(canonical_P(chi.form, _lam_of(chi)), sigma, tau, dmax)


def problem_to_chi(p: HProblem):
    """Inverse parameterization (canonical ``P`` assumed)."""
    s, t = p.sigma.padded(3), p.tau.padded(2)
    form = p.form
    if form is Form.A:
        return ArithmeticChi(p.sigma + p.tau / 2, p.sigma - p.tau / 2)
    if form is Form.Q:
        return QuadraticChi(Poly([s[0], t[0], s[1], t[1], s[2]]))
    if form is Form.G:
        e = (p.ctx.lam - 1 / p.ctx.lam) / 2
        xt = Poly([0, 1]) * p.tau * e
        return GeometricChi(p.sigma + xt, p.sigma - xt, p.ctx.lam)
    if form is Form.T:
        e = p.ctx.lam - 1 / p.ctx.lam
        plus2, minus2 = s[2] / 2, t[1] * e / 4
        plus1, minus1 = s[1], t[0] * e / 2
        gam = {
            2: (plus2 + minus2) / 2, -2: (plus2 - minus2) / 2,
            1: (plus1 + minus1) / 2, -1: (plus1 - minus1) / 2,
            0: s[0] + plus2,
        }
        return TrigChi(LaurentPoly.from_dict(gam), p.ctx.lam)
    return ContinuousChi(p.sigma, p.tau)


# ---------------------------------------------------------------- families

FAMILY_NAMES = ("jacobi", "hahn", "wilson", "qhahn", "askey-wilson")


@dataclass(frozen=True)
class FamilySpec:
    """A classical family: parameters, chi data, derived problem and the
    P-function whose base point anchors the closed form.

    ``variant`` selects the orientation of the base point where two exist
    (``"a"``: zero of ``chi^-``; ``"b"``: zero of ``chi^+``).
    """

    name: str
    params: dict
    chi: ChiData
    theta: PSeq | None
    variant: str = "a"
    problem: HProblem = field(repr=False, default=None)

    @property
    def form(self) -> Form:
        return self.chi.form


def _spec(name, params, chi, theta_k, variant="a", dmax=32) -> FamilySpec:
    p = chi_to_problem(chi, dmax)
    theta = theta_function(p.P, *theta_k)
    return FamilySpec(name, params, chi, theta, variant, p)


def jacobi(alpha: float, beta: float, dmax: int = 32) -> FamilySpec:
    """``sigma = 1 - x^2``, ``tau = beta - alpha - (alpha + beta + 2) x``, base point 1."""
    chi = ContinuousChi(Poly([1, 0, -1]), Poly([beta - alpha, -(alpha + beta + 2)]))
    return _spec("jacobi", {"alpha": alpha, "beta": beta}, chi, (1, 0, 0), dmax=dmax)


def hahn(xi_plus: Sequence[complex], xi_minus: Sequence[complex], variant: str = "a",
         dmax: int = 32) -> FamilySpec:
    """``chi^+- (x) = (x - xi_0^+-)(x - xi_1^+-)`` on the unit-step lattice."""
    chi = ArithmeticChi(Poly.from_roots(xi_plus), Poly.from_roots(xi_minus))
    params = {"xi_plus": list(xi_plus), "xi_minus": list(xi_minus)}
    if variant == "a":
        return _spec("hahn", params, chi, (xi_minus[0], 1, 0), "a", dmax)
    return _spec("hahn", params, chi, (xi_plus[0], -1, 0), "b", dmax)


def wilson(xi: Sequence[complex], dmax: int = 32) -> FamilySpec:
    """``chi(t) = prod (t + xi_nu)`` on the lattice ``(t + xi_0)^2``."""
    chi = QuadraticChi(Poly.from_roots([-v for v in xi]), complex(xi[0]))
    t0 = complex(xi[0])
    return _spec("wilson", {"xi": list(xi)}, chi, (t0 * t0, 2 * t0, 1), dmax=dmax)


def qhahn(q: complex, xi_plus: Sequence[complex], xi_minus: Sequence[complex],
          variant: str = "a", dmax: int = 32) -> FamilySpec:
    """``chi^+-(x) = (1 - xi_0^+- x)(1 - xi_1^+- x)`` on ``q^(+-t) x0``."""
    lam = cmath.sqrt(q)
    plus = Poly.from_roots([1 / v for v in xi_plus]) * (xi_plus[0] * xi_plus[1])
    minus = Poly.from_roots([1 / v for v in xi_minus]) * (xi_minus[0] * xi_minus[1])
    chi = GeometricChi(plus, minus, lam)
    params = {"q": q, "xi_plus": list(xi_plus), "xi_minus": list(xi_minus)}
    if variant == "a":
        return _spec("qhahn", params, chi, (0, 1 / xi_minus[0], 0), "a", dmax)
    return _spec("qhahn", params, chi, (0, 0, 1 / xi_plus[0]), "b", dmax)


def askey_wilson(q: complex, xi: Sequence[complex], dmax: int = 32) -> FamilySpec:
    """``chi(u) = u^-2 prod (1 - xi_nu u)`` on ``(q^t xi_0 + q^-t / xi_0) / 2``."""
    lam = cmath.sqrt(q)
    prod = Poly.from_roots([1 / v for v in xi]) * np.prod(xi)
    chi = TrigChi(LaurentPoly(prod.coeffs, -2), lam, complex(xi[0]))
    u0 = complex(xi[0])
    return _spec("askey-wilson", {"q": q, "xi": list(xi)}, chi, (0, u0 / 2, 1 / (2 * u0)), dmax=dmax)


def q_hermite(q: complex, dmax: int = 32) -> FamilySpec:
    """``chi(u) = u^-2``: chi never vanishes, so there is no base point."""
    chi = TrigChi(LaurentPoly([1], -2), cmath.sqrt(q))
    return FamilySpec("q-hermite", {"q": q}, chi, None, "a", chi_to_problem(chi, dmax))


def make_family(name: str, params: dict, dmax: int = 32) -> FamilySpec:
    name = name.lower().replace("_", "-")
    if name == "jacobi":
        return jacobi(params.get("alpha", 0.5), params.get("beta", 0.5), dmax)
    if name == "hahn":
        return hahn(params.get("xi_plus", (2, 3)), params.get("xi_minus", (5, 7)),
                    params.get("variant", "a"), dmax)
    if name == "wilson":
        return wilson(params.get("xi", (0.3, 0.7, 1.1, 1.9)), dmax)
    if name in ("qhahn", "q-hahn"):
        return qhahn(params.get("q", 0.3), params.get("xi_plus", (2, 3)),
                     params.get("xi_minus", (5, 7)), params.get("variant", "a"), dmax)
    if name in ("askey-wilson", "aw"):
        return askey_wilson(params.get("q", 0.25), params.get("xi", (0.9, 0.6, 0.3, 0.2)), dmax)
    if name in ("q-hermite", "qhermite"):
        return q_hermite(params.get("q", 0.5), dmax)
    raise UnsupportedForm(f"unknown family {name!r}")


# ---------------------------------------------------------------- closed forms

def family_closed_form(spec: FamilySpec, k: int, x: complex) -> complex:
    """Closed hypergeometric form of the degree-``k`` eigenfunction,
    normalized to 1 at the base point."""
    pr = spec.params
    x = complex(x)
    if spec.name == "jacobi":
        a, b = pr["alpha"], pr["beta"]
        return hyper_terminating([-k, k + a + b + 1], [a + 1], (1 - x) / 2, k)
    if spec.name == "hahn":
        (p0, p1), (m0, m1) = pr["xi_plus"], pr["xi_minus"]
        top = k - 1 + m0 + m1 - p0 - p1
        if spec.variant == "a":
            return hyper_terminating([-k, m0 - x, top], [m0 - p0, m0 - p1], 1, k)
        return hyper_terminating([-k, x - p0, top], [m0 - p0, m1 - p0], 1, k)
    if spec.name == "wilson":
        xi = pr["xi"]
        t = cmath.sqrt(x)
        return hyper_terminating([-k, xi[0] + t, xi[0] - t, k - 1 + sum(xi)],
                                 [xi[0] + xi[1], xi[0] + xi[2], xi[0] + xi[3]], 1, k)
    if spec.name == "qhahn":
        q = pr["q"]
        (p0, p1), (m0, m1) = pr["xi_plus"], pr["xi_minus"]
        top = q ** (k - 1) * p0 * p1 / (m0 * m1)
        if spec.variant == "a":
            return qhyper_terminating([q ** -k, 1 / (m0 * x), top], [p0 / m0, p1 / m0],
                                      q, q * m1 * x, k)
        return qhyper_terminating([q ** -k, p0 * x, top], [p0 / m0, p0 / m1], q, q, k)
    if spec.name == "askey-wilson":
        q, xi = pr["q"], pr["xi"]
        u = x + cmath.sqrt(x * x - 1)
        return qhyper_terminating(
            [q ** -k, xi[0] * u, xi[0] / u, np.prod(xi) * q ** (k - 1)],
            [xi[0] * xi[1], xi[0] * xi[2], xi[0] * xi[3]], q, q, k)
    raise UnsupportedForm(f"no closed form for {spec.name!r}")


def sample_points(spec: FamilySpec, n: int = 20) -> list[complex]:
    """Half on the lattice through the base point, half off it."""
    th = spec.theta
    on = [th.at(i / 2) for i in range(n // 2)]
    off = [th.at(0.37 + 0.61 * i + 0.21j) for i in range(n - n // 2)]
    if spec.form is Form.C:
        off = [complex(-0.95 + 1.9 * i / (n - n // 2 - 1), 0.1) for i in range(n - n // 2)]
        on = [complex(-0.9 + 1.8 * i / (n // 2 - 1)) for i in range(n // 2)]
    return on + off


def cross_check(spec: FamilySpec, kmax: int, points: Sequence[complex] | None = None) -> float:
    """Largest normwise relative gap between the operator-built eigenfunction
    (normalized at the base point) and the closed form, over ``k <= kmax``;
    each gap is scaled by the largest closed-form value on the sample set."""
    pts = list(points) if points is not None else sample_points(spec)
    worst = 0.0
    for k in range(kmax + 1):
        f = eigenfunction(spec.problem, spec.theta, k, Normalization.AT_THETA0).poly
        a = np.array([complex(f(x)) for x in pts])
        b = np.array([family_closed_form(spec, k, x) for x in pts])
        worst = worst_of(worst, np.abs(a - b).max() / np.abs(b).max())
    return worst


def taylor_coeff_formula(spec: FamilySpec, j: int, k: int) -> complex:
    """Closed form of ``partial_j f_k (theta_{j/2})`` for the monic ``f_k``."""
    if not 0 <= j <= k:
        raise ValueError("need 0 <= j <= k")
    chi, p = spec.chi, spec.problem
    idx = range(j, k)
    if spec.form is Form.C:
        x0 = spec.theta.at(0)
        s, t = p.sigma, p.tau
        if abs(s(x0)) > 1e-12:
            raise NoThetaRoot("base point is not a root of sigma")
        ds = s.deriv()(x0)
        out = complex(comb(k, j))
        for i in idx:
            out *= (t(x0) + i * ds) / (p.alpha2 * (k + i) - p.alpha2 + p.beta1)
        return out
    if spec.form is Form.A:
        x0 = spec.theta.at(0)
        g2, g1p, g1m = chi.plus.coef(2), chi.plus.coef(1), chi.minus.coef(1)
        out = complex(comb(k, j))
        for i in idx:
            num = chi.plus(x0 + i) if spec.variant == "a" else -chi.minus(x0 - i)
            out *= num / (g2 * (i + k) + g1p - g1m - g2)
        return out
    if spec.form is Form.Q:
        t0 = chi.t0
        chi0, rem = np.polynomial.polynomial.polydiv(chi.chi.coeffs, np.array([t0, 1], dtype=complex))
        chi0 = Poly(chi0)
        g4, g3 = chi.chi.coef(4), chi.chi.coef(3)
        out = complex(comb(k, j))
        for i in idx:
            out *= chi0(t0 + i) / (g4 * (i + k) - g4 + g3)
        return out
    lam = p.ctx.lam
    q = lam * lam
    ck2 = comb(k, 2) - comb(j, 2)
    if spec.form is Form.G:
        x0 = spec.theta.at(0)
        g2p, g2m = chi.plus.coef(2), chi.minus.coef(2)
        if spec.variant == "a":
            out = _gauss_binomial(q, k, j) * q ** (-2 * ck2)
            for i in idx:
                out *= (chi.plus(q ** i * x0) / x0) / (g2p - g2m * q ** (1 - i - k))
        else:
            out = _gauss_binomial(q, k, j) * q ** (-ck2)
            for i in idx:
                out *= (-chi.minus(q ** -i * x0) / x0) / (g2p - g2m * q ** (1 - i - k))
        return out
    if spec.form is Form.T:
        u0 = chi.u0
        if abs(chi.chi(1 / u0)) > 1e-10 * max(1.0, np.abs(chi.chi.coeffs).max()):
            raise NoThetaRoot("chi does not vanish at 1/u0")
        # chi(u) = (u - 1/u0) u^-2 chi0(u)
        shifted = chi.chi.coeffs  # coefficients of u^2 chi(u) in ascending order
        full = np.zeros(5, dtype=complex)
        full[chi.chi.low + 2: chi.chi.low + 2 + shifted.size] = shifted
        chi0, _ = np.polynomial.polynomial.polydiv(full, np.array([-1 / u0, 1], dtype=complex))
        chi0 = Poly(chi0)
        g2, gm2 = chi.gamma(2), chi.gamma(-2)
        out = _gauss_binomial(q, k, j) * q ** (-3 * ck2)
        for i in idx:
            out *= (chi0(q ** i * u0) / u0 ** 2) / (2 * (g2 - gm2 * q ** (1 - i - k)))
        return out
    raise UnsupportedForm(f"form {spec.form}")


def taylor_coeff_operator(spec: FamilySpec, j: int, k: int) -> complex:
    """``partial_j f_k(theta_{j/2})`` computed by the operators directly."""
    f = eigenfunction(spec.problem, spec.theta, k, Normalization.MONIC).poly
    return taylor_coeffs(spec.problem.P, spec.theta, f)[j]


__all__ = [
    "ArithmeticChi", "QuadraticChi", "GeometricChi", "TrigChi", "ContinuousChi",
    "FamilySpec", "canonical_P", "chi_to_problem", "problem_to_chi",
    "jacobi", "hahn", "wilson", "qhahn", "askey_wilson", "q_hermite", "make_family",
    "family_closed_form", "cross_check", "taylor_coeff_formula",
    "taylor_coeff_operator", "sample_points", "FAMILY_NAMES",
]

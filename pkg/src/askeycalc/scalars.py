"""Complex scalar kernels: tolerances, symmetric q-integers, q-shifted
factorials, the reciprocal Gamma function and terminating (basic)
hypergeometric sums.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import DenominatorPole, NearDegenerate, QOutOfRange

EPS_ABS = 1e-12
EPS_REL = 1e-9
QPOCH_TAIL = 1e-17
QPOCH_MAX_FACTORS = 100_000
Q_MAX = 0.99


def close(x: complex, y: complex, rel: float = EPS_REL, abs_: float = EPS_ABS) -> bool:
    """Hybrid comparison ``|x-y| <= abs + rel * max(|x|, |y|)``."""
    return abs(x - y) <= abs_ + rel * max(abs(x), abs(y))


def rel_err(x: complex, y: complex) -> float:
    scale = max(abs(x), abs(y))
    return abs(x - y) / scale if scale > 0 else 0.0


class Mode(Enum):
    GENERIC = "Generic"
    LAMBDA_ONE = "LambdaOne"
    LAMBDA_MINUS_ONE = "LambdaMinusOne"


@dataclass(frozen=True)
class QContext:
    """The deformation parameter ``lam`` with ``q = lam**2``.

    The two classical values ``lam = 1`` and ``lam = -1`` are explicit modes in
    which every symmetric q-integer takes its limiting value.
    """

    lam: complex
    mode: Mode = Mode.GENERIC

    def __post_init__(self):
        lam = complex(self.lam)
        object.__setattr__(self, "lam", lam)
        if self.mode is Mode.GENERIC:
            if lam == 0:
                raise NearDegenerate("lambda must be nonzero")
            if abs(lam - 1) < 1e-6 or abs(lam + 1) < 1e-6:
                raise NearDegenerate(
                    f"lambda={lam} is within 1e-6 of +-1; use a degenerate mode")
        elif self.mode is Mode.LAMBDA_ONE:
            object.__setattr__(self, "lam", 1 + 0j)
        else:
            object.__setattr__(self, "lam", -1 + 0j)

    @property
    def q(self) -> complex:
        return self.lam * self.lam

    @property
    def a(self) -> complex:
        return (self.lam + 1 / self.lam) / 2

    @property
    def degenerate(self) -> bool:
        return self.mode is not Mode.GENERIC

    @classmethod
    def from_a(cls, a: complex) -> "QContext":
        a = complex(a)
        if a == 1:
            return cls(1, Mode.LAMBDA_ONE)
        if a == -1:
            return cls(-1, Mode.LAMBDA_MINUS_ONE)
        return cls(a + cmath.sqrt(a * a - 1))

    @classmethod
    def from_lambda(cls, lam: complex) -> "QContext":
        lam = complex(lam)
        if lam == 1:
            return cls(1, Mode.LAMBDA_ONE)
        if lam == -1:
            return cls(-1, Mode.LAMBDA_MINUS_ONE)
        return cls(lam)

    def power(self, n: int) -> "QContext":
        """Context for ``lam**n`` (used by subsampled sequences)."""
        if self.mode is Mode.LAMBDA_ONE:
            return self
        if self.mode is Mode.LAMBDA_MINUS_ONE:
            return QContext.from_lambda((-1) ** n)
        return QContext(self.lam ** n)


def q_int(ctx: QContext, m: int) -> complex:
    """Symmetric q-integer ``(lam^m - lam^-m) / (lam - lam^-1)``."""
    if ctx.mode is Mode.LAMBDA_ONE:
        return complex(m)
    if ctx.mode is Mode.LAMBDA_MINUS_ONE:
        return complex((-1) ** (m - 1) * m)
    lam = ctx.lam
    den = lam - 1 / lam
    if abs(den) <= 1e-12:
        raise NearDegenerate("lambda - 1/lambda vanishes")
    return (lam ** m - lam ** (-m)) / den


def q_half(ctx: QContext, m: int) -> complex:
    """``(lam^m + lam^-m) / 2``, the leading factor of ``S x^m``."""
    lam = ctx.lam
    return (lam ** m + lam ** (-m)) / 2


def shift_ratio(ctx: QContext, m: int) -> complex:
    """``(lam^m + lam^-m - 2) / (lam + lam^-1 - 2)`` with its limits."""
    if ctx.mode is Mode.LAMBDA_ONE:
        return complex(m * m)
    if ctx.mode is Mode.LAMBDA_MINUS_ONE:
        return complex((1 - (-1) ** m) / 2)
    # written as a square in mu = sqrt(lam) to avoid cancelling near lam = 1
    mu = cmath.sqrt(ctx.lam)
    return ((mu ** m - mu ** (-m)) / (mu - 1 / mu)) ** 2


def q_factorial(ctx: QContext, k: int) -> complex:
    out = 1 + 0j
    for j in range(1, k + 1):
        out *= q_int(ctx, j)
    return out


def q_binomial(ctx: QContext, r: int, k: int) -> complex:
    """``prod_{j<k} [r-j] / [k-j]``, a symmetric q-binomial coefficient."""
    if not 0 <= k <= r:
        raise ValueError("need 0 <= k <= r")
    out = 1 + 0j
    for j in range(k):
        out *= q_int(ctx, r - j) / q_int(ctx, k - j)
    return out


def qpoch_finite(a: complex, q: complex, n: int) -> complex:
    """(a;q)_n"""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1 + 0j
    term = complex(a)
    for _ in range(n):
        out *= 1 - term
        term *= q
    return out


def qpoch_infinite(a: complex, q: complex) -> complex:
    """(a;q)_inf, truncated once the factor ``a q^N`` drops below 1e-17."""
    if abs(q) > Q_MAX:
        raise QOutOfRange(f"|q|={abs(q):.4g} exceeds {Q_MAX}")
    out = 1 + 0j
    term = complex(a)
    for _ in range(QPOCH_MAX_FACTORS):
        if abs(term) < QPOCH_TAIL:
            break
        out *= 1 - term
        if out == 0:
            break
        term *= q
    return out


def qpoch_infinite_scaled(a: complex, q: complex) -> tuple[complex, int]:
    """``(a;q)_inf`` as ``(m, e)`` with value ``m * 2**e``; survives products
    whose intermediate size exceeds the float range."""
    if abs(q) > Q_MAX:
        raise QOutOfRange(f"|q|={abs(q):.4g} exceeds {Q_MAX}")
    out, exp = 1 + 0j, 0
    term = complex(a)
    for _ in range(QPOCH_MAX_FACTORS):
        if abs(term) < QPOCH_TAIL:
            break
        out *= 1 - term
        if out == 0:
            return 0j, 0
        e = math.frexp(abs(out))[1]
        out, exp = out * 2.0 ** -e, exp + e
        term *= q
    return out, exp


def worst_of(*values) -> float:
    """Largest magnitude among scalars, arrays or iterables; NaN counts as inf
    so a broken evaluation can never pass a tolerance."""
    out = 0.0
    for v in values:
        if hasattr(v, "ravel"):
            v = v.ravel().tolist()
        items = v if hasattr(v, "__iter__") else (v,)
        for item in items:
            m = abs(item)
            if not math.isfinite(m):
                return math.inf
            out = max(out, float(m))
    return out


_LANCZOS_G = 7
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _sinpi(z: complex) -> complex:
    n = round(z.real)
    s = cmath.sin(math.pi * (z - n))
    return -s if n % 2 else s


def recip_gamma(z: complex) -> complex:
    """1/Gamma(z); exactly zero at the nonpositive integers."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        return 0j
    if z.real < 0.5:
        return _sinpi(z) / math.pi / recip_gamma(1 - z)
    z -= 1
    x = _LANCZOS_C[0]
    for i in range(1, _LANCZOS_G + 2):
        x += _LANCZOS_C[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return cmath.exp(t - (z + 0.5) * cmath.log(t)) / (math.sqrt(2 * math.pi) * x)


def _poch(x: complex, j: int) -> complex:
    out = 1 + 0j
    for i in range(j):
        out *= x + i
    return out


def hyper_terminating(num: Sequence[complex], den: Sequence[complex],
                      z: complex, k: int) -> complex:
    """Terminating rFs summed over ``0..k``; ``-k`` is among ``num``."""
    for d in den:
        for i in range(k):
            if d + i == 0:
                raise DenominatorPole(f"denominator parameter {d} hits a pole")
    total = term = 1 + 0j
    for j in range(k):
        ratio = z / (j + 1)
        for a in num:
            ratio *= a + j
        for b in den:
            ratio /= b + j
        term *= ratio
        total += term
    return total


def qhyper_terminating(num: Sequence[complex], den: Sequence[complex],
                       q: complex, z: complex, k: int) -> complex:
    """Terminating r-phi-s over ``0..k`` in the standard normalization.

    The extra factor ``((-1)^j q^(j(j-1)/2))^(1+s-r)`` is included, so it
    disappears in the balanced case ``r = s + 1``.
    """
    for d in den:
        for i in range(k):
            if abs(1 - d * q ** i) == 0:
                raise DenominatorPole(f"denominator parameter {d} hits a pole")
        if k and abs(1 - q ** k) == 0:
            raise DenominatorPole("(q;q)_j vanishes")
    extra = 1 + len(den) - len(num)
    total = term = 1 + 0j
    for j in range(k):
        ratio = z / (1 - q ** (j + 1))
        for a in num:
            ratio *= 1 - a * q ** j
        for b in den:
            ratio /= 1 - b * q ** j
        if extra:
            ratio *= (-(q ** j)) ** extra
        term *= ratio
        total += term
    return total

"""Dense univariate polynomials and Laurent polynomials with complex
coefficients, stored in ascending order."""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import polynomial as npp

ZERO_THRESHOLD = 1e-13


def _as_coeffs(coeffs) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
    if arr.ndim != 1:
        raise ValueError("coefficients must be one-dimensional")
    return arr if arr.size else np.zeros(1, dtype=complex)


class Poly:
    """Polynomial ``sum c[i] x^i``.

    Trailing coefficients below ``1e-13 * max|c|`` are dropped on
    construction, so ``degree`` is the index of the last significant term.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[complex] | np.ndarray | complex = 0):
        arr = _as_coeffs(coeffs)
        mags = np.abs(arr)
        top = mags.max()
        if top == 0:
            arr = arr[:1] * 0
        else:
            keep = np.nonzero(mags > ZERO_THRESHOLD * top)[0][-1]
            arr = arr[: keep + 1]
        self.coeffs = arr

    @classmethod
    def raw(cls, coeffs) -> "Poly":
        """Wrap coefficients without trimming."""
        out = cls.__new__(cls)
        out.coeffs = _as_coeffs(coeffs)
        return out

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Sequence[complex]) -> "Poly":
        if len(roots) == 0:
            return cls([1])
        return cls.raw(npp.polyfromroots(np.asarray(roots, dtype=complex)))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` standing for the zero polynomial."""
        if self.coeffs.size == 1 and self.coeffs[0] == 0:
            return -1
        return self.coeffs.size - 1

    @property
    def lead(self) -> complex:
        return complex(self.coeffs[-1])

    def coef(self, i: int) -> complex:
        return complex(self.coeffs[i]) if 0 <= i < self.coeffs.size else 0j

    def padded(self, n: int) -> np.ndarray:
        out = np.zeros(max(n, self.coeffs.size), dtype=complex)
        out[: self.coeffs.size] = self.coeffs
        return out

    def __call__(self, x):
        return npp.polyval(x, self.coeffs)

    def __add__(self, other) -> "Poly":
        other = _lift(other)
        return Poly(npp.polyadd(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly.raw(-self.coeffs)

    def __sub__(self, other) -> "Poly":
        other = _lift(other)
        return Poly(npp.polysub(self.coeffs, other.coeffs))

    def __rsub__(self, other) -> "Poly":
        return _lift(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            return Poly(npp.polymul(self.coeffs, other.coeffs))
        return Poly(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Poly":
        return Poly(self.coeffs / complex(scalar))

    def deriv(self) -> "Poly":
        return Poly(npp.polyder(self.coeffs)) if self.coeffs.size > 1 else Poly(0)

    def norm(self) -> float:
        return float(np.abs(self.coeffs).max())

    def distance(self, other: "Poly") -> float:
        """Max coefficient gap relative to the larger of the two norms."""
        n = max(self.coeffs.size, other.coeffs.size)
        diff = np.abs(self.padded(n) - other.padded(n)).max()
        scale = max(self.norm(), other.norm())
        return float(diff / scale) if scale > 0 else float(diff)

    def tolist(self) -> list[complex]:
        return [complex(c) for c in self.coeffs]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs.size == other.coeffs.size and bool(
            np.all(self.coeffs == other.coeffs))

    def __hash__(self):
        return hash(tuple(self.tolist()))

    def __repr__(self) -> str:
        return f"Poly({self.tolist()})"


def _lift(value) -> Poly:
    return value if isinstance(value, Poly) else Poly([complex(value)])


class LaurentPoly:
    """Laurent polynomial ``sum c[i] u^(low + i)``."""

    __slots__ = ("coeffs", "low")

    def __init__(self, coeffs: Iterable[complex], low: int = 0):
        self.coeffs = _as_coeffs(list(coeffs))
        self.low = int(low)

    @classmethod
    def from_dict(cls, terms: dict[int, complex]) -> "LaurentPoly":
        lo, hi = min(terms), max(terms)
        return cls([terms.get(k, 0) for k in range(lo, hi + 1)], lo)

    def coef(self, k: int) -> complex:
        i = k - self.low
        return complex(self.coeffs[i]) if 0 <= i < self.coeffs.size else 0j

    @property
    def high(self) -> int:
        return self.low + self.coeffs.size - 1

    def __call__(self, u):
        u = np.asarray(u, dtype=complex)
        return npp.polyval(u, self.coeffs) * u ** self.low

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(npp.polymul(self.coeffs, other.coeffs), self.low + other.low)

    def reflect(self) -> "LaurentPoly":
        """``u -> 1/u``."""
        return LaurentPoly(self.coeffs[::-1], -self.high)

    def __repr__(self) -> str:
        return f"LaurentPoly({[complex(c) for c in self.coeffs]}, low={self.low})"

"""Estimator-style front end: fit an eigenbasis once, evaluate it at points."""
from __future__ import annotations

import inspect

import numpy as np

from .families import make_family
from .hyperop import HProblem, Normalization, eigenfunction, find_theta0


class HypergeometricEigenbasis:
    """Polynomial eigenbasis ``f_0..f_kmax`` of a hypergeometric operator.

    Either ``family`` (with ``params``) or ``problem`` must be given.
    ``fit`` builds the basis; ``transform`` maps points ``X`` (shape ``(n,)``)
    to the matrix ``[f_k(x_i)]`` of shape ``(n, kmax + 1)``.

    >>> basis = HypergeometricEigenbasis(family="hahn", kmax=3).fit()
    >>> basis.transform([5.0]).round(12).tolist()
    [[(1+0j), (1+0j), (1+0j), (1+0j)]]
    """

    def __init__(self, family: str | None = None, params: dict | None = None,
                 problem: HProblem | None = None, kmax: int = 8,
                 normalization: str = "AtTheta0", theta_index: int = 0):
        self.family = family
        self.params = params
        self.problem = problem
        self.kmax = kmax
        self.normalization = normalization
        self.theta_index = theta_index

    def get_params(self, deep: bool = True) -> dict:
        names = list(inspect.signature(type(self).__init__).parameters)[1:]
        return {n: getattr(self, n) for n in names}

    def set_params(self, **params) -> "HypergeometricEigenbasis":
        valid = self.get_params()
        for key, value in params.items():
            if key not in valid:
                raise ValueError(f"unknown parameter {key!r}")
            setattr(self, key, value)
        return self

    def fit(self, X=None, y=None) -> "HypergeometricEigenbasis":
        if self.family is not None:
            spec = make_family(self.family, dict(self.params or {}), dmax=max(self.kmax, 1))
            p, theta = spec.problem, spec.theta
        elif self.problem is not None:
            spec, p, theta = None, self.problem, None
        else:
            raise ValueError("give either family or problem")
        if theta is None:
            theta = find_theta0(p)[self.theta_index]
        norm = Normalization(self.normalization)
        self.problem_ = p
        self.theta_ = theta
        self.eigenfunctions_ = [eigenfunction(p, theta, k, norm) for k in range(self.kmax + 1)]
        self.eigenvalues_ = np.array([ef.mu for ef in self.eigenfunctions_])
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "eigenfunctions_"):
            raise RuntimeError("call fit before transform")
        x = np.asarray(X, dtype=complex).ravel()
        return np.stack([ef.poly(x) for ef in self.eigenfunctions_], axis=1)

    def fit_transform(self, X, y=None) -> np.ndarray:
        return self.fit(X, y).transform(X)

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items() if v is not None)
        return f"HypergeometricEigenbasis({args})"

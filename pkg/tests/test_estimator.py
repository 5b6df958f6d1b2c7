import numpy as np
import pytest

from askeycalc import HypergeometricEigenbasis
from askeycalc.families import family_closed_form, wilson
from askeycalc.hyperop import HProblem, op_L
from askeycalc.poly import Poly
from askeycalc.pseq import Form, canonical


def test_transform_matches_closed_forms():
    basis = HypergeometricEigenbasis(family="wilson", params={"xi": (0.3, 0.7, 1.1, 1.9)}, kmax=5).fit()
    spec = wilson((0.3, 0.7, 1.1, 1.9))
    x = np.array([0.2, 1.3 + 0.4j, -2.0])
    M = basis.transform(x)
    assert M.shape == (3, 6)
    want = np.array([[family_closed_form(spec, k, xi) for k in range(6)] for xi in x])
    assert np.allclose(M, want, rtol=1e-9)


def test_problem_input_and_eigenvalues():
    p = HProblem(canonical(Form.A), Poly([6, -5, 1]), Poly([4, -3.3]))
    basis = HypergeometricEigenbasis(problem=p, kmax=3, normalization="Monic").fit()
    for ef, mu in zip(basis.eigenfunctions_, basis.eigenvalues_):
        assert op_L(p, ef.poly).distance(-mu * ef.poly) < 1e-9 * max(1, abs(mu))


def test_params_interface():
    basis = HypergeometricEigenbasis(family="hahn")
    assert basis.get_params()["kmax"] == 8
    assert basis.set_params(kmax=2).kmax == 2
    with pytest.raises(ValueError):
        basis.set_params(alpha=1)
    with pytest.raises(RuntimeError):
        basis.transform([0.0])
    assert basis.fit_transform([5.0]).shape == (1, 3)
    with pytest.raises(ValueError):
        HypergeometricEigenbasis().fit()

import numpy as np
import pytest

from askeycalc.errors import BoundaryViolated
from askeycalc.families import hahn, qhahn
from askeycalc.ortho import (eigen_gram, gram, measure, off_diagonal_ratio, sbp_residual,
                             wronskian)
from askeycalc.poly import Poly
from askeycalc.pseq import Form, canonical
from askeycalc.operators import op_D
from askeycalc.rodrigues import solve_rho
from askeycalc.sampling import base_P, random_poly

FINITE_HAHN = hahn((8, 10.3), (0, -1.6))


def test_wronskian_examples():
    P = canonical(Form.T)
    f = Poly([1, 2, 3])
    assert wronskian(P, Poly([1]), f).distance(op_D(P, f)) < 1e-14
    assert wronskian(P, Poly([0, 1]), Poly([0, 0, 1])).distance(P.B_poly) < 1e-14


def test_wronskian_from_roots(rng):
    P = base_P(Form.G, rng)
    f, g = random_poly(rng, 3), random_poly(rng, 4)
    x = 0.3 + 0.1j
    d = np.sqrt(complex(P.delta(x)))
    u, v = P.A(x) + d, P.A(x) - d
    want = (f(u) * g(v) - f(v) * g(u)) / (v - u)
    assert abs(wronskian(P, f, g)(x) - want) < 1e-10 * max(1, abs(want))
    assert wronskian(P, f, g).distance(-wronskian(P, g, f)) < 1e-14


def test_summation_by_parts(rng):
    for spec in (FINITE_HAHN, qhahn(0.3, (2, 3), (5, 7))):
        chain = solve_rho(spec.problem, spec.theta.shifted(0.3 + 0.2j))
        f, g = random_poly(rng, 4), random_poly(rng, 5)
        for t in (0, 0.5, 1.5):
            assert sbp_residual(chain, f, g, t) < 1e-9


def test_hahn_gram_is_diagonal():
    gm = measure(solve_rho(FINITE_HAHN.problem, FINITE_HAHN.theta), 8)
    G = eigen_gram(gm, 8)
    assert off_diagonal_ratio(G) < 1e-9
    assert np.all(np.abs(np.diag(G)) > 0)
    assert gm.nodes.tolist() == list(range(9))


def test_gram_of_non_orthogonal_set():
    gm = measure(solve_rho(FINITE_HAHN.problem, FINITE_HAHN.theta), 8)
    G = gram(gm, [Poly([1]), Poly([0, 1])])
    assert off_diagonal_ratio(G) > 0.1


def test_boundary_violation_detected():
    # cutting the support short leaves rho_1 nonzero past the last node
    chain = solve_rho(FINITE_HAHN.problem, FINITE_HAHN.theta)
    with pytest.raises(BoundaryViolated):
        measure(chain, 5)
    gm = measure(chain, 5, check=False)
    assert abs(gm.boundary_values()[0]) == 0 and abs(gm.boundary_values()[1]) > 1e-8

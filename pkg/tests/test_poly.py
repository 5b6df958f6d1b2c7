import numpy as np
import pytest

from askeycalc.poly import LaurentPoly, Poly


def test_trimming_and_degree():
    assert Poly([1, 2, 1e-20]).degree == 1
    assert Poly([0, 0]).degree == -1
    assert Poly.raw([1, 0, 0]).coeffs.size == 3


def test_arithmetic():
    p, q = Poly([1, 1]), Poly([-1, 1])
    assert (p * q) == Poly([-1, 0, 1])
    assert (p + q) == Poly([0, 2])
    assert (p - p).degree == -1
    assert (2 - p) == Poly([1, -1])
    assert (p / 2)(2) == pytest.approx(1.5)


def test_roots_and_eval():
    p = Poly.from_roots([1, 2, 3])
    assert p.lead == 1
    assert abs(p(2)) == 0
    assert p.deriv() == Poly([11, -12, 3])


def test_distance_is_relative():
    p = Poly([1e6, 0, 1])
    assert p.distance(Poly([1e6 + 1, 0, 1])) == pytest.approx(1e-6)
    assert p.distance(p) == 0


def test_laurent_eval_and_reflect():
    lp = LaurentPoly([1, 2, 3], -1)  # u^-1 + 2 + 3u
    assert lp.high == 1
    assert complex(lp(2.0)) == pytest.approx(0.5 + 2 + 6)
    assert complex(lp.reflect()(2.0)) == pytest.approx(complex(lp(0.5)))
    prod = lp * LaurentPoly([1], 1)
    assert prod.low == 0 and prod.coef(2) == 3
    assert LaurentPoly.from_dict({-2: 1, 1: 4}).coef(0) == 0


def test_padded():
    assert np.allclose(Poly([1, 2]).padded(4), [1, 2, 0, 0])

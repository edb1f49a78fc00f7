import math

import numpy as np
import pytest

from gevreytf import WeightSpec


def test_unweighted_is_one_everywhere():
    w = WeightSpec.unweighted()
    assert w.eval_t(3.7) == 1.0
    assert np.array_equal(w.eval_t(np.linspace(-5, 5, 11)), np.ones(11))
    assert w.eval_xy(2.0, -3.0) == 1.0
    out = w.eval_xy(np.zeros((4, 1)), np.zeros((1, 7)))
    assert out.shape == (4, 7) and np.array_equal(out, np.ones((4, 7)))


def test_polynomial_bracket_values():
    w = WeightSpec.polynomial(2.0, 1.0)
    # <x>^2 <xi>^1 with <x> = sqrt(1 + x^2)
    assert w.eval_xy(1.0, 0.0) == pytest.approx(2.0, rel=1e-15)
    assert w.eval_xy(0.0, 1.0) == pytest.approx(math.sqrt(2.0), rel=1e-15)
    assert w.eval_t(3.0) == pytest.approx(10.0, rel=1e-15)


def test_exponential_radial():
    w = WeightSpec.exponential(0.5)
    assert w.eval_t(-2.0) == pytest.approx(math.e, rel=1e-15)
    assert w.eval_xy(3.0, 4.0) == pytest.approx(math.exp(2.5), rel=1e-15)


def test_positivity_on_a_grid():
    grids = np.linspace(-50, 50, 101)
    for w in (
        WeightSpec.unweighted(),
        WeightSpec.polynomial(-1.5, 2.0),
        WeightSpec.exponential(0.1),
    ):
        assert (w.eval_t(grids) > 0).all()
        assert (w.eval_xy(grids[:, None], grids[None, :]) > 0).all()


def test_rejects_bad_kind_and_nonfinite():
    with pytest.raises(ValueError):
        WeightSpec("gaussian")
    with pytest.raises(ValueError):
        WeightSpec.exponential(math.inf)
    with pytest.raises(ValueError):
        WeightSpec.polynomial(math.nan, 0.0)

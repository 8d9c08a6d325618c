import numpy as np
import pytest

from lie_airy.errors import QuadratureError
from lie_airy.quadrature import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, adaptive_tensor_quad, panel_rule


def _exact_moment(k):
    return 2.0 / (k + 1) if k % 2 == 0 else 0.0


@pytest.mark.parametrize("k", range(24))
def test_kronrod_exact_to_degree_23(k):
    assert np.dot(KRONROD_WEIGHTS, NODES ** k) == pytest.approx(_exact_moment(k), abs=1e-14)


@pytest.mark.parametrize("k", range(14))
def test_gauss_exact_to_degree_13(k):
    assert np.dot(GAUSS_WEIGHTS, NODES ** k) == pytest.approx(_exact_moment(k), abs=1e-14)


def test_gauss_not_exact_at_degree_14():
    assert abs(np.dot(GAUSS_WEIGHTS, NODES ** 14) - _exact_moment(14)) > 1e-8


def test_gauss_nodes_are_nested():
    used = np.flatnonzero(GAUSS_WEIGHTS)
    assert list(used) == [1, 3, 5, 7, 9, 11, 13]


def test_panel_rule_shapes():
    nodes, wk, wg = panel_rule(np.array([0.0, 1.0, 3.0]))
    assert nodes.shape == wk.shape == wg.shape == (2, 15)
    assert wk.sum() == pytest.approx(3.0)


def test_oscillatory_1d():
    f = lambda xs: np.exp(1j * 20 * xs[0])
    res = adaptive_tensor_quad(f, [np.array([0.0, 1.0])], tol=1e-12)
    exact = (np.exp(20j) - 1) / 20j
    assert abs(res.value - exact) < 1e-11
    assert res.err_estimate <= 1e-12


def test_tensor_2d_gaussian_product():
    def f(xs):
        return np.exp(-xs[0] ** 2)[:, None] * np.cos(xs[1])[None, :]

    res = adaptive_tensor_quad(f, [np.linspace(-7, 7, 3), np.linspace(0, np.pi / 2, 2)], tol=1e-11)
    assert res.value == pytest.approx(np.sqrt(np.pi), abs=1e-10)


def test_chunked_evaluation_matches_unchunked():
    def f(xs):
        X, Y = np.meshgrid(*xs, indexing="ij")
        return np.exp(1j * X * Y)

    b = [np.linspace(0, 2, 5), np.linspace(0, 2, 5)]
    a = adaptive_tensor_quad(f, b, tol=1e-10)
    c = adaptive_tensor_quad(f, b, tol=1e-10, max_points_per_call=4000)
    assert a.value == pytest.approx(c.value, abs=1e-13)


def test_budget_exhaustion_raises():
    f = lambda xs: np.exp(1j * 1e4 * xs[0] ** 2)
    with pytest.raises(QuadratureError):
        adaptive_tensor_quad(f, [np.array([-5.0, 5.0])], tol=1e-14, max_cells=50)

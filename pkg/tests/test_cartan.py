import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lie_airy.cartan import (
    CartanData,
    apply_pi_operator,
    discriminant_poly,
    gaussian_pi_ft_check,
    haar_sample,
    hciz_check,
    limit_formula_check,
    orbital_average,
    permutation_sign,
    pi_eval,
    pi_norm_squared,
    weyl_integration_check,
)
from lie_airy.errors import CoincidenceError


def superfactorial_formula(n):
    return math.factorial(n) * math.prod(math.factorial(j) for j in range(n))


def test_cartan_data():
    cd = CartanData(3)
    assert cd.r == 3
    assert cd.positive_pairs == ((0, 1), (0, 2), (1, 2))
    assert len(cd.weyl) == 6
    assert sum(s for _, s in cd.weyl) == 0


@pytest.mark.parametrize("perm, sign", [((0, 1, 2), 1), ((1, 0, 2), -1), ((1, 2, 0), 1), ((2, 1, 0), -1)])
def test_permutation_sign(perm, sign):
    assert permutation_sign(perm) == sign


def test_pi_eval_examples():
    assert pi_eval(CartanData(2), [0, 1]) == 1
    assert pi_eval(CartanData(3), [0, 1, 2]) == 2


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_pi_skew_symmetry(y):
    cd = CartanData(3)
    base = pi_eval(cd, y)
    for s, sign in cd.weyl:
        assert pi_eval(cd, [y[i] for i in s]) == pytest.approx(sign * base, rel=1e-12, abs=1e-12)


def test_pi_eval_matches_polynomial():
    y = np.array([0.3, -1.2, 2.5, 0.7])
    assert discriminant_poly(4)(y) == pytest.approx(pi_eval(4, y), rel=1e-12)


@pytest.mark.parametrize("n", range(1, 7))
def test_pi_norm_squared(n):
    assert pi_norm_squared(n) == superfactorial_formula(n)


def test_pi_norm_squared_range():
    with pytest.raises(ValueError):
        pi_norm_squared(7)


def test_haar_unitary_and_moments():
    rng = np.random.default_rng(7)
    U = haar_sample(3, rng, 100_000)
    eye = np.eye(3)
    assert np.abs(U[:10] @ np.conj(np.swapaxes(U[:10], -1, -2)) - eye).max() < 1e-12
    u11 = U[:, 0, 0]
    se = np.std(u11) / math.sqrt(len(u11))
    assert abs(u11.mean()) <= 3 * se * math.sqrt(2)
    m2 = np.abs(u11) ** 2
    assert abs(m2.mean() - 1 / 3) <= 3 * m2.std() / math.sqrt(len(m2))


def test_haar_phase_correction_makes_diagonal_uniform():
    # without the phase fix the QR diagonal of R is real positive and u11 is biased
    rng = np.random.default_rng(11)
    U = haar_sample(2, rng, 50_000)
    ang = np.angle(U[:, 0, 0])
    assert abs(np.mean(np.cos(ang))) < 0.02 and abs(np.mean(np.sin(ang))) < 0.02


def test_orbital_average_invariant_function_exact():
    y = np.array([0.5, -1.0, 2.0])
    f = lambda X: np.exp(-0.5 * np.real(np.einsum("bij,bji->b", X, X)))
    mean, se = orbital_average(f, y, samples=500, seed=1, return_stderr=True)
    assert mean == pytest.approx(math.exp(-0.5 * float(y @ y)), rel=1e-12)
    assert se < 1e-12


def test_orbital_average_first_moment():
    y = [1.0, 2.0, 4.0]
    mean, se = orbital_average(lambda X: X[:, 0, 0], y, samples=100_000, seed=3, return_stderr=True)
    assert abs(mean - sum(y) / 3) <= 3 * se


def test_orbital_average_reproducible_and_worker_independent():
    f = lambda X: np.abs(X[:, 0, 1]) ** 2
    a = orbital_average(f, [0.0, 1.0], samples=50_000, seed=9, chunk=7_000, workers=1)
    b = orbital_average(f, [0.0, 1.0], samples=50_000, seed=9, chunk=7_000, workers=4)
    assert a == b
    assert orbital_average(f, [0.0, 1.0], samples=1, seed=2) == orbital_average(f, [0.0, 1.0], samples=1, seed=2)


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 2), (3, 12)])
def test_weyl_integration(n, expected):
    rep = weyl_integration_check(n)
    assert rep.rhs == expected
    assert rep.rel_err <= 1e-6 and rep.passed


def test_hciz_n2():
    rep = hciz_check(2, [1, -1], [1, -1], samples=200_000, seed=0)
    assert rep.rhs == pytest.approx(math.exp(2) - math.exp(-2), rel=1e-14)
    assert abs(rep.lhs - rep.rhs) <= 3 * rep.stderr_estimate
    assert rep.rel_err <= 0.02 and rep.passed


def test_hciz_swap_changes_sign_only():
    a = hciz_check(2, [1, -1], [1, -1], samples=20_000, seed=5)
    b = hciz_check(2, [-1, 1], [1, -1], samples=20_000, seed=5)
    assert b.lhs == -a.lhs and b.rhs == pytest.approx(-a.rhs, rel=1e-15)
    assert b.rel_err == pytest.approx(a.rel_err, rel=1e-12)


def test_hciz_n3():
    rep = hciz_check(3, [1.0, 0.0, -1.0], [0.5, -0.2, 0.3], samples=100_000, seed=2)
    assert abs(rep.lhs - rep.rhs) <= 4 * rep.stderr_estimate


def test_hciz_rejects_coincident():
    with pytest.raises(CoincidenceError):
        hciz_check(2, [1, 1], [1, -1], samples=10)
    with pytest.raises(CoincidenceError):
        hciz_check(2, [1, -1], [0, 0], samples=10)


def test_hciz_reproducible():
    a = hciz_check(2, [1, -1], [0.5, 2], samples=30_000, seed=7).to_dict()
    b = hciz_check(2, [1, -1], [0.5, 2], samples=30_000, seed=7).to_dict()
    assert a == b


@pytest.mark.parametrize("n", [1, 2, 3])
def test_limit_formula(n):
    rep = limit_formula_check(n, 1e-3)
    assert rep.passed and rep.rhs == pi_norm_squared(n)


def test_limit_formula_second_order():
    e1 = abs(limit_formula_check(2, 2e-3).lhs - 2)
    e2 = abs(limit_formula_check(2, 1e-3).lhs - 2)
    assert e1 / e2 == pytest.approx(4.0, rel=1e-3)


def test_pi_operator_on_pi_gives_pairing():
    # d(pi) pi is the constant (pi, pi); the stencil is exact on polynomials of degree r
    for n in (2, 3):
        v = apply_pi_operator(lambda Y: pi_eval(n, Y), n, np.full(n, 0.3), 0.1)
        assert v == pytest.approx(pi_norm_squared(n), rel=1e-10)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gaussian_pi_fourier(n):
    rep = gaussian_pi_ft_check(n)
    assert rep.rel_err <= 1e-6
    assert rep.extra["stencil_err"] <= 1e-4
    assert rep.passed
    assert rep.lhs == pytest.approx(rep.rhs, abs=1e-12)


def test_report_serialisation():
    d = hciz_check(2, [1, -1], [1, -1], samples=1000, seed=1).to_dict()
    assert d["schema"] == "1"
    assert set(d) >= {"check", "n", "lhs", "rhs", "rel_err", "samples", "seed", "passed"}

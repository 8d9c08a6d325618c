import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq
from scipy.special import erfc

from lie_airy.contour import (
    EvenCycle,
    MajorantConstants,
    OddCycle,
    estimate_majorant,
    map_point,
    map_points,
    select_cycle,
    tail_bound,
    truncation_radius,
)
from lie_airy.errors import NotAiryError, TruncationError, UnusableCycleError
from lie_airy.poly import parse_poly


def test_map_point_examples():
    z, j = map_point(OddCycle((1.0,), 0.5), 2.0)
    assert z[0] == 2 + 0.5j and j == 1
    z, j = map_point(EvenCycle((0.5,), 1.0), 2.0)
    assert z[0] == 2 + 0.5j and j == 1
    z, j = map_point(EvenCycle((0.5,), 1.0), 0.4)
    assert z[0] == pytest.approx(0.4 + 0.2j) and j == pytest.approx(1 + 0.5j)


@pytest.mark.parametrize("bad", [dict(tau=(1.0, 1.0), t=0.5), dict(tau=(1.0,), t=0.0)])
def test_odd_cycle_validation(bad):
    with pytest.raises(ValueError):
        OddCycle(**bad)


@pytest.mark.parametrize("theta, sigma", [((1.0,), 1.0), ((0.5,), 0.0), ((0.5,), 1.5)])
def test_even_cycle_validation(theta, sigma):
    with pytest.raises(ValueError):
        EvenCycle(theta, sigma)


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.floats(0.01, 0.99), min_size=1, max_size=3),
    st.floats(0.05, 1.0),
    st.lists(st.floats(-30, 30), min_size=3, max_size=3),
)
def test_even_cycle_bounds(theta, sigma, xi):
    cyc = EvenCycle(tuple(theta), sigma)
    x = np.array(xi[: len(theta)])
    z, jac = map_point(cyc, x)
    n = len(theta)
    assert abs(jac) <= 2 ** n
    assert np.linalg.norm(x) <= np.linalg.norm(z) + 1e-12
    assert np.linalg.norm(z) <= np.linalg.norm(x) + n


def test_even_cycle_continuous_at_kinks():
    cyc = EvenCycle((0.7,), 1.0)
    for k in (-1.0, 1.0):
        zl, _ = map_points(cyc, np.array([[k - 1e-12]]))
        zr, _ = map_points(cyc, np.array([[k + 1e-12]]))
        assert abs(zl - zr).max() < 1e-11


def test_majorant_cubic_odd():
    t = 0.3
    mc = estimate_majorant(parse_poly("y^3/3"), OddCycle((1.0,), t))
    # Im((xi + i t)^3 / 3) = t xi^2 - t^3/3
    assert mc.exponent == 2
    assert mc.leading == pytest.approx(t, rel=1e-3)
    assert mc.correction < 0.05


def test_majorant_quartic_even():
    t = 0.3
    mc = estimate_majorant(parse_poly("y^4/4"), EvenCycle((t,), 1.0))
    assert mc.exponent == 3
    assert mc.leading == pytest.approx(t, rel=1e-3)


def test_majorant_quadratic_along_shift_direction():
    t = 0.4
    mc = estimate_majorant(parse_poly("y^2"), OddCycle((1.0,), t), directions=[[1.0]])
    assert mc.exponent == 1
    assert mc.leading == pytest.approx(2 * t)


def test_majorant_quadratic_full_line_is_unusable():
    with pytest.raises(UnusableCycleError):
        estimate_majorant(parse_poly("y^2"), OddCycle((1.0,), 0.4))


@pytest.mark.parametrize("text, cycle", [
    ("y1^3/3", OddCycle((1.0,), 0.2)),
    ("y1^4+y2^4+y1^2*y2^2", EvenCycle((0.5, 0.5), 1.0)),
    ("y1^3+y2^3", OddCycle((2 ** -0.5, 2 ** -0.5), 0.5)),
])
def test_majorant_is_conservative_on_probes(text, cycle):
    p = parse_poly(text)
    mc = estimate_majorant(p, cycle)
    rng = np.random.default_rng(0)
    dirs = rng.normal(size=(200, p.nvars))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    mc2 = estimate_majorant(p, cycle, directions=dirs)
    r = np.geomspace(1, 50, 160)
    z, _ = map_points(cycle, r[:, None, None] * dirs[None])
    v = np.imag(p(z))
    assert np.all(v >= mc2.envelope(r)[:, None] - 1e-9 * np.abs(v))
    assert mc.leading > 0


def test_gaussian_truncation_radius_matches_erfc_root():
    mc = MajorantConstants("odd", 1.0, 0.0, 2)
    R = truncation_radius(mc, 0, 1e-12)
    # 1-d tail of exp(-rho^2): sqrt(pi) erfc(R)
    root = brentq(lambda x: np.sqrt(np.pi) * erfc(x) - 1e-12, 1, 10)
    assert root <= R <= root * 1.01
    assert R == pytest.approx(5.1133, abs=1e-3)


def test_truncation_radius_monotone():
    mc = MajorantConstants("odd", 1.0, 0.0, 2)
    Rs = [truncation_radius(mc, 0, tol) for tol in (1e-14, 1e-12, 2e-12, 1e-8, 1e-4)]
    assert Rs == sorted(Rs, reverse=True)
    small = MajorantConstants("odd", 0.01, 0.0, 2)
    assert truncation_radius(small, 0, 1e-8) > truncation_radius(mc, 0, 1e-8)


def test_tail_bound_decreasing():
    mc = MajorantConstants("even", 0.5, 0.2, 3, ndim=2)
    vals = [tail_bound(mc, 2, R) for R in (1, 2, 3, 4)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_truncation_cap():
    mc = MajorantConstants("odd", 1e-9, 0.0, 1)
    with pytest.raises(TruncationError):
        truncation_radius(mc, 0, 1e-12, cap=100.0)


@pytest.mark.parametrize("x, t", [(5.0, 0.2), (0.5, 1.0), (-10.0, 0.1), (0.0, 1.0)])
def test_select_cycle_odd(x, t):
    c = select_cycle(parse_poly("y^3/3"), x)
    assert isinstance(c, OddCycle)
    assert c.t == pytest.approx(t)
    assert c.tau == (1.0,)


def test_select_cycle_even():
    c = select_cycle(parse_poly("y^4/4"), 10.0)
    assert isinstance(c, EvenCycle)
    assert c.theta[0] == pytest.approx(0.1 * 0.9)


def test_select_cycle_negated_odd_flips_direction():
    c = select_cycle(parse_poly("-y^3/3"), 1.0)
    assert c.tau == (-1.0,)


def test_select_cycle_rejects_inconclusive():
    with pytest.raises(NotAiryError):
        select_cycle(parse_poly("y1^2*y2^2"), [0.0, 0.0])

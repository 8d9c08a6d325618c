from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lie_airy.errors import DimensionError, PolynomialParseError
from lie_airy.poly import MultiPoly, format_poly, parse_poly


def test_parse_and_eval_cubic_at_imaginary_point():
    p = parse_poly("y^3/3 + y")
    assert p.nvars == 1
    assert p.eval([2j]) == pytest.approx(-2j / 3)


def test_bare_y_means_first_variable():
    assert parse_poly("y^2") == parse_poly("y1^2")


@pytest.mark.parametrize(
    "text, nvars, degree",
    [("y1^3/3", 1, 3), ("y1^4+y2^4+y1^2*y2^2", 2, 4), ("(y1+y2)**2 - 2*y1*y2", 2, 2), ("7", 1, 0)],
)
def test_parse_shapes(text, nvars, degree):
    p = parse_poly(text)
    assert p.nvars == nvars
    assert p.degree == degree


def test_exact_rational_coefficients():
    p = parse_poly("y1^3/3")
    assert p.terms[(3,)] == Fraction(1, 3)


@pytest.mark.parametrize("bad", ["y1^", "y1 + * y2", "(y1", "y1^-2", "z3", ""])
def test_parse_errors(bad):
    with pytest.raises(PolynomialParseError):
        parse_poly(bad)


def test_dimension_cap():
    with pytest.raises(DimensionError):
        MultiPoly(9, {})


def test_homogeneous_component_and_leading_form():
    p = parse_poly("y1^3 + 2*y1*y2 + 5")
    assert p.homogeneous_component(2) == parse_poly("2*y1*y2", nvars=2)
    assert p.leading_form() == parse_poly("y1^3", nvars=2)
    assert p.homogeneous_component(0) == MultiPoly.constant(2, 5)


def test_gradient():
    p = parse_poly("y1^3 + y1*y2^2")
    g = p.gradient()
    assert g[0] == parse_poly("3*y1^2 + y2^2")
    assert g[1] == parse_poly("2*y1*y2")


def test_sign_change_invariance():
    assert parse_poly("y1^4 + y1^2*y2^2 + y2^4").is_sign_change_invariant()
    assert not parse_poly("y1^3*y2 + y2^4").is_sign_change_invariant()


def test_partition_separable():
    p = parse_poly("y1^3 + y1*y2 + y3^4")
    assert p.partition_separable() == [(0, 1), (2,)]
    assert parse_poly("y1^2*y2^2").partition_separable() == [(0, 1)]


def test_split_blocks_sums_back():
    p = parse_poly("y1^3 + y1*y2 + y3^4 + 2")
    blocks = p.partition_separable()
    parts = p.split_blocks(blocks)
    assert parts[0].nvars == 2 and parts[1].nvars == 1
    y = np.array([0.3, -1.1, 0.7])
    assert parts[0](y[:2]) + parts[1](y[2:]) == pytest.approx(p(y))


def test_vectorised_matches_pointwise(rng):
    p = parse_poly("y1^3/3 - 2*y1*y2 + y2^4")
    z = rng.normal(size=(10, 2)) + 1j * rng.normal(size=(10, 2))
    vec = p(z)
    for zi, vi in zip(z, vec):
        assert vi == pytest.approx(complex(p.eval(list(zi))), rel=1e-12)


coeffs = st.integers(-5, 5)


@st.composite
def polys(draw):
    n = draw(st.integers(1, 3))
    k = draw(st.integers(0, 5))
    terms = {}
    for _ in range(k):
        alpha = tuple(draw(st.integers(0, 4)) for _ in range(n))
        terms[alpha] = draw(coeffs)
    return MultiPoly(n, terms)


@settings(max_examples=60, deadline=None)
@given(polys())
def test_format_round_trip(p):
    assert parse_poly(format_poly(p), nvars=p.nvars) == p


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_product_rule(p, q):
    if p.nvars != q.nvars:
        return
    for j in range(p.nvars):
        assert (p * q).derivative(j) == p.derivative(j) * q + p * q.derivative(j)


@settings(max_examples=40, deadline=None)
@given(polys(), st.lists(st.floats(-2, 2), min_size=3, max_size=3))
def test_evaluation_is_a_ring_homomorphism(p, pt):
    z = np.array(pt[: p.nvars])
    q = p * p + p
    assert q(z) == pytest.approx(p(z) ** 2 + p(z), rel=1e-9, abs=1e-9)

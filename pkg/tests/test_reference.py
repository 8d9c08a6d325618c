import math

import pytest
from scipy.special import airy, gamma

from lie_airy.reference import airy_series, reference_ai, reference_ai_prime


def test_values_at_zero():
    assert reference_ai(0.0) == pytest.approx(3 ** (-2 / 3) / gamma(2 / 3), rel=1e-15)
    assert reference_ai(0.0) == pytest.approx(0.3550280539, abs=1e-10)
    assert reference_ai_prime(0.0) == pytest.approx(-0.2588194038, abs=1e-10)


@pytest.mark.parametrize("x", [-8.0, -5.5, -1.0, 0.25, 2.0, 5.0, 8.0])
def test_against_scipy(x):
    ai, aip, _, _ = airy(x)
    assert reference_ai(x) == pytest.approx(ai, abs=1e-13, rel=1e-12)
    assert reference_ai_prime(x) == pytest.approx(aip, abs=1e-13, rel=1e-12)


@pytest.mark.parametrize("x", [-8.0, 3.0, 8.0])
def test_remainder_bound(x):
    for d in (0, 1):
        _, bound = airy_series(x, d)
        assert bound < 1e-10


@pytest.mark.parametrize("x", [-8.01, 9.0, math.inf])
def test_window_enforced(x):
    with pytest.raises(ValueError):
        reference_ai(x)

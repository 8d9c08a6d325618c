import numpy as np
import pytest

from lie_airy.checker import CheckConfig, Verdict, check_airy_even, check_airy_odd, classify, coefficient_form
from lie_airy.errors import DegreeError
from lie_airy.poly import parse_poly


@pytest.mark.parametrize(
    "text, verdict",
    [
        ("y1^3/3", Verdict.HOLDS_ODD),
        ("y1^4/4", Verdict.HOLDS_EVEN),
        ("-y1^3/3", Verdict.HOLDS_BY_NEGATION),
        ("y1^2*y2^2", Verdict.INCONCLUSIVE),
        ("y1^4+y2^4+y1^2*y2^2", Verdict.HOLDS_EVEN),
        ("y1^3+y2^4", Verdict.HOLDS_EVEN),
        ("-y1^3-y2^4", Verdict.HOLDS_BY_NEGATION),
        ("y1^3+y2^2", Verdict.HOLDS_ODD),
        ("y1^3+y2^3", Verdict.HOLDS_ODD),
        ("-y1^4-y2^4", Verdict.HOLDS_BY_NEGATION),
    ],
)
def test_classify(text, verdict):
    assert classify(parse_poly(text)).verdict is verdict


def test_sum_of_cubes_witness_is_diagonal():
    rep = classify(parse_poly("y1^3+y2^3"))
    np.testing.assert_allclose(rep.witness, np.ones(2) / np.sqrt(2), atol=1e-12)


def test_witness_is_unit_and_condition_positive():
    p = parse_poly("y1^3 + y2^3 + y1*y2^2")
    rep = classify(p)
    assert rep.verdict is Verdict.HOLDS_ODD
    tau = np.array(rep.witness)
    assert np.linalg.norm(tau) == pytest.approx(1.0)
    again = check_airy_odd(p, tau)
    assert again.holds
    assert min(m.value for m in again.min_values.values()) > 0


def test_bad_direction_is_inconclusive_with_located_minimum():
    rep = check_airy_odd(parse_poly("y1^3 - y1*y2^2"), tau=(1.0, 0.0))
    assert rep.verdict is Verdict.INCONCLUSIVE
    (cm,) = rep.min_values.values()
    assert cm.value == pytest.approx(-1.0, abs=1e-6)
    np.testing.assert_allclose(np.abs(cm.location), [0.0, 1.0], atol=1e-4)


def test_even_condition_requires_sign_change_invariance():
    rep = check_airy_even(parse_poly("y1^4 + y1^3*y2 + y2^4"))
    assert not rep.holds


def test_degenerate_leading_form_is_inconclusive():
    rep = classify(parse_poly("y1^2*y2^2"))
    assert rep.verdict is Verdict.INCONCLUSIVE
    assert min(m.value for m in rep.min_values.values()) == pytest.approx(0.0, abs=1e-9)


def test_coefficient_form_recognizer():
    assert coefficient_form(parse_poly("y1^3+y2^3"))
    assert coefficient_form(parse_poly("y1^4+y2^4"))
    assert not coefficient_form(parse_poly("y1^2*y2^2"))


def test_recognized_form_confirmed_numerically():
    # coefficient pattern alone is not enough: strong cross terms break tau = (1,1)
    p = parse_poly("y1^3 + y2^3 + 10*y1^2*y2")
    rep = check_airy_odd(p, tau=(1.0, 1.0))
    assert not rep.holds


def test_deterministic_reports():
    p = parse_poly("y1^4+y2^4+y1^2*y2^2")
    a = classify(p, CheckConfig(seed=3)).to_dict()
    b = classify(p, CheckConfig(seed=3)).to_dict()
    assert a == b


@pytest.mark.parametrize("text", ["y1 + 2", "y1^2 + y2"])
def test_low_degree_rejected(text):
    with pytest.raises(DegreeError):
        classify(parse_poly(text))

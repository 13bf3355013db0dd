import math
from fractions import Fraction

import pytest

from thetalift.lift import (
    PiMultiple,
    SeriesNotConverged,
    lift_cm_evaluation,
    lift_cm_i,
    lift_finite,
    lift_series,
    series_partial_sum,
)


def test_cm_values_at_i():
    assert lift_cm_i(4) == PiMultiple(Fraction(40))
    assert lift_cm_i(5) == PiMultiple(Fraction(16))
    assert str(lift_cm_i(4)) == "40π"
    assert float(lift_cm_i(5)) == pytest.approx(16 * math.pi)
    ev = lift_cm_evaluation(5)
    assert (ev.method, ev.x, ev.y) == ("cm", 0.0, 1.0)


def test_cm_agrees_with_finite_expansion_at_i():
    for D in range(1, 301):
        if D % 4 in (0, 1):
            assert lift_cm_i(D) == lift_finite(D, 0, 1).exact, D


def test_finite_exact_and_float_paths_agree():
    for D in (4, 5, 8, 9, 12, 17):
        for x, y in (("1/3", "1/2"), ("0.1", "0.8"), ("-2/5", "3/2"), ("0", "1/7")):
            exact = lift_finite(D, x, y)
            approx = lift_finite(D, float(Fraction(x)), float(Fraction(y)))
            assert exact.exact is not None and approx.exact is None
            assert approx.value == pytest.approx(exact.value, rel=1e-12, abs=1e-9)


def test_finite_is_periodic_in_x():
    for D in (4, 5, 9, 12):
        a = lift_finite(D, Fraction(1, 5), Fraction(2, 3)).exact
        b = lift_finite(D, Fraction(6, 5), Fraction(2, 3)).exact
        assert a == b


def test_finite_is_even_in_x():
    for D in (4, 5, 8, 13):
        a = lift_finite(D, Fraction(2, 7), Fraction(1, 3)).exact
        b = lift_finite(D, Fraction(-2, 7), Fraction(1, 3)).exact
        assert a == b


@pytest.mark.parametrize("D", [5, 8, 12, 13, 17])
def test_finite_independent_of_x_high_up(D):
    # for y >= sqrt(D)/2 no geodesic encloses z, so only the constant term remains
    y = Fraction(math.isqrt(D) + 1, 2)
    vals = {lift_finite(D, Fraction(k, 11), y).exact for k in range(-11, 12)}
    assert len(vals) == 1


def test_finite_continuous_across_geodesics():
    # crossing the geodesic |z| = 1 of [-1, 0, 1] (D = 4) the function is continuous
    D = 4
    eps = Fraction(1, 10**6)
    inside = lift_finite(D, 0, 1 - eps).value
    outside = lift_finite(D, 0, 1 + eps).value
    assert abs(inside - outside) < 1e-3


def test_finite_rejects_bad_input():
    with pytest.raises(ValueError):
        lift_finite(7, 0, 1)
    with pytest.raises(ValueError):
        lift_finite(5, 0, 0)
    with pytest.raises(ValueError):
        lift_finite(5, 0.0, -1.0)


def test_series_partial_sums_increase():
    prev = -1.0
    for R in (5, 10, 20, 40, 80, 160):
        cur = series_partial_sum(5, 0.3, 0.7, R)
        assert cur >= prev
        prev = cur


@pytest.mark.parametrize("D, x, y", [(5, 0.1, 0.8), (8, 0.25, 0.5), (12, -0.3, 1.1), (4, 0.1, 0.8), (5, 0.0, 2.0)])
def test_series_converges_to_finite(D, x, y):
    exact = lift_finite(D, x, y).value
    tol = 0.5
    ev = lift_series(D, x, y, tol)
    assert ev.method == "series" and ev.tail_bound < tol / 2
    assert abs(ev.value - exact) <= max(tol, 1e-2 * (1 + abs(exact)))


def test_series_raises_when_budget_exhausted():
    with pytest.raises(SeriesNotConverged):
        lift_series(5, 0.1, 0.8, tol=1e-9, R_max=200)
    with pytest.raises(ValueError):
        lift_series(5, 0.1, 0.8, tol=0)


def test_exact_and_float_value_agree():
    for D in (1, 4, 5, 8, 13, 17):
        for ev in (lift_cm_evaluation(D), lift_finite(D, Fraction(1, 3), Fraction(4, 5))):
            assert abs(ev.value - float(ev.exact.coeff) * math.pi) < 1e-12 * max(1.0, abs(ev.value))

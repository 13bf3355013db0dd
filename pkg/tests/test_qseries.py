from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetalift.qseries import (
    PowerSeries,
    euler_product,
    mock_f_coeffs,
    mock_omega_coeffs,
    partitions,
    ps_inv,
    ps_mul,
    s_values,
    spt_values,
)

PREC = 12
coeffs = st.lists(st.integers(-20, 20), min_size=PREC, max_size=PREC)


def partitions_of(n, largest=None):
    """Every partition of n as a non-increasing tuple (brute force)."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - k, k):
            yield (k,) + rest


def spt_brute(n):
    return sum(lam.count(lam[-1]) for lam in partitions_of(n)) if n else 0


def series_from_products(prec, numer_factors, denom_factors, shift=0):
    """q^shift * prod(1 + s q^k) / prod(1 + s q^k) computed with ps_inv."""
    num = PowerSeries.one(prec)
    for k, s in numer_factors:
        num = num * PowerSeries.one(prec).mul_one_minus_qn(k, s)
    den = PowerSeries.one(prec)
    for k, s in denom_factors:
        den = den * PowerSeries.one(prec).mul_one_minus_qn(k, s)
    return (num * ps_inv(den)).shift(shift)


# -- PowerSeries arithmetic ---------------------------------------------------------


@given(coeffs, coeffs)
def test_mul_commutes(a, b):
    A, B = PowerSeries(a), PowerSeries(b)
    assert A * B == B * A


@given(coeffs, coeffs, coeffs)
def test_mul_distributes(a, b, c):
    A, B, C = PowerSeries(a), PowerSeries(b), PowerSeries(c)
    assert A * (B + C) == A * B + A * C


@given(coeffs, coeffs, coeffs)
def test_mul_associates(a, b, c):
    A, B, C = PowerSeries(a), PowerSeries(b), PowerSeries(c)
    assert (A * B) * C == A * (B * C)


@given(coeffs)
def test_inverse(a):
    A = PowerSeries(a)
    if a[0] == 0:
        with pytest.raises(ZeroDivisionError):
            ps_inv(A)
        return
    prod = A * ps_inv(A)
    assert prod == PowerSeries.one(PREC)


@given(coeffs, st.integers(1, 6), st.sampled_from([-1, 1]))
def test_mul_and_div_by_binomial_are_inverse(a, n, sign):
    A = PowerSeries(a)
    assert A.mul_one_minus_qn(n, sign).div_one_minus_qn(n, sign) == A
    binom = PowerSeries.one(PREC).mul_one_minus_qn(n, sign)
    assert A.mul_one_minus_qn(n, sign) == ps_mul(A, binom)


@given(coeffs)
def test_sub_and_neg(a):
    A = PowerSeries(a)
    assert A - A == PowerSeries([0] * PREC)
    assert -A == A.scale(-1)


def test_shift_and_substitute():
    A = PowerSeries([1, 2, 3])
    assert A.shift(1) == PowerSeries([0, 1, 2])
    assert A.substitute_power(2) == PowerSeries([1, 0, 2, 0, 3, 0])
    assert PowerSeries.monomial(2, 4, 5) == PowerSeries([0, 0, 5, 0])


def test_precision_is_enforced():
    A = PowerSeries([1, 2], prec=4)
    assert A[3] == 0
    with pytest.raises(IndexError):
        A[4]
    assert (A + PowerSeries([1])).prec == 1


def test_inverse_keeps_fractions():
    inv = ps_inv(PowerSeries([2, 1, 0, 0]))
    assert inv.coeffs == [Fraction(1, 2), Fraction(-1, 4), Fraction(1, 8), Fraction(-1, 16)]


# -- partition statistics ----------------------------------------------------------


def test_euler_pentagonal():
    e = euler_product(40)
    nonzero = {n: c for n, c in enumerate(e.coeffs) if c}
    pent = {}
    for k in range(-6, 7):
        g = k * (3 * k - 1) // 2
        if g <= 40:
            pent[g] = (-1) ** k
    assert nonzero == pent


def test_partitions_is_inverse_of_euler_product():
    assert PowerSeries(partitions(80)) == ps_inv(euler_product(80))


def test_partitions_brute_force():
    p = partitions(30)
    assert p[:11] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert all(p[n] == sum(1 for _ in partitions_of(n)) for n in range(31))
    assert partitions(100)[100] == 190569292


def test_spt_brute_force():
    spt = spt_values(25)
    assert spt[:7] == [0, 1, 3, 5, 10, 14, 26]
    assert all(spt[n] == spt_brute(n) for n in range(26))


def test_s_values():
    s = s_values(3)
    assert s[0] == Fraction(-1, 12)
    assert s[1] == 1 + Fraction(23, 12)
    assert s[2] == 3 + Fraction(47 * 2, 12)


def test_negative_limits_rejected():
    for fn in (partitions, spt_values, mock_f_coeffs, mock_omega_coeffs):
        with pytest.raises(ValueError):
            fn(-1)


# -- mock theta functions ------------------------------------------------------------


def test_mock_f_initial_coefficients():
    assert mock_f_coeffs(10) == [1, 1, -2, 3, -3, 3, -5, 7, -6, 6, -10]


def test_mock_omega_initial_coefficients():
    assert mock_omega_coeffs(10) == [1, 2, 3, 4, 6, 8, 10, 14, 18, 22, 29]


def test_mock_f_via_ps_inv():
    prec = 60
    total = PowerSeries([0] * prec)
    n = 0
    while n * n < prec:
        total = total + series_from_products(prec, [], [(k, 1) for k in range(1, n + 1)] * 2, n * n)
        n += 1
    assert total.coeffs == mock_f_coeffs(prec - 1)


def test_mock_omega_via_ps_inv():
    prec = 60
    total = PowerSeries([0] * prec)
    n = 0
    while 2 * n * (n + 1) < prec:
        den = [(2 * k + 1, -1) for k in range(n + 1)] * 2
        total = total + series_from_products(prec, [], den, 2 * n * (n + 1))
        n += 1
    assert total.coeffs == mock_omega_coeffs(prec - 1)

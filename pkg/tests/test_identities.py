import pickle
from dataclasses import replace
from fractions import Fraction
from math import isqrt

import pytest

from thetalift import identities as ids
from thetalift.arith import divisors, sigma
from thetalift.quadforms import hurwitz, level_hurwitz


def min_sum_oracle(m):
    return sum(min(a, m // a) for a in range(1, m + 1) if m % a == 0)


@pytest.mark.parametrize("m", range(1, 41))
def test_hurwitz_kronecker_against_direct_hurwitz(m):
    rep = ids.hurwitz_kronecker(m)
    direct = sum(hurwitz(4 * m - r * r) for r in range(-isqrt(4 * m), isqrt(4 * m) + 1))
    assert rep.lhs == direct
    assert rep.rhs == 2 * sigma(m) - min_sum_oracle(m)
    assert rep.passed and rep.residual == 0


def test_hurwitz_kronecker_m1():
    # H(4) + 2 H(3) + 2 H(0) = 1/2 + 2/3 - 1/6 = 1
    assert ids.hurwitz_kronecker(1).lhs == 1


def test_corollary_small():
    for D in range(1, 120):
        if D % 4 in (0, 1):
            assert ids.corollary_D(D).passed, D
    with pytest.raises(ValueError):
        ids.corollary_D(6)


@pytest.mark.parametrize("N", [1, 2, 3, 5, 6])
def test_level_relation_direct(N):
    for m in range(1, 8):
        rep = ids.level_relation(N, m)
        R = isqrt(4 * N * m)
        direct = sum(level_hurwitz(N, 4 * N * m - r * r, r) for r in range(-R, R + 1))
        assert rep.lhs == direct
        assert rep.passed, (N, m)


def test_level_relation_rejects_non_squarefree():
    with pytest.raises(ValueError):
        ids.level_relation(4, 1)


def test_parity_relations_sum_to_full():
    for m in range(1, 80):
        even, odd = ids.parity_even(m), ids.parity_odd(m)
        assert even.passed and odd.passed, m
        full = ids.hurwitz_kronecker(m)
        assert even.lhs + odd.lhs == full.lhs


def test_parity_rejects_bad_parity():
    with pytest.raises(ValueError):
        ids.parity_relation(3, "both")


def test_spt_relation_m1():
    rep = ids.spt_relation(1)
    assert rep.lhs == rep.rhs == 6


def test_spt_relation_range():
    assert all(ids.spt_relation(m).passed for m in range(1, 60))


@pytest.mark.parametrize("D", ids.ANISOTROPIC_DISCRIMINANTS)
def test_anisotropic_relation(D):
    for m in range(1, 20):
        assert ids.anisotropic_relation(D, m).passed, (D, m)


def test_anisotropic_boundary_case():
    # m = 5, D = 5 involves lam = sqrt(5) on the edge of the unit window
    assert ids.anisotropic_relation(5, 5).passed


def test_anisotropic_rejects_other_D():
    with pytest.raises(ValueError):
        ids.anisotropic_relation(24, 1)


# -- mock theta ---------------------------------------------------------------------


def test_mock_theta_rhs_m1():
    assert ids.mock_divisor_sum(1) == -3
    assert ids.mock_theta_relation(1).rhs == -51


def test_mock_theta_literal_lhs_m1():
    f_sum, w_sum, _ = ids.mock_theta_sides(1, ids.LITERAL_CONVENTION)
    assert (f_sum, w_sum) == (-8, -16)
    assert ids.mock_theta_relation(1).lhs == -72


def test_convention_space():
    space = ids.convention_space()
    assert len(space) == 32
    assert len({c.key() for c in space}) == 32
    assert ids.LITERAL_CONVENTION in space


def test_e_branch_is_redundant():
    for conv in ids.convention_space():
        flipped = replace(conv, e_branch=-1)
        for m in range(1, 15):
            assert ids.mock_theta_relation(m, conv).lhs == ids.mock_theta_relation(m, flipped).lhs


def test_root_of_unity_rational():
    assert ids.root_of_unity_rational(0, 24) == 1
    assert ids.root_of_unity_rational(12, 24) == -1
    assert ids.root_of_unity_rational(-36, 24) == -1
    with pytest.raises(ids.NonRealSummand):
        ids.root_of_unity_rational(1, 4)


def test_literal_lhs_is_a_divisor_combination():
    # lhs = -48 sigma(m) + 8 * divsum(m): the divisor sum carries an extra factor 8
    for m in range(1, 60):
        lhs = ids.mock_theta_relation(m).lhs
        assert lhs == -48 * sigma(m) + 8 * ids.mock_divisor_sum(m)


def test_convention_search_outcome():
    result = ids.convention_search(m_max=40)
    assert result.status == "nonconformance"
    assert result.convention is None
    assert result.passing == []
    assert len(result.residuals) == 32
    fit = result.linear_fits[ids.LITERAL_CONVENTION.key()]
    assert (fit["alpha"], fit["beta"]) == (-48, 8)
    with pytest.raises(ValueError):
        ids.convention_search(m_max=5)


def test_mock_divisor_sum_oracle():
    for m in range(1, 100):
        total = Fraction(0)
        for d in divisors(m):
            e = Fraction(m, d)
            for x, y in ((d, 6 * e), (2 * d, 3 * e)):
                total += (1 if x > y else -1 if x < y else 0) * min(x, y)
        assert ids.mock_divisor_sum(m) == total


def test_registry_pickles():
    for name, fn in ids.IDENTITIES.items():
        assert pickle.loads(pickle.dumps(fn)) is fn


def test_level_one_equals_hurwitz_kronecker():
    for m in range(1, 101):
        level, plain = ids.level_relation(1, m), ids.hurwitz_kronecker(m)
        assert (level.lhs, level.rhs) == (plain.lhs, plain.rhs)

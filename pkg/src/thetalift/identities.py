"""Executable class number and mock theta recurrences.

Each check returns an :class:`IdentityReport` carrying both sides as exact
``Fraction`` values. No floating point is used on this path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable

from .arith import (
    divisors,
    is_discriminant,
    is_squarefree,
    kronecker,
    l_chi_minus1,
    l_value_minus1,
    sigma,
    sigma1_ext,
    twisted_divisor_sum,
)
from .quadforms import LevelHurwitzTable, hurwitz_cache, hurwitz_sum, region_sum
from .qseries import mock_f_coeffs, mock_omega_coeffs, s_values
from .realquad import unit_trace_sum

ANISOTROPIC_DISCRIMINANTS = (5, 8, 12, 13, 17, 21)


@dataclass
class IdentityReport:
    name: str
    params: dict
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    @property
    def residual(self) -> Fraction:
        return self.lhs - self.rhs


def sgn(x) -> int:
    return (x > 0) - (x < 0)


def _min_divisor_sum(m: int) -> int:
    return sum(min(d, m // d) for d in divisors(m))


# -- Hurwitz class number relations -------------------------------------------


def hurwitz_kronecker(m: int) -> IdentityReport:
    """sum_r H(4m - r^2) = 2 sigma(m) - sum_{ab=m} min(a, b)."""
    if m < 1:
        raise ValueError("m must be positive")
    H = hurwitz_cache(4 * m)
    R = isqrt(4 * m)
    lhs = sum((H(4 * m - r * r) for r in range(-R, R + 1)), Fraction(0))
    rhs = Fraction(2 * sigma(m) - _min_divisor_sum(m))
    return IdentityReport("hurwitz-kronecker", {"m": m}, lhs, rhs)


def corollary_D(D: int) -> IdentityReport:
    """sum_{x = D (2)} H(D - x^2 - y^2) = -5 L_D(-1) + sum_{a+c>0>a} (a+c) - [D square](6D+1)/12."""
    if D <= 0 or not is_discriminant(D):
        raise ValueError(f"expected a positive discriminant, got {D}")
    lhs = hurwitz_sum(D)
    rhs = -5 * l_value_minus1(D) + region_sum(D, 0, 1)
    if isqrt(D) ** 2 == D:
        rhs -= Fraction(6 * D + 1, 12)
    return IdentityReport("corollary", {"D": D}, lhs, rhs)


_LEVEL_TABLES: dict[int, LevelHurwitzTable] = {}


def level_table(N: int, limit: int) -> LevelHurwitzTable:
    t = _LEVEL_TABLES.get(N)
    if t is None or t.limit < limit:
        t = LevelHurwitzTable(N, max(limit, 2 * t.limit if t else 0))
        _LEVEL_TABLES[N] = t
    return t


def level_relation(N: int, m: int) -> IdentityReport:
    """sum_r H_r(4Nm - r^2) = 2 sigma(N) sigma(m) - sum_{d|N} sum_{ab=m} min(ad, (N/d) b)."""
    if N < 1 or not is_squarefree(N):
        raise ValueError(f"level N must be squarefree and positive, got {N}")
    if m < 1:
        raise ValueError("m must be positive")
    T = level_table(N, 4 * N * m)
    R = isqrt(4 * N * m)
    lhs = sum((T(4 * N * m - r * r, r) for r in range(-R, R + 1)), Fraction(0))
    rhs = 2 * sigma(N) * sigma(m) - sum(
        min(a * d, (N // d) * (m // a)) for d in divisors(N) for a in divisors(m)
    )
    return IdentityReport("level", {"N": N, "m": m}, lhs, Fraction(rhs))


def _signed_factor_pairs(m: int):
    for d in divisors(m):
        e = m // d
        yield d, e
        yield -d, -e


def parity_relation(m: int, parity: str) -> IdentityReport:
    """Class number sums restricted to even or odd r.

    The quadratic Diophantine sums are enumerated through m = d e:
    b^2 - a^2 = (b+a)(b-a) with d = e (mod 2), and
    b^2 + b - a^2 - a = (b-a)(b+a+1) with d, e of opposite parity.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    H = hurwitz_cache(4 * m)
    R = isqrt(4 * m)
    want = 0 if parity == "even" else 1
    lhs = sum((H(4 * m - r * r) for r in range(-R, R + 1) if r % 2 == want), Fraction(0))
    s1, s2, s4 = sigma1_ext(m), sigma1_ext(Fraction(m, 2)), sigma1_ext(Fraction(m, 4))
    same = want == 0
    dio = sum(min(abs(d), abs(e)) for d, e in _signed_factor_pairs(m) if ((d - e) % 2 == 0) == same)
    if parity == "even":
        rhs = Fraction(4, 3) * s1 - 2 * s2 + Fraction(8, 3) * s4 - Fraction(dio, 2)
    else:
        rhs = Fraction(2, 3) * s1 + 2 * s2 - Fraction(8, 3) * s4 - Fraction(dio, 2)
    return IdentityReport(f"parity-{parity}", {"m": m}, lhs, rhs)


def parity_even(m: int) -> IdentityReport:
    return parity_relation(m, "even")


def parity_odd(m: int) -> IdentityReport:
    return parity_relation(m, "odd")


# -- spt ------------------------------------------------------------------------

_S_TABLE: list[Fraction] = []


def _s(n: int) -> Fraction:
    global _S_TABLE
    if n >= len(_S_TABLE):
        _S_TABLE = s_values(max(2 * n, 64))
    return _S_TABLE[n]


def spt_relation(m: int) -> IdentityReport:
    """sum_r (12/r) s(m - (r^2-1)/24) = 4 sigma(m) - 2 sum_{d|m} (min(6d, m/d) - min(3d, 2m/d))."""
    if m < 1:
        raise ValueError("m must be positive")
    R = isqrt(24 * m + 1)
    lhs = Fraction(0)
    for r in range(-R, R + 1):
        if (r * r - 1) % 24:
            continue
        idx = m - (r * r - 1) // 24
        if idx >= 0:
            lhs += kronecker(12, r) * _s(idx)
    rhs = 4 * sigma(m) - 2 * sum(min(6 * d, m // d) - min(3 * d, 2 * m // d) for d in divisors(m))
    return IdentityReport("spt", {"m": m}, lhs, Fraction(rhs))


# -- real quadratic --------------------------------------------------------------


def anisotropic_relation(D: int, m: int) -> IdentityReport:
    """sum_r H(4m - D r^2) = -sigma^(D)(Dm) / (6 L(-1, chi_D)) - sum_{R(m)} tr(lam/(eps0 - 1))."""
    if D not in ANISOTROPIC_DISCRIMINANTS:
        raise ValueError(f"D must be one of {ANISOTROPIC_DISCRIMINANTS}, got {D}")
    if m < 1:
        raise ValueError("m must be positive")
    H = hurwitz_cache(4 * m)
    R = isqrt(4 * m // D)
    lhs = sum((H(4 * m - D * r * r) for r in range(-R, R + 1)), Fraction(0))
    rhs = -Fraction(twisted_divisor_sum(D, D * m)) / (6 * l_chi_minus1(D)) - unit_trace_sum(D, m)
    return IdentityReport("anisotropic", {"D": D, "m": m}, lhs, rhs)


# -- Ramanujan's third order mock theta functions ---------------------------------


class NonRealSummand(ArithmeticError):
    """A root of unity in the mock theta sum is not a real rational number."""


INDEX_VARIANTS = ("omega", "half")


@dataclass(frozen=True)
class MockThetaConvention:
    """One reading of the f/omega recurrence.

    parity_f, parity_omega: sign s with chi(-r) = s chi(r) for the characters
        (-12/.) and (-3/.) at negative r; -1 is the Kronecker symbol itself.
    e_branch: sign of the exponent in e(+-(r^2-4)/24).
    index_variant: "omega" reads a_omega(2m - (r^2+8)/12) in omega's own
        variable, "half" reads the same index in q^(1/2) (odd indices vanish).
    sum_signs: global signs of the f-sum and the omega-sum.
    """

    parity_f: int = -1
    parity_omega: int = -1
    e_branch: int = 1
    index_variant: str = "omega"
    sum_signs: tuple[int, int] = (1, 1)

    def key(self) -> str:
        s1, s2 = self.sum_signs
        return (
            f"pf={self.parity_f:+d},pw={self.parity_omega:+d},e={self.e_branch:+d},"
            f"idx={self.index_variant},signs=({s1:+d},{s2:+d})"
        )

    def as_dict(self) -> dict:
        return {
            "parity_f": self.parity_f,
            "parity_omega": self.parity_omega,
            "e_branch": self.e_branch,
            "index_variant": self.index_variant,
            "sum_signs": list(self.sum_signs),
        }


LITERAL_CONVENTION = MockThetaConvention()


def convention_space() -> list[MockThetaConvention]:
    """The 32 conventions searched.

    e((r^2-4)/24) is evaluated only where (r^2-4)/24 lies in (1/2)Z, so it is
    +-1 and e_branch = -1 duplicates e_branch = +1; it is held at +1.
    """
    out = []
    for pf, pw, idx, s1, s2 in itertools.product((-1, 1), (-1, 1), INDEX_VARIANTS, (1, -1), (1, -1)):
        out.append(MockThetaConvention(pf, pw, 1, idx, (s1, s2)))
    return out


def root_of_unity_rational(num: int, den: int) -> Fraction:
    """e(num/den) = exp(2 pi i num/den) when it is a real rational number."""
    t = Fraction(num, den) % 1
    if t == 0:
        return Fraction(1)
    if t == Fraction(1, 2):
        return Fraction(-1)
    raise NonRealSummand(f"e({num}/{den}) is not real")


def _char(D: int, r: int, parity: int) -> int:
    return kronecker(D, r) if r >= 0 else parity * kronecker(D, -r)


def _mock_coeff(coeffs_fn: Callable[[int], list[int]], cache: dict, n: int) -> int:
    table = cache.get("t")
    if table is None or n >= len(table):
        table = coeffs_fn(max(2 * n, 64))
        cache["t"] = table
    return table[n]


_F_CACHE: dict = {}
_OMEGA_CACHE: dict = {}


def a_f(n: int) -> int:
    return 0 if n < 0 else _mock_coeff(mock_f_coeffs, _F_CACHE, n)


def a_omega(n: int) -> int:
    return 0 if n < 0 else _mock_coeff(mock_omega_coeffs, _OMEGA_CACHE, n)


def mock_theta_sides(m: int, conv: MockThetaConvention) -> tuple[Fraction, Fraction, Fraction]:
    """(f-sum, omega-sum, rhs) before the global signs and the factor 4 are applied."""
    R = isqrt(24 * m + 1) + 1
    f_sum = Fraction(0)
    for r in range(-R, R + 1):
        if (r * r - 1) % 24:
            continue
        idx = m - (r * r - 1) // 24
        if idx >= 0:
            f_sum += _char(-12, r, conv.parity_f) * r * a_f(idx)
    w_sum = Fraction(0)
    R = isqrt(24 * m) + 1
    for r in range(-R, R + 1):
        if (r * r - 4) % 12:
            continue
        idx = 2 * m - (r * r + 8) // 12
        if conv.index_variant == "half":
            if idx % 2:
                continue
            idx //= 2
        if idx < 0:
            continue
        ev = root_of_unity_rational(conv.e_branch * (r * r - 4), 24)
        w_sum += ev * _char(-3, r, conv.parity_omega) * r * a_omega(idx)
    return f_sum, w_sum, Fraction(-48 * sigma(m) + mock_divisor_sum(m))


def mock_divisor_sum(m: int) -> int:
    """sum_{d|m} sgn(d - 6m/d) min(d, 6m/d) + sgn(2d - 3m/d) min(2d, 3m/d)."""
    total = Fraction(0)
    for d in divisors(m):
        e = Fraction(m, d)
        total += sgn(d - 6 * e) * min(d, 6 * e) + sgn(2 * d - 3 * e) * min(2 * d, 3 * e)
    assert total.denominator == 1
    return int(total)


def mock_theta_relation(m: int, conv: MockThetaConvention = LITERAL_CONVENTION) -> IdentityReport:
    """The f/omega recurrence under one convention; exact both sides."""
    if m < 1:
        raise ValueError("m must be positive")
    f_sum, w_sum, rhs = mock_theta_sides(m, conv)
    s1, s2 = conv.sum_signs
    lhs = s1 * f_sum + 4 * s2 * w_sum
    return IdentityReport("mock-theta", {"m": m, "convention": conv.key()}, lhs, rhs)


@dataclass
class ConventionSearchResult:
    status: str  # "found" or "nonconformance"
    m_max: int
    convention: MockThetaConvention | None
    reports: list[IdentityReport]
    residuals: dict[str, list[Fraction]] = field(default_factory=dict)
    linear_fits: dict[str, dict] = field(default_factory=dict)

    @property
    def passing(self) -> list[str]:
        return [k for k, res in self.residuals.items() if all(r == 0 for r in res)]


def _linear_fit(m_max: int, conv: MockThetaConvention) -> dict | None:
    """Solve lhs(m) = alpha sigma(m) + beta divsum(m) from m = 1, 2 and test it up to m_max."""
    l1, l2 = (mock_theta_relation(m, conv).lhs for m in (1, 2))
    s1, s2 = sigma(1), sigma(2)
    d1, d2 = mock_divisor_sum(1), mock_divisor_sum(2)
    det = s1 * d2 - s2 * d1
    alpha = Fraction(l1 * d2 - l2 * d1, det)
    beta = Fraction(s1 * l2 - s2 * l1, det)
    for m in range(1, m_max + 1):
        if mock_theta_relation(m, conv).lhs != alpha * sigma(m) + beta * mock_divisor_sum(m):
            return None
    return {"alpha": alpha, "beta": beta, "verified_up_to": m_max}


def convention_search(m_max: int = 100, probe: int = 10) -> ConventionSearchResult:
    """Test every convention for m <= probe; re-verify a unique survivor up to m_max.

    Without a unique survivor the result records lhs - rhs for every
    convention and m <= probe, plus, per convention, whether the lhs is
    exactly alpha sigma_1(m) + beta divsum(m) for m <= m_max.
    """
    if m_max < probe:
        raise ValueError(f"m_max must be at least {probe}")
    residuals = {}
    for conv in convention_space():
        residuals[conv.key()] = [mock_theta_relation(m, conv).residual for m in range(1, probe + 1)]
    passing = [c for c in convention_space() if all(r == 0 for r in residuals[c.key()])]
    if len(passing) == 1:
        conv = passing[0]
        reports = [mock_theta_relation(m, conv) for m in range(1, m_max + 1)]
        status = "found" if all(r.passed for r in reports) else "nonconformance"
        return ConventionSearchResult(status, m_max, conv, reports, residuals)
    fits = {}
    for conv in convention_space():
        fit = _linear_fit(m_max, conv)
        if fit is not None:
            fits[conv.key()] = fit
    reports = [mock_theta_relation(m, LITERAL_CONVENTION) for m in range(1, probe + 1)]
    return ConventionSearchResult("nonconformance", m_max, None, reports, residuals, fits)


# -- registry used by the CLI ------------------------------------------------------

IDENTITIES: dict[str, Callable[..., IdentityReport]] = {
    "hurwitz-kronecker": hurwitz_kronecker,
    "corollary": corollary_D,
    "level": level_relation,
    "parity-even": parity_even,
    "parity-odd": parity_odd,
    "spt": spt_relation,
    "anisotropic": anisotropic_relation,
}

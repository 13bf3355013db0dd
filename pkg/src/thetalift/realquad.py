"""Real quadratic orders: norm-one units and unit-orbit representatives.

Elements of the order of discriminant D are stored as (u + v sqrt(D)) / 2 with
u = vD (mod 2), so products stay integral and every comparison below reduces
to integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .arith import is_discriminant


@dataclass(frozen=True)
class QuadFieldElement:
    u: int
    v: int
    D: int

    def __post_init__(self):
        if (self.u - self.v * self.D) % 2:
            raise ValueError(f"({self.u} + {self.v}*sqrt({self.D}))/2 is not in the order")

    @property
    def trace(self) -> int:
        return self.u

    @property
    def norm(self) -> int:
        return (self.u * self.u - self.D * self.v * self.v) // 4

    def conj(self) -> "QuadFieldElement":
        return QuadFieldElement(self.u, -self.v, self.D)

    def __mul__(self, other: "QuadFieldElement") -> "QuadFieldElement":
        if self.D != other.D:
            raise ValueError("elements of different orders")
        u = (self.u * other.u + self.D * self.v * other.v) // 2
        v = (self.u * other.v + self.v * other.u) // 2
        return QuadFieldElement(u, v, self.D)

    def __neg__(self) -> "QuadFieldElement":
        return QuadFieldElement(-self.u, -self.v, self.D)

    def sign(self) -> int:
        """Sign of the real number (u + v sqrt(D))/2 under the embedding sqrt(D) > 0."""
        u, vD = self.u, self.v
        if vD == 0:
            return (u > 0) - (u < 0)
        if u == 0:
            return (vD > 0) - (vD < 0)
        if (u > 0) == (vD > 0):
            return 1 if u > 0 else -1
        # opposite signs: compare u^2 with D v^2
        cmp = u * u - self.D * vD * vD
        return ((u > 0) - (u < 0)) if cmp > 0 else -((u > 0) - (u < 0))

    def __float__(self) -> float:
        return (self.u + self.v * self.D**0.5) / 2

    def __str__(self) -> str:
        return f"({self.u} + {self.v}*sqrt({self.D}))/2"


def pairing(lam: QuadFieldElement, mu: QuadFieldElement) -> int:
    """The trace form (lam, mu) = tr(lam * mu')."""
    return (lam * mu.conj()).trace


def _check_nonsquare(D: int) -> None:
    if D <= 0 or not is_discriminant(D) or isqrt(D) ** 2 == D:
        raise ValueError(f"expected a non-square positive discriminant, got {D}")


@lru_cache(maxsize=None)
def fundamental_unit_norm1(D: int) -> QuadFieldElement:
    """Smallest unit > 1 of norm +1: minimal v > 0 with u^2 - D v^2 = 4."""
    _check_nonsquare(D)
    v = 1
    while True:
        u2 = D * v * v + 4
        u = isqrt(u2)
        if u * u == u2:
            return QuadFieldElement(u, v, D)
        v += 1


def r_set(D: int, m: int) -> list[QuadFieldElement]:
    """Representatives lam > 0 of norm -m, one per orbit of the norm-one units.

    With y = eps0 the window is (lam, y) < 0 <= (lam eps0, y), which for
    lam > 0 > lam' is sqrt(m) <= lam < sqrt(m) eps0. Writing lam' = -m/lam,
    v sqrt(D) = lam - lam' lies in [2 sqrt(m), sqrt(m)(eps0 + 1/eps0)); the
    scan over v is widened by one on each side and then decided exactly.
    """
    _check_nonsquare(D)
    if m < 1:
        raise ValueError("m must be positive")
    eps = fundamental_unit_norm1(D)
    # eps0 + 1/eps0 = tr(eps0) = eps.u
    vmin = max(1, isqrt(4 * m // D) - 1)
    vmax = isqrt(m * eps.u * eps.u // D) + 2
    out = []
    for v in range(vmin, vmax + 1):
        u2 = D * v * v - 4 * m
        if u2 < 0:
            continue
        u0 = isqrt(u2)
        if u0 * u0 != u2:
            continue
        for u in {u0, -u0}:
            if (u - v * D) % 2:
                continue
            lam = QuadFieldElement(u, v, D)
            if lam.sign() <= 0:
                continue
            if in_window(lam, eps):
                out.append(lam)
    return sorted(out, key=lambda e: (e.v, e.u))


def in_window(lam: QuadFieldElement, eps: QuadFieldElement) -> bool:
    """(lam, y) < 0 <= (lam eps, y) with y = eps."""
    return pairing(lam, eps) < 0 <= pairing(lam * eps, eps)


def unit_trace_sum(D: int, m: int) -> Fraction:
    """sum over r_set(D, m) of tr(lam / (eps0 - 1))."""
    eps = fundamental_unit_norm1(D)
    # lam/(eps-1) = lam (eps'-1) / N(eps-1), N(eps-1) = 2 - tr(eps)
    eps_conj_minus_one = QuadFieldElement(eps.u - 2, -eps.v, D)
    denom = 2 - eps.u
    total = sum((lam * eps_conj_minus_one).trace for lam in r_set(D, m))
    return Fraction(total, denom)

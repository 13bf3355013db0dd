"""Exact elementary number theory.

Divisor sums, Kronecker symbols, the Moebius function, the periodic Bernoulli
function, discriminant decompositions and Dirichlet L-values at s = -1.
Everything here works over ``int`` and ``fractions.Fraction``; nothing rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd, isqrt

Rational = Fraction


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` by trial division."""
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of ``n >= 1``."""
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def sigma(n: int, k: int = 1) -> int:
    """Divisor power sum sigma_k(n) for n >= 1 and k >= 0."""
    return sum(d**k for d in divisors(n))


def sigma1_ext(x) -> int:
    """sigma_1 extended to rationals: zero off the positive integers (and at 0)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError(f"sigma1_ext expects x >= 0, got {x}")
    if x.denominator != 1 or x == 0:
        return 0
    return sigma(x.numerator, 1)


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(abs(n)).values()) if n != 0 else False


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError(f"moebius expects n >= 1, got {n}")
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers a, n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor out powers of two from the bottom
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # now n odd positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def bernoulli2(x) -> Fraction:
    x = Fraction(x)
    return x * x - x + Fraction(1, 6)


def periodic_bernoulli2(x) -> Fraction:
    """The 1-periodic function agreeing with x^2 - x + 1/6 on [0, 1)."""
    x = Fraction(x)
    return bernoulli2(x - floor(x))


def is_discriminant(D: int) -> bool:
    return D % 4 in (0, 1)


def is_fundamental(D: int) -> bool:
    """True for 1 and for discriminants of quadratic fields."""
    if D == 1:
        return True
    if D == 0:
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


@dataclass(frozen=True)
class DiscriminantSplit:
    D: int
    D0: int
    f: int


def _check_positive_discriminant(D: int) -> None:
    if not isinstance(D, int) or D <= 0 or not is_discriminant(D):
        raise ValueError(f"expected a positive discriminant (D = 0, 1 mod 4), got {D!r}")


def fundamental_decomposition(D: int) -> DiscriminantSplit:
    """Write ``D = D0 * f**2`` with ``D0`` fundamental (``D0 = 1`` for squares)."""
    _check_positive_discriminant(D)
    # squarefree kernel, then fix the 2-part
    core, f = 1, 1
    for p, e in factorize(D).items():
        f *= p ** (e // 2)
        if e % 2:
            core *= p
    if core % 4 != 1:
        core *= 4
        f //= 2
    return DiscriminantSplit(D, core, f)


def _check_fundamental(D0: int) -> None:
    if not is_fundamental(D0):
        raise ValueError(f"{D0} is not a fundamental discriminant")


@lru_cache(maxsize=None)
def l_chi_minus1(D0: int) -> Fraction:
    """L(-1, chi_D0) = -B_{2,chi}/2 by the finite Bernoulli sum."""
    _check_fundamental(D0)
    k = abs(D0)
    b2chi = k * sum(
        (kronecker(D0, a) * bernoulli2(Fraction(a, k)) for a in range(1, k + 1)),
        Fraction(0),
    )
    return -b2chi / 2


@lru_cache(maxsize=None)
def l_value_minus1(D: int) -> Fraction:
    """L_D(-1) for a positive discriminant D = D0 f^2."""
    split = fundamental_decomposition(D)
    D0, f = split.D0, split.f
    correction = sum(
        moebius(d) * kronecker(D0, d) * d * sigma(f // d, 3) for d in divisors(f)
    )
    return l_chi_minus1(D0) * correction


def fd_constant_term(D: int) -> Fraction:
    """Constant Fourier coefficient of the weight -1/2 form q^-D + O(1)."""
    return -120 * l_value_minus1(D)


def prime_discriminant_split(D0: int) -> list[int]:
    """Prime discriminants (-4, +-8, p*) whose product is D0, sorted."""
    _check_fundamental(D0)
    if D0 == 1:
        return []
    parts: list[int] = []
    odd = abs(D0)
    while odd % 2 == 0:
        odd //= 2
    for p in factorize(odd) if odd > 1 else {}:
        parts.append(p if p % 4 == 1 else -p)
    rest = D0
    for q in parts:
        rest //= q
    if rest != 1:
        # remaining 2-part is one of -4, 8, -8
        if rest not in (-4, 8, -8):
            raise AssertionError(f"unexpected 2-part {rest} of {D0}")
        parts.append(rest)
    return sorted(parts)


def exact_divisor_discriminants(D0: int) -> list[int]:
    """All products of subsets of the prime-discriminant factors of D0."""
    out = [1]
    for q in prime_discriminant_split(D0):
        out += [m * q for m in out]
    return out


def twisted_divisor_sum(D0: int, n: int) -> int:
    """sum_{d | n} sum_{m || D0} chi_m(n/d) chi_{D0/m}(d) d."""
    if n < 1:
        raise ValueError(f"twisted_divisor_sum expects n >= 1, got {n}")
    total = 0
    ms = exact_divisor_discriminants(D0)
    for d in divisors(n):
        for m in ms:
            total += kronecker(m, n // d) * kronecker(D0 // m, d) * d
    return total


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", an integer or a finite decimal string exactly."""
    return Fraction(text.strip())


def gcd_all(*xs: int) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g

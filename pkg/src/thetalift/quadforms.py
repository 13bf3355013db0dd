"""Integral binary quadratic forms.

Reduction of positive definite forms, Hurwitz class numbers, class counting
for Gamma_0(N), and the finite sets of indefinite forms whose geodesics
enclose a given point of the upper half-plane.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, NamedTuple

import numpy as np

from .arith import is_discriminant, is_squarefree, sigma

Matrix = tuple[int, int, int, int]  # (p, r, q, s) for [[p, r], [q, s]]


class BinaryQF(NamedTuple):
    """The form a x^2 + b x y + c y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def act(self, g: Matrix) -> "BinaryQF":
        """The form (x, y) -> Q(g (x, y)^T)."""
        p, r, q, s = g
        a, b, c = self
        return BinaryQF(
            a * p * p + b * p * q + c * q * q,
            2 * a * p * r + b * (p * s + q * r) + 2 * c * q * s,
            a * r * r + b * r * s + c * s * s,
        )

    def __str__(self) -> str:
        return f"[{self.a},{self.b},{self.c}]"


def _mat_mul(g: Matrix, h: Matrix) -> Matrix:
    p, r, q, s = g
    p2, r2, q2, s2 = h
    return (p * p2 + r * q2, p * r2 + r * s2, q * p2 + s * q2, q * r2 + s * s2)


def is_reduced(Q: BinaryQF) -> bool:
    a, b, c = Q
    if not (abs(b) <= a <= c):
        return False
    if (abs(b) == a or a == c) and b < 0:
        return False
    return True


def reduce_negdisc(Q: BinaryQF) -> BinaryQF:
    """Gauss reduction of a positive definite form."""
    a, b, c = Q
    if b * b - 4 * a * c >= 0 or a <= 0:
        raise ValueError(f"{Q} is not positive definite")
    while True:
        # normalize: -a < b <= a
        if not (-a < b <= a):
            k = (a - b) // (2 * a)
            b, c = b + 2 * k * a, a * k * k + b * k + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return BinaryQF(a, b, c)


def reduced_forms(n: int) -> list[BinaryQF]:
    """All reduced positive definite forms of discriminant -n."""
    if n <= 0:
        raise ValueError(f"reduced_forms expects n > 0, got {n}")
    out = []
    if n % 4 not in (0, 3):
        return out
    for a in range(1, isqrt(n // 3) + 1):
        for b in range(-a + 1, a + 1):
            num = b * b + n
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            out.append(BinaryQF(a, b, c))
    return out


def reduced_forms_upto(limit: int) -> Iterator[BinaryQF]:
    """Every reduced positive definite form with 0 < -disc <= limit."""
    a = 1
    while 3 * a * a <= limit:
        for b in range(-a + 1, a + 1):
            c = a if b >= 0 else a + 1
            while 4 * a * c - b * b <= limit:
                yield BinaryQF(a, b, c)
                c += 1
        a += 1


def automorphism_order_psl(Q: BinaryQF) -> int:
    """Order of the stabilizer of a reduced form in PSL_2(Z)."""
    a, b, c = Q
    if a == b == c:
        return 3
    if b == 0 and a == c:
        return 2
    return 1


def automorphisms(Q: BinaryQF) -> list[Matrix]:
    """Representatives in SL_2(Z) of the PSL_2(Z)-stabilizer of a reduced form."""
    a, b, c = Q
    if a == b == c:
        g = (0, -1, 1, 1)
        return [(1, 0, 0, 1), g, _mat_mul(g, g)]
    if b == 0 and a == c:
        return [(1, 0, 0, 1), (0, -1, 1, 0)]
    return [(1, 0, 0, 1)]


def hurwitz_weight(Q: BinaryQF) -> Fraction:
    return Fraction(1, automorphism_order_psl(Q))


def hurwitz(n: int) -> Fraction:
    """Hurwitz class number H(n), with H(0) = -1/12."""
    if n < 0:
        raise ValueError(f"hurwitz expects n >= 0, got {n}")
    if n == 0:
        return Fraction(-1, 12)
    return sum((hurwitz_weight(Q) for Q in reduced_forms(n)), Fraction(0))


@dataclass
class HurwitzCache:
    """Table of H(n) for 0 <= n <= limit, built in one sweep over reduced forms."""

    limit: int
    values: list[Fraction] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if not self.values:
            self.values = _hurwitz_table(self.limit)

    def __call__(self, n: int) -> Fraction:
        """H(n), with negative arguments contributing 0."""
        if n < 0:
            return Fraction(0)
        if n > self.limit:
            raise IndexError(f"H({n}) beyond cache limit {self.limit}")
        return self.values[n]


def _hurwitz_table(limit: int) -> list[Fraction]:
    # accumulate in units of 1/6 to stay in integers
    sixths = [0] * (limit + 1)
    for Q in reduced_forms_upto(limit):
        sixths[-Q.discriminant] += 6 // automorphism_order_psl(Q)
    vals = [Fraction(s, 6) for s in sixths]
    vals[0] = Fraction(-1, 12)
    return vals


_CACHE: HurwitzCache | None = None


def hurwitz_cache(limit: int) -> HurwitzCache:
    """Shared Hurwitz table covering at least ``limit``."""
    global _CACHE
    if _CACHE is None or _CACHE.limit < limit:
        _CACHE = HurwitzCache(max(limit, 2 * (_CACHE.limit if _CACHE else 0), 256))
    return _CACHE


def hurwitz_sum(D: int) -> Fraction:
    """sum of H(D - x^2 - y^2) over x, y in Z with x = D mod 2."""
    if D <= 0 or not is_discriminant(D):
        raise ValueError(f"expected a positive discriminant, got {D}")
    H = hurwitz_cache(D)
    total = Fraction(0)
    x0 = D % 2
    for x in range(-isqrt(D), isqrt(D) + 1):
        if (x - x0) % 2:
            continue
        rest = D - x * x
        for y in range(-isqrt(rest), isqrt(rest) + 1):
            total += H(rest - y * y)
    return total


# -- Gamma_0(N) ---------------------------------------------------------------


def _p1_key(p: int, q: int, N: int) -> tuple[int, int]:
    """Canonical representative of (p : q) in P^1(Z/N)."""
    p, q = p % N, q % N
    best = None
    for u in range(1, N + 1):
        if gcd(u, N) != 1:
            continue
        cand = ((u * p) % N, (u * q) % N)
        if best is None or cand < best:
            best = cand
    return best if best is not None else (0, 0)


def _lift_to_sl2(p: int, q: int, N: int) -> Matrix:
    """A matrix in SL_2(Z) whose first column is congruent to (p, q) mod N."""
    if N == 1:
        return (1, 0, 0, 1)
    p = p % N or N
    q = q % N
    k = 0
    while gcd(p, q + k * N) != 1:
        k += 1
    q += k * N
    # extended gcd: p s - r q = 1
    g, s, t = _xgcd(p, q)
    assert g == 1
    return (p, -t, q, s)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        k, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


def psi(N: int) -> int:
    """Index of Gamma_0(N) in SL_2(Z)."""
    from .arith import factorize

    out = N
    for p in factorize(N):
        out = out // p * (p + 1)
    return out


@dataclass(frozen=True)
class CosetTable:
    """Representatives sigma with SL_2(Z) = disjoint union of sigma Gamma_0(N)."""

    N: int
    reps: tuple[Matrix, ...]

    def key(self, g: Matrix) -> tuple[int, int]:
        return _p1_key(g[0], g[2], self.N)

    def index(self, g: Matrix) -> int:
        return self._index[self.key(g)]

    @property
    def _index(self) -> dict[tuple[int, int], int]:
        cached = self.__dict__.get("_idx")
        if cached is None:
            cached = {self.key(g): i for i, g in enumerate(self.reps)}
            object.__setattr__(self, "_idx", cached)
        return cached


def coset_reps(N: int, twist: Matrix | None = None) -> CosetTable:
    """Coset representatives indexed by P^1(Z/N).

    ``twist``, an element of Gamma_0(N), is multiplied on the right of every
    representative; it yields a different but equivalent system.
    """
    if N < 1:
        raise ValueError(f"coset_reps expects N >= 1, got {N}")
    seen = set()
    reps = []
    for p in range(N):
        for q in range(N):
            if gcd(gcd(p, q), N) != 1:
                continue
            key = _p1_key(p, q, N)
            if key in seen:
                continue
            seen.add(key)
            g = _lift_to_sl2(p, q, N)
            if twist is not None:
                g = _mat_mul(g, twist)
            reps.append(g)
    if N == 1:
        reps = [twist or (1, 0, 0, 1)]
    return CosetTable(N, tuple(reps))


def _check_level(N: int) -> None:
    if N < 1 or not is_squarefree(N):
        raise ValueError(f"level N must be a squarefree positive integer, got {N}")


def _positive_class_weights(N: int, Q: BinaryQF, table: CosetTable) -> Iterator[tuple[BinaryQF, Fraction]]:
    """Gamma_0(N)-classes inside the SL_2(Z)-class of a reduced form Q.

    Yields one form per class with weight 1/|stabilizer in PGamma_0(N)|.
    The classes are the orbits of Aut(Q) on the cosets sigma Gamma_0(N).
    """
    auts = automorphisms(Q)
    if len(auts) == 1:
        for sigma_ in table.reps:
            yield Q.act(sigma_), Fraction(1)
        return
    done = set()
    for sigma_ in table.reps:
        i = table.index(sigma_)
        if i in done:
            continue
        orbit = {table.index(_mat_mul(g, sigma_)) for g in auts}
        done |= orbit
        stab = len(auts) // len(orbit)
        yield Q.act(sigma_), Fraction(1, stab)


def _positive_count(N: int, n: int, r: int, table: CosetTable) -> Fraction:
    """Weighted Gamma_0(N)-classes of positive definite forms in Q_{N,-n,r}."""
    total = Fraction(0)
    for Q in reduced_forms(n):
        for form, w in _positive_class_weights(N, Q, table):
            if form.a % N == 0 and (form.b - r) % (2 * N) == 0:
                total += w
    return total


def level_hurwitz(N: int, n: int, r: int, table: CosetTable | None = None) -> Fraction:
    """Level N Hurwitz class number H_r(n).

    Q_{N,-n,r} holds positive and negative definite forms; Q -> -Q maps the
    negative definite part with b = r onto the positive definite part with
    b = -r, so H_r(n) = (P_r(n) + P_{-r}(n)) / 2 with P the positive count.
    """
    _check_level(N)
    if n < 0:
        raise ValueError(f"level_hurwitz expects n >= 0, got {n}")
    if (r * r + n) % (4 * N):
        return Fraction(0)
    if n == 0:
        return Fraction(-sigma(N), 12) if r % (2 * N) == 0 else Fraction(0)
    table = table or coset_reps(N)
    return (_positive_count(N, n, r, table) + _positive_count(N, n, -r, table)) / 2


class LevelHurwitzTable:
    """H_r(n) for all 0 <= n <= limit and r mod 2N, built in one sweep."""

    def __init__(self, N: int, limit: int, table: CosetTable | None = None):
        _check_level(N)
        self.N = N
        self.limit = limit
        table = table or coset_reps(N)
        twoN = 2 * N
        pos: dict[int, list[Fraction]] = defaultdict(lambda: [Fraction(0)] * twoN)
        for Q in reduced_forms_upto(limit):
            n = -Q.discriminant
            for form, w in _positive_class_weights(N, Q, table):
                if form.a % N == 0:
                    pos[n][form.b % twoN] += w
        self._pos = pos

    def __call__(self, n: int, r: int) -> Fraction:
        N = self.N
        if n < 0 or (r * r + n) % (4 * N):
            return Fraction(0)
        if n == 0:
            return Fraction(-sigma(N), 12) if r % (2 * N) == 0 else Fraction(0)
        if n > self.limit:
            raise IndexError(f"H_r({n}) beyond table limit {self.limit}")
        row = self._pos.get(n)
        if row is None:
            return Fraction(0)
        return (row[r % (2 * N)] + row[-r % (2 * N)]) / 2


# -- indefinite forms and the upper half-plane ---------------------------------


def _check_pos_disc(D: int) -> None:
    if not isinstance(D, int) or D <= 0 or not is_discriminant(D):
        raise ValueError(f"expected a positive discriminant, got {D!r}")


def forms_in_region(D: int, x, y) -> list[BinaryQF]:
    """Forms [a,b,c] of discriminant D with a < 0 < a(x^2+y^2) + bx + c.

    These are the forms whose geodesic semicircle encloses z = x + iy. With
    a < 0 the condition reads |z - center|^2 < D/(4a^2), so |a| < sqrt(D)/(2y)
    and |2ax + b| < sqrt(D). Comparisons are exact for rational x, y.
    """
    _check_pos_disc(D)
    x, y = Fraction(x), Fraction(y)
    if y <= 0:
        raise ValueError("y must be positive")
    norm = x * x + y * y
    out = []
    # |a| y < sqrt(D)/2  <=>  4 a^2 y^2 < D
    a = -1
    while 4 * a * a * y * y < D:
        # |2ax + b| < sqrt(D): b in an open window around -2ax
        centre = -2 * a * x
        rad = math.isqrt(D) + 1
        lo = math.floor(centre) - rad
        hi = math.ceil(centre) + rad
        for b in range(lo, hi + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if a * norm + b * x + c > 0:
                out.append(BinaryQF(a, b, c))
        a -= 1
    return out


def region_sum(D: int, x, y) -> Fraction:
    """Sum of a(x^2+y^2) + bx + c over ``forms_in_region(D, x, y)``."""
    x, y = Fraction(x), Fraction(y)
    norm = x * x + y * y
    return sum((Q.a * norm + Q.b * x + Q.c for Q in forms_in_region(D, x, y)), Fraction(0))


def _bounded_arrays(D: int, x: float, y: float, R: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Integer arrays (a, b, c) of all disc-D forms with |az^2+bz+c| <= R (float test).

    Uses |az^2+bz+c|^2 = t^2 + D y^2 with t = a|z|^2 + bx + c, and for a != 0
    4a t = (b + 2ax)^2 + 4a^2 y^2 - D.
    """
    if R * R < D * y * y:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    tmax = math.sqrt(R * R - D * y * y)
    norm = x * x + y * y
    As, Bs, Cs = [], [], []
    slack = 1e-9 * (1 + R)
    amax = int((tmax + math.sqrt(tmax * tmax + D * y * y)) / (2 * y * y)) + 1
    for a in range(-amax, amax + 1):
        if a == 0:
            sq = isqrt(D)
            if sq * sq != D:
                continue
            for b in {sq, -sq}:
                lo = math.floor(-b * x - tmax) - 1
                hi = math.ceil(-b * x + tmax) + 1
                c = np.arange(lo, hi + 1, dtype=np.int64)
                keep = np.abs(b * x + c) <= tmax + slack
                c = c[keep]
                As.append(np.zeros_like(c))
                Bs.append(np.full_like(c, b))
                Cs.append(c)
            continue
        w2 = 4 * abs(a) * tmax + D - 4 * a * a * y * y
        if w2 < -slack:
            continue
        w = math.sqrt(max(w2, 0.0))
        lo = math.floor(-2 * a * x - w) - 1
        hi = math.ceil(-2 * a * x + w) + 1
        b = np.arange(lo, hi + 1, dtype=np.int64)
        b = b[((b * b - D) % (4 * a)) == 0]
        if b.size == 0:
            continue
        c = (b * b - D) // (4 * a)
        t = a * norm + b * x + c
        keep = np.abs(t) <= tmax + slack
        b, c = b[keep], c[keep]
        As.append(np.full_like(b, a))
        Bs.append(b)
        Cs.append(c)
    if not As:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    return np.concatenate(As), np.concatenate(Bs), np.concatenate(Cs)


def forms_bounded(D: int, x, y, R) -> list[BinaryQF]:
    """All disc-D forms with |a z^2 + b z + c| <= R at z = x + iy.

    The search box is float; membership is re-checked exactly via
    t^2 + D y^2 <= R^2 when x, y, R are rational.
    """
    _check_pos_disc(D)
    if R <= 0:
        raise ValueError("R must be positive")
    if y <= 0:
        raise ValueError("y must be positive")
    A, B, C = _bounded_arrays(D, float(x), float(y), float(R) * (1 + 1e-12) + 1e-12)
    forms = [BinaryQF(int(a), int(b), int(c)) for a, b, c in zip(A, B, C)]
    try:
        xq, yq, Rq = Fraction(x), Fraction(y), Fraction(R)
    except (TypeError, ValueError):
        return forms
    norm = xq * xq + yq * yq
    return [Q for Q in forms if (Q.a * norm + Q.b * xq + Q.c) ** 2 + D * yq * yq <= Rq * Rq]

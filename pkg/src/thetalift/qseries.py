"""Exact truncated power series in q.

Coefficients are ``int`` or ``Fraction``; no floats anywhere. Also houses the
coefficient generators for p(n), spt(n), s(n) and Ramanujan's third order
mock theta functions f(q) and omega(q).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence


class PowerSeries:
    """sum c[n] q^n for 0 <= n < prec, known exactly up to O(q^prec)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, prec: int | None = None):
        coeffs = list(coeffs)
        if prec is None:
            prec = len(coeffs)
        if prec < 0:
            raise ValueError("precision must be non-negative")
        coeffs = coeffs[:prec] + [0] * max(0, prec - len(coeffs))
        self.coeffs = coeffs

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    @classmethod
    def one(cls, prec: int) -> "PowerSeries":
        return cls([1], prec)

    @classmethod
    def monomial(cls, n: int, prec: int, c=1) -> "PowerSeries":
        out = [0] * prec
        if n < prec:
            out[n] = c
        return cls(out)

    def __getitem__(self, n: int):
        if not 0 <= n < self.prec:
            raise IndexError(f"coefficient {n} outside precision {self.prec}")
        return self.coeffs[n]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.prec == other.prec and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        terms = [f"{c}*q^{n}" for n, c in enumerate(self.coeffs) if c]
        return " + ".join(terms or ["0"]) + f" + O(q^{self.prec})"

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        p = min(self.prec, other.prec)
        return PowerSeries([self.coeffs[i] + other.coeffs[i] for i in range(p)])

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        p = min(self.prec, other.prec)
        return PowerSeries([self.coeffs[i] - other.coeffs[i] for i in range(p)])

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-c for c in self.coeffs])

    def scale(self, c) -> "PowerSeries":
        return PowerSeries([c * x for x in self.coeffs])

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        return ps_mul(self, other)

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by q^k (k >= 0), keeping the precision."""
        return PowerSeries([0] * k + self.coeffs[: self.prec - k], self.prec)

    def substitute_power(self, k: int) -> "PowerSeries":
        """A(q^k); precision grows to k * prec."""
        out = [0] * (self.prec * k)
        for n, c in enumerate(self.coeffs):
            out[n * k] = c
        return PowerSeries(out)

    def mul_one_minus_qn(self, n: int, sign: int = -1) -> "PowerSeries":
        """Multiply by (1 + sign q^n)."""
        c = self.coeffs
        out = c[:]
        for i in range(n, len(c)):
            out[i] += sign * c[i - n]
        return PowerSeries(out)

    def div_one_minus_qn(self, n: int, sign: int = -1) -> "PowerSeries":
        """Divide by (1 + sign q^n)."""
        out = self.coeffs[:]
        for i in range(n, len(out)):
            out[i] -= sign * out[i - n]
        return PowerSeries(out)


def ps_mul(A: PowerSeries, B: PowerSeries) -> PowerSeries:
    """Cauchy product truncated to the smaller precision."""
    p = min(A.prec, B.prec)
    a, b = A.coeffs, B.coeffs
    out = [0] * p
    for i in range(p):
        ai = a[i]
        if not ai:
            continue
        for j in range(p - i):
            out[i + j] += ai * b[j]
    return PowerSeries(out)


def ps_inv(A: PowerSeries) -> PowerSeries:
    """Multiplicative inverse; the constant term must be nonzero."""
    a = A.coeffs
    if not a or a[0] == 0:
        raise ZeroDivisionError("power series with zero constant term is not invertible")
    inv0 = Fraction(1) / a[0]
    out = [inv0]
    for n in range(1, A.prec):
        s = sum(a[k] * out[n - k] for k in range(1, n + 1))
        out.append(-s * inv0)
    if all(isinstance(c, int) or c.denominator == 1 for c in out):
        out = [int(c) for c in out]
    return PowerSeries(out)


def euler_product(limit: int) -> PowerSeries:
    """prod_{n >= 1} (1 - q^n) to O(q^(limit+1))."""
    s = PowerSeries.one(limit + 1)
    for n in range(1, limit + 1):
        s = s.mul_one_minus_qn(n)
    return s


@lru_cache(maxsize=8)
def _partitions(limit: int) -> tuple[int, ...]:
    p = [0] * (limit + 1)
    p[0] = 1
    for n in range(1, limit + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return tuple(p)


def partitions(limit: int) -> list[int]:
    """p(0), ..., p(limit) by Euler's pentagonal recurrence."""
    if limit < 0:
        raise ValueError("limit must be >= 0")
    return list(_partitions(limit))


@lru_cache(maxsize=8)
def _spt(limit: int) -> tuple[int, ...]:
    # sum_{n>=1} q^n/(1-q^n)^2 prod_{m>n} 1/(1-q^m);
    # tail_n = prod_{m>n} 1/(1-q^m) = P(q) prod_{m<=n} (1-q^m)
    prec = limit + 1
    tail = PowerSeries(partitions(limit))
    total = PowerSeries([0] * prec)
    for n in range(1, prec):
        tail = tail.mul_one_minus_qn(n)
        term = tail.div_one_minus_qn(n).div_one_minus_qn(n).shift(n)
        total = total + term
    return tuple(total.coeffs)


def spt_values(limit: int) -> list[int]:
    """spt(0), ..., spt(limit); spt(0) = 0."""
    if limit < 0:
        raise ValueError("limit must be >= 0")
    return list(_spt(limit))


def s_values(limit: int) -> list[Fraction]:
    """s(n) = spt(n) + (24n - 1) p(n) / 12."""
    p, spt = partitions(limit), spt_values(limit)
    return [spt[n] + Fraction((24 * n - 1) * p[n], 12) for n in range(limit + 1)]


@lru_cache(maxsize=8)
def _mock_f(limit: int) -> tuple[int, ...]:
    prec = limit + 1
    total = PowerSeries([0] * prec)
    denom_inv = PowerSeries.one(prec)  # 1 / prod_{k<=n} (1+q^k)^2
    n = 0
    while n * n < prec:
        if n:
            denom_inv = denom_inv.div_one_minus_qn(n, +1).div_one_minus_qn(n, +1)
        total = total + denom_inv.shift(n * n)
        n += 1
    return tuple(total.coeffs)


def mock_f_coeffs(limit: int) -> list[int]:
    """Coefficients of f(q) = sum_n q^(n^2) / (-q; q)_n^2."""
    if limit < 0:
        raise ValueError("limit must be >= 0")
    return list(_mock_f(limit))


@lru_cache(maxsize=8)
def _mock_omega(limit: int) -> tuple[int, ...]:
    prec = limit + 1
    total = PowerSeries([0] * prec)
    denom_inv = PowerSeries.one(prec)  # 1 / prod_{k<=n} (1 - q^(2k+1))^2
    n = 0
    while 2 * n * (n + 1) < prec:
        denom_inv = denom_inv.div_one_minus_qn(2 * n + 1).div_one_minus_qn(2 * n + 1)
        total = total + denom_inv.shift(2 * n * (n + 1))
        n += 1
    return tuple(total.coeffs)


def mock_omega_coeffs(limit: int) -> list[int]:
    """Coefficients of omega(q) = sum_n q^(2n(n+1)) / (q; q^2)_{n+1}^2."""
    if limit < 0:
        raise ValueError("limit must be >= 0")
    return list(_mock_omega(limit))


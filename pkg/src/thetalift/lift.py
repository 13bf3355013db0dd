"""Three evaluations of the theta lift Phi(f_D, z) on the upper half-plane.

``lift_finite`` uses the finite Fourier expansion, ``lift_series`` sums the
absolutely convergent series over all forms of discriminant D, and
``lift_cm_i`` gives the exact value at z = i through Hurwitz class numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .arith import is_discriminant, l_value_minus1, periodic_bernoulli2
from .quadforms import _bounded_arrays, hurwitz_sum, region_sum


class SeriesNotConverged(RuntimeError):
    """The shell-doubling series did not reach the tolerance below the R ceiling."""


@dataclass(frozen=True)
class PiMultiple:
    """The real number coeff * pi."""

    coeff: Fraction

    def __float__(self) -> float:
        return float(self.coeff) * math.pi

    def __str__(self) -> str:
        c = self.coeff
        if c == 1:
            return "π"
        return f"{c}π" if c.denominator == 1 else f"({c})π"


@dataclass(frozen=True)
class LiftEvaluation:
    D: int
    x: float
    y: float
    method: str
    value: float
    exact: PiMultiple | None = None
    tail_bound: float | None = None


def _check(D: int) -> None:
    if not isinstance(D, int) or D <= 0 or not is_discriminant(D):
        raise ValueError(f"expected a positive discriminant (D = 0, 1 mod 4), got {D!r}")


def _as_fraction(t) -> Fraction | None:
    if isinstance(t, (int, Fraction)):
        return Fraction(t)
    if isinstance(t, str):
        try:
            return Fraction(t)
        except ValueError:
            return None
    return None


def lift_finite(D: int, x, y) -> LiftEvaluation:
    """Finite Fourier expansion of Phi(f_D, x + iy).

    -(40 pi/y) L_D(-1) - (8 pi/y) sum_{a|z|^2+bx+c > 0 > a} (a|z|^2+bx+c)
    + [D square] (4 pi y D + (2 pi/y)(B2(sqrt(D) x) + B2(-sqrt(D) x)))

    Exact (a PiMultiple) when x and y are given as int, Fraction or decimal
    strings; floats are evaluated in floating point.
    """
    _check(D)
    xq, yq = _as_fraction(x), _as_fraction(y)
    sq = isqrt(D)
    square = sq * sq == D
    if xq is not None and yq is not None:
        if yq <= 0:
            raise ValueError("y must be positive")
        coeff = (-40 * l_value_minus1(D) - 8 * region_sum(D, xq, yq)) / yq
        if square:
            coeff += 4 * yq * D + 2 * (periodic_bernoulli2(sq * xq) + periodic_bernoulli2(-sq * xq)) / yq
        exact = PiMultiple(coeff)
        return LiftEvaluation(D, float(xq), float(yq), "finite", float(exact), exact)
    xf, yf = float(x), float(y)
    if yf <= 0:
        raise ValueError("y must be positive")
    value = -40 * math.pi / yf * float(l_value_minus1(D)) - 8 * math.pi / yf * _region_sum_float(D, xf, yf)
    if square:
        value += 4 * math.pi * yf * D + 2 * math.pi / yf * (_b2_float(sq * xf) + _b2_float(-sq * xf))
    return LiftEvaluation(D, xf, yf, "finite", value)


def _b2_float(t: float) -> float:
    t -= math.floor(t)
    return t * t - t + 1.0 / 6.0


def _region_sum_float(D: int, x: float, y: float) -> float:
    norm = x * x + y * y
    total = 0.0
    a = -1
    while 4 * a * a * y * y < D:
        centre = -2 * a * x
        rad = isqrt(D) + 1
        for b in range(math.floor(centre) - rad, math.ceil(centre) + rad + 1):
            num = b * b - D
            if (b - D) % 2 or num % (4 * a):
                continue
            t = a * norm + b * x + num // (4 * a)
            if t > 0:
                total += t
        a -= 1
    return total


def series_partial_sum(D: int, x: float, y: float, R: float) -> float:
    """4 * sum of sqrt(D) - (|t|/y) arcsin(y sqrt(D) / |az^2+bz+c|) over forms with |az^2+bz+c| <= R."""
    A, B, C = _bounded_arrays(D, x, y, R)
    if A.size == 0:
        return 0.0
    A, B, C = A.astype(float), B.astype(float), C.astype(float)
    t = A * (x * x + y * y) + B * x + C
    s = np.sqrt(t * t + D * y * y)
    rootD = math.sqrt(D)
    arg = np.clip(y * rootD / s, -1.0, 1.0)
    terms = rootD - np.abs(t) / y * np.arcsin(arg)
    return float(4.0 * math.fsum(terms))


def lift_series(
    D: int,
    x,
    y,
    tol: float,
    R0: float | None = None,
    R_max: float | None = None,
) -> LiftEvaluation:
    """Partial sums over |az^2+bz+c| <= R with R doubled until the change is below tol/2.

    Every summand is non-negative, so the partial sums increase with R.
    """
    _check(D)
    if tol <= 0:
        raise ValueError("tol must be positive")
    xf, yf = float(x), float(y)
    if yf <= 0:
        raise ValueError("y must be positive")
    rootD = math.sqrt(D)
    R = R0 if R0 is not None else 8 * rootD
    R_max = R_max if R_max is not None else 2**14 * rootD
    prev = series_partial_sum(D, xf, yf, R)
    while True:
        R *= 2
        if R > R_max:
            raise SeriesNotConverged(
                f"series for D={D} at z={xf}+{yf}i did not reach tol={tol} below R={R_max:g}"
            )
        cur = series_partial_sum(D, xf, yf, R)
        diff = cur - prev
        if abs(diff) < tol / 2:
            return LiftEvaluation(D, xf, yf, "series", cur, None, abs(diff))
        prev = cur


def lift_cm_i(D: int) -> PiMultiple:
    """Phi(f_D, i) = -80 pi L_D(-1) - 8 pi sum_{x = D (2)} H(D - x^2 - y^2)."""
    _check(D)
    return PiMultiple(-80 * l_value_minus1(D) - 8 * hurwitz_sum(D))


def lift_cm_evaluation(D: int) -> LiftEvaluation:
    exact = lift_cm_i(D)
    return LiftEvaluation(D, 0.0, 1.0, "cm", float(exact), exact)

"""Exact rational interval arithmetic for certified root-of-unity enclosures.

Everything is a closed interval with Fraction endpoints.  Enclosures of
cos(2*pi*j/m) and sin(2*pi*j/m) come from a Machin-series bracket for pi
and Taylor polynomials with explicit Lagrange remainders, so every bound
is a theorem of rational arithmetic, not a float.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ParameterError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q: Fraction) -> "RatInterval":
        return cls(q, q)

    def __add__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "RatInterval":
        return RatInterval(-self.hi, -self.lo)

    def scale(self, q: Fraction) -> "RatInterval":
        if q >= 0:
            return RatInterval(self.lo * q, self.hi * q)
        return RatInterval(self.hi * q, self.lo * q)

    def widen(self, r: Fraction) -> "RatInterval":
        return RatInterval(self.lo - r, self.hi + r)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, q: Fraction) -> bool:
        return self.lo <= q <= self.hi

    def abs_hi(self) -> Fraction:
        """An upper bound on |x| over the interval."""
        return max(abs(self.lo), abs(self.hi))


def _atan_interval(x: Fraction, tol: Fraction) -> RatInterval:
    """Bracket atan(x) for 0 < x < 1 by consecutive alternating partial sums."""
    term = x
    total = Fraction(0)
    sign = 1
    n = 0
    x_sq = x * x
    while True:
        prev = total
        total += sign * term / (2 * n + 1)
        if term / (2 * n + 1) < tol:
            return RatInterval(min(prev, total), max(prev, total))
        term *= x_sq
        sign = -sign
        n += 1


@functools.lru_cache(maxsize=None)
def pi_interval(bits: int) -> RatInterval:
    """An enclosure of pi of width below 2^-bits (Machin's formula)."""
    tol = Fraction(1, 2 ** (bits + 6))
    a = _atan_interval(Fraction(1, 5), tol / 32)
    b = _atan_interval(Fraction(1, 239), tol / 8)
    return a.scale(Fraction(16)) - b.scale(Fraction(4))


def _dyadic_round(q: Fraction, bits: int) -> Fraction:
    """Nearest multiple of 2^-bits (keeps Taylor arithmetic denominators small)."""
    scale = 1 << bits
    return Fraction(round(q * scale), scale)


def _taylor_cos(x: Fraction, tol: Fraction) -> RatInterval:
    """cos(x) within tol via the alternating-series tail bound |x|^(2N+2)/(2N+2)!."""
    total = Fraction(1)
    term = Fraction(1)
    x_sq = x * x
    n = 0
    while True:
        term *= x_sq / ((2 * n + 1) * (2 * n + 2))
        n += 1
        total += term if n % 2 == 0 else -term
        bound = abs(term) * abs(x_sq) / ((2 * n + 1) * (2 * n + 2))
        if bound < tol:
            return RatInterval(total - bound, total + bound)


def _taylor_sin(x: Fraction, tol: Fraction) -> RatInterval:
    total = x
    term = x
    x_sq = x * x
    n = 0
    while True:
        term *= x_sq / ((2 * n + 2) * (2 * n + 3))
        n += 1
        total += term if n % 2 == 0 else -term
        bound = abs(term) * abs(x_sq) / ((2 * n + 2) * (2 * n + 3))
        if bound < tol:
            return RatInterval(total - bound, total + bound)


_QUARTER_TURNS = {
    0: (Fraction(1), Fraction(0)),
    1: (Fraction(0), Fraction(1)),
    2: (Fraction(-1), Fraction(0)),
    3: (Fraction(0), Fraction(-1)),
}


@functools.lru_cache(maxsize=None)
def unit_root_enclosure(j: int, m: int, bits: int) -> tuple[RatInterval, RatInterval]:
    """Certified enclosures of (cos, sin) of 2*pi*j/m, each of width <= 2^-bits.

    Angles that are multiples of pi/2 come back as exact point intervals.
    """
    if m < 1:
        raise ParameterError("order must be >= 1")
    j %= m
    if (4 * j) % m == 0:
        c, s = _QUARTER_TURNS[(4 * j // m) % 4]
        return RatInterval.point(c), RatInterval.point(s)
    pad = bits + 4
    theta = pi_interval(pad + 3).scale(Fraction(2 * j, m))
    x0 = _dyadic_round(theta.mid, pad)
    # |cos(theta) - cos(x0)| <= |theta - x0| (and likewise for sin).
    slack = max(abs(theta.hi - x0), abs(x0 - theta.lo))
    tol = Fraction(1, 2 ** (pad + 1))
    cos_iv = _taylor_cos(x0, tol).widen(slack)
    sin_iv = _taylor_sin(x0, tol).widen(slack)
    return cos_iv, sin_iv

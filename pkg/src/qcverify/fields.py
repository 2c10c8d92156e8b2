"""Exact coefficient arithmetic: Gaussian rationals and cyclotomic fields.

Cyclotomic elements are stored reduced modulo the m-th cyclotomic
polynomial, so the coefficient structure is a genuine field and division
is exact.  Nothing here ever touches floating point.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Union

from .errors import ParameterError

RationalLike = Union[int, Fraction]


def as_fraction(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def rat_height(q: Fraction) -> int:
    """Height of a reduced rational: max(|numerator|, denominator)."""
    return max(abs(q.numerator), q.denominator)


def rat_key(q: Fraction) -> tuple[int, int, int, int]:
    """Total order on rationals: height, then sign class, then magnitude."""
    return (rat_height(q), 0 if q >= 0 else 1, abs(q.numerator), q.denominator)


@dataclass(frozen=True)
class GaussianRational:
    """An element re + im*i of Q(i), both parts exact rationals."""

    re: Fraction
    im: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", as_fraction(self.re))
        object.__setattr__(self, "im", as_fraction(self.im))

    @classmethod
    def from_rational(cls, q: RationalLike) -> "GaussianRational":
        return cls(as_fraction(q), Fraction(0))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def scale(self, q: RationalLike) -> "GaussianRational":
        q = as_fraction(q)
        return GaussianRational(self.re * q, self.im * q)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        n = self.abs_sq()
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def l1(self) -> Fraction:
        """|re| + |im|: a rational upper bound on the complex modulus."""
        return abs(self.re) + abs(self.im)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0


GAUSS_ZERO = GaussianRational(Fraction(0), Fraction(0))
GAUSS_ONE = GaussianRational(Fraction(1), Fraction(0))
GAUSS_I = GaussianRational(Fraction(0), Fraction(1))


def gauss_height(g: GaussianRational) -> int:
    return max(rat_height(g.re), rat_height(g.im))


def gauss_key(g: GaussianRational):
    """Total order on Gaussian rationals: height, real-axis first, then parts."""
    return (gauss_height(g), 0 if g.im == 0 else 1, rat_key(g.re), rat_key(g.im))


# -- cyclotomic polynomials and field elements --------------------------------


def _int_poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials (den monic up to sign)."""
    num = list(num)
    quot = [0] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        factor = num[-1] // den[-1]
        quot[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
    while num and num[-1] == 0:
        num.pop()
    return quot, num


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ParameterError("cyclotomic order must be >= 1")
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _int_poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(poly)


@functools.lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def _reduce_mod_cyclotomic(coeffs: list[Fraction], m: int) -> tuple[Fraction, ...]:
    """Reduce a polynomial in the m-th root of unity to the canonical basis."""
    folded = [Fraction(0)] * m
    for t, c in enumerate(coeffs):
        folded[t % m] += c
    phi = euler_phi(m)
    mod = cyclotomic_polynomial(m)
    deg = len(mod) - 1
    for t in range(m - 1, deg - 1, -1):
        c = folded[t]
        if c == 0:
            continue
        folded[t] = Fraction(0)
        for i, a in enumerate(mod[:-1]):
            folded[t - deg + i] -= c * a
    return tuple(folded[:phi])


@dataclass(frozen=True)
class Cyclotomic:
    """An element of Q(zeta_m), reduced modulo the m-th cyclotomic polynomial."""

    m: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != euler_phi(self.m):
            raise ParameterError(
                f"expected {euler_phi(self.m)} coefficients for order {self.m}"
            )

    @classmethod
    def from_coeffs(cls, m: int, coeffs: Iterable[RationalLike]) -> "Cyclotomic":
        return cls(m, _reduce_mod_cyclotomic([as_fraction(c) for c in coeffs], m))

    @classmethod
    def from_rational(cls, m: int, q: RationalLike) -> "Cyclotomic":
        return cls.from_coeffs(m, [q])

    @classmethod
    def zero(cls, m: int) -> "Cyclotomic":
        return cls.from_rational(m, 0)

    @classmethod
    def one(cls, m: int) -> "Cyclotomic":
        return cls.from_rational(m, 1)

    @classmethod
    def root_power(cls, m: int, j: int) -> "Cyclotomic":
        """zeta_m^j as a field element."""
        coeffs = [Fraction(0)] * (j % m) + [Fraction(1)]
        return cls.from_coeffs(m, coeffs)

    def _check_same(self, other: "Cyclotomic") -> None:
        if self.m != other.m:
            raise ParameterError(f"mixed cyclotomic orders {self.m} and {other.m}")

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._check_same(other)
        return Cyclotomic(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._check_same(other)
        return Cyclotomic(self.m, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.m, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._check_same(other)
        prod = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    prod[i + j] += a * b
        return Cyclotomic(self.m, _reduce_mod_cyclotomic(prod, self.m))

    def scale(self, q: RationalLike) -> "Cyclotomic":
        q = as_fraction(q)
        return Cyclotomic(self.m, tuple(a * q for a in self.coeffs))

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, i.e. zeta_m -> zeta_m^(m-1)."""
        acc = [Fraction(0)] * self.m
        for t, c in enumerate(self.coeffs):
            acc[(-t) % self.m] += c
        return Cyclotomic(self.m, _reduce_mod_cyclotomic(acc, self.m))

    def inverse(self) -> "Cyclotomic":
        """Field inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero cyclotomic")
        mod = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        r0, r1 = mod, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and r1[-1] == 0:
                r1.pop()
            if len(r1) == 1:
                inv = [c / r1[0] for c in s1]
                return Cyclotomic(self.m, _reduce_mod_cyclotomic(inv, self.m))
            quot = [Fraction(0)] * (len(r0) - len(r1) + 1)
            rem = list(r0)
            while len(rem) >= len(r1):
                if rem[-1] == 0:
                    rem.pop()
                    continue
                shift = len(rem) - len(r1)
                factor = rem[-1] / r1[-1]
                quot[shift] = factor
                for i, c in enumerate(r1):
                    rem[shift + i] -= factor * c
                rem.pop()
            s_new = list(s0) + [Fraction(0)] * max(0, len(quot) + len(s1) - 1 - len(s0))
            for i, qc in enumerate(quot):
                if qc == 0:
                    continue
                for j, sc in enumerate(s1):
                    s_new[i + j] -= qc * sc
            r0, r1 = r1, rem
            s0, s1 = s1, s_new

    def __truediv__(self, other: "Cyclotomic") -> "Cyclotomic":
        return self * other.inverse()

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ParameterError("cyclotomic value is not rational")
        return self.coeffs[0]

    def exact_gaussian(self) -> Optional[GaussianRational]:
        """The value as an element of Q(i), when that is exactly representable.

        Covers rational values for every m, all of Q(zeta_m) for m in {1, 2, 4},
        and elements supported on {1, i} when 4 divides m.
        """
        if self.is_rational():
            return GaussianRational(self.coeffs[0], Fraction(0))
        if self.m == 4:
            return GaussianRational(self.coeffs[0], self.coeffs[1])
        if self.m % 4 == 0:
            quarter = self.m // 4
            if quarter < len(self.coeffs) and all(
                c == 0 for t, c in enumerate(self.coeffs) if t not in (0, quarter)
            ):
                return GaussianRational(self.coeffs[0], self.coeffs[quarter])
        return None

    def embed(self, big_m: int) -> "Cyclotomic":
        """Image under zeta_m -> zeta_M^(M/m) for m | M."""
        if big_m % self.m != 0:
            raise ParameterError(f"{self.m} does not divide {big_m}")
        step = big_m // self.m
        acc = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for t, c in enumerate(self.coeffs):
            acc[t * step] += c
        return Cyclotomic(big_m, _reduce_mod_cyclotomic(acc, big_m))


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# -- certified approximation into Q(i) -----------------------------------------


def complex_enclosure(x: Cyclotomic, bits: int):
    """Certified rational intervals containing Re(x) and Im(x).

    Each interval has width at most (1 + sum of |coefficients|) * 2^-bits.
    """
    from .intervals import RatInterval, unit_root_enclosure

    re_iv = RatInterval.point(Fraction(0))
    im_iv = RatInterval.point(Fraction(0))
    for t, c in enumerate(x.coeffs):
        if c == 0:
            continue
        cos_iv, sin_iv = unit_root_enclosure(t, x.m, bits)
        re_iv = re_iv + cos_iv.scale(c)
        im_iv = im_iv + sin_iv.scale(c)
    return re_iv, im_iv


def cyclotomic_to_gaussian(
    x: Cyclotomic, eps: RationalLike
) -> tuple[GaussianRational, Fraction]:
    """Approximate x by a Gaussian rational with a certified error bound.

    Returns (g, bound) with bound < eps and |x - g| <= bound, where the
    bound is exact rational arithmetic on interval enclosures (and is 0
    whenever x already lies in Q(i), in particular for m in {1, 2, 4}).
    The approximant snaps to the grid of multiples of 1/ceil(5/eps), so
    the output is deterministic and independent of internal precision.
    """
    eps = as_fraction(eps)
    if eps <= 0:
        raise ParameterError("eps must be positive")
    exact = x.exact_gaussian()
    if exact is not None:
        return exact, Fraction(0)

    grid = -(-5 * eps.denominator // eps.numerator)  # ceil(5/eps)
    coeff_mass = sum(abs(c) for c in x.coeffs) + 1
    # Enclosure halfwidth <= 1/(4*grid) keeps grid rounding certified below eps.
    target = Fraction(1, 2 * grid)
    bits = (8 * grid * coeff_mass.numerator // coeff_mass.denominator).bit_length()
    while True:
        re_iv, im_iv = complex_enclosure(x, bits)
        if re_iv.width <= target and im_iv.width <= target:
            g_re = Fraction(round(re_iv.mid * grid), grid)
            g_im = Fraction(round(im_iv.mid * grid), grid)
            bound_re = max(abs(g_re - re_iv.lo), abs(re_iv.hi - g_re))
            bound_im = max(abs(g_im - im_iv.lo), abs(im_iv.hi - g_im))
            bound = _round_up_dyadic(bound_re + bound_im, 64)
            if bound < eps:
                return GaussianRational(g_re, g_im), bound
        bits += 16


def _round_up_dyadic(q: Fraction, bits: int) -> Fraction:
    """Smallest multiple of 2^-bits that is >= q (keeps certified bounds compact)."""
    scale = 1 << bits
    return Fraction(-((-q.numerator * scale) // q.denominator), scale)

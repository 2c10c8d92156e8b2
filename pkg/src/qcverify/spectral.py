"""Spectral projections of the generators and their certified rational approximants.

Each generator u_v is a unitary of order m, so it splits into m spectral
projections, one per m-th root of unity.  Fourier inversion expresses
those projections exactly over Q(zeta_m); approximating the coefficients
into Q(i) with interval-certified error gives computable stand-ins for
the projection products, with an explicit bound on the distance in any
C*-norm.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError
from .fields import Cyclotomic, cyclotomic_to_gaussian
from .ring import RingElement, ring_element, ring_mul
from .words import GroupParams, Word, single


@dataclass(frozen=True)
class CertifiedApprox:
    """A Q(i) group-ring element with a certified distance to its exact target.

    error_bound dominates the sum over words of |re| + |im| of the
    coefficientwise difference, hence also the universal C*-norm of it,
    and is strictly below 1/target_k.
    """

    value: RingElement
    error_bound: Fraction
    target_k: int

    def __post_init__(self) -> None:
        if self.error_bound * self.target_k >= 1:
            raise ParameterError(
                f"certificate violated: bound {self.error_bound} >= 1/{self.target_k}"
            )


def _check_indices(params: GroupParams, v: int, i: int) -> None:
    if not 1 <= v <= params.n:
        raise ParameterError(f"question index {v} out of range [1, {params.n}]")
    if not 1 <= i <= params.m:
        raise ParameterError(f"answer index {i} out of range [1, {params.m}]")


@functools.lru_cache(maxsize=None)
def projection(v: int, i: int, params: GroupParams) -> RingElement:
    """The spectral projection of u_v for eigenvalue zeta_m^i.

    Fourier inversion of u_v^j = sum_i zeta_m^(j*i) e_(v,i):
    e_(v,i) = (1/m) * sum_(j=1..m) zeta_m^(-i*j) u_v^j.
    """
    _check_indices(params, v, i)
    m = params.m
    terms: dict[Word, Cyclotomic] = {}
    for j in range(1, m + 1):
        word = single(v, j, params)
        coeff = Cyclotomic.root_power(m, (-i * j) % m).scale(Fraction(1, m))
        terms[word] = terms[word] + coeff if word in terms else coeff
    return ring_element(params, "cyclotomic", terms)


@functools.lru_cache(maxsize=None)
def projection_product(
    v: int, i: int, w: int, j: int, params: GroupParams
) -> RingElement:
    """The exact product e_(v,i) e_(w,j) in the cyclotomic group ring."""
    _check_indices(params, v, i)
    _check_indices(params, w, j)
    return ring_mul(projection(v, i, params), projection(w, j, params))


@functools.lru_cache(maxsize=None)
def approx_product_s(
    v: int, w: int, i: int, j: int, k: int, params: GroupParams
) -> CertifiedApprox:
    """A Q(i)-coefficient approximant of e_(v,i) e_(w,j) within 1/k.

    Every coefficient of the exact cyclotomic product is approximated with
    a per-term budget of 1/(4*k*terms), so the certified total stays below
    1/(2k) and downstream comparisons retain headroom below the 1/k target.
    """
    if k < 1:
        raise ParameterError("approximation level k must be >= 1")
    exact = projection_product(v, i, w, j, params)
    n_terms = len(exact.terms)
    if n_terms == 0:
        return CertifiedApprox(ring_element(params, "gaussian", {}), Fraction(0), k)
    per_term = Fraction(1, 4 * k * n_terms)
    approx = {}
    total = Fraction(0)
    for word, coeff in exact.terms:
        g, bound = cyclotomic_to_gaussian(coeff, per_term)
        total += bound
        if not g.is_zero:
            approx[word] = g
    return CertifiedApprox(ring_element(params, "gaussian", approx), total, k)

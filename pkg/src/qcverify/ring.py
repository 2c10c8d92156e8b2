"""The group ring over Q(i) or Q(zeta_m): formal sums of words with exact coefficients.

Elements are immutable, store no zero terms, and iterate in the canonical
word order, so equal elements have equal representations.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Mapping, Union

from .errors import ParameterError
from .fields import Cyclotomic, GaussianRational, as_fraction
from .words import GroupParams, Word, word_inv, word_key, word_mul

CoeffField = Literal["gaussian", "cyclotomic"]
Coeff = Union[GaussianRational, Cyclotomic]


@dataclass(frozen=True)
class RingElement:
    params: GroupParams
    coeff_field: CoeffField
    terms: tuple[tuple[Word, Coeff], ...]  # sorted by word_key, no zero coeffs

    @functools.cached_property
    def _map(self) -> dict[Word, Coeff]:
        return dict(self.terms)

    def coeff(self, word: Word) -> Coeff:
        found = self._map.get(word)
        return found if found is not None else self._zero_coeff()

    def _zero_coeff(self) -> Coeff:
        if self.coeff_field == "gaussian":
            return GaussianRational(Fraction(0), Fraction(0))
        return Cyclotomic.zero(self.params.m)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> tuple[Word, ...]:
        return tuple(w for w, _ in self.terms)

    def max_syllables(self) -> int:
        return max((len(w) for w, _ in self.terms), default=0)


def ring_element(
    params: GroupParams, coeff_field: CoeffField, mapping: Mapping[Word, Coeff]
) -> RingElement:
    terms = tuple(
        sorted(((w, c) for w, c in mapping.items() if not c.is_zero), key=lambda t: word_key(t[0]))
    )
    return RingElement(params, coeff_field, terms)


def ring_zero(params: GroupParams, coeff_field: CoeffField = "gaussian") -> RingElement:
    return ring_element(params, coeff_field, {})


def ring_one(params: GroupParams, coeff_field: CoeffField = "gaussian") -> RingElement:
    if coeff_field == "gaussian":
        one: Coeff = GaussianRational(Fraction(1), Fraction(0))
    else:
        one = Cyclotomic.one(params.m)
    return ring_element(params, coeff_field, {(): one})


def monomial(
    params: GroupParams, coeff_field: CoeffField, word: Word, coeff: Coeff
) -> RingElement:
    return ring_element(params, coeff_field, {word: coeff})


def _check_compatible(x: RingElement, y: RingElement) -> None:
    if x.params != y.params:
        raise ParameterError(f"mismatched group parameters {x.params} vs {y.params}")
    if x.coeff_field != y.coeff_field:
        raise ParameterError(
            f"mismatched coefficient fields {x.coeff_field} vs {y.coeff_field}"
        )


def ring_add(x: RingElement, y: RingElement) -> RingElement:
    _check_compatible(x, y)
    acc: dict[Word, Coeff] = dict(x.terms)
    for w, c in y.terms:
        acc[w] = acc[w] + c if w in acc else c
    return ring_element(x.params, x.coeff_field, acc)


def ring_neg(x: RingElement) -> RingElement:
    return ring_element(x.params, x.coeff_field, {w: -c for w, c in x.terms})


def ring_sub(x: RingElement, y: RingElement) -> RingElement:
    return ring_add(x, ring_neg(y))


def ring_mul(x: RingElement, y: RingElement) -> RingElement:
    """Convolution product: words multiply in the group, coefficients in the field."""
    _check_compatible(x, y)
    acc: dict[Word, Coeff] = {}
    for wa, ca in x.terms:
        for wb, cb in y.terms:
            w = word_mul(wa, wb, x.params)
            c = ca * cb
            acc[w] = acc[w] + c if w in acc else c
    return ring_element(x.params, x.coeff_field, acc)


def ring_scale(x: RingElement, q) -> RingElement:
    q = as_fraction(q)
    return ring_element(x.params, x.coeff_field, {w: c.scale(q) for w, c in x.terms})


def ring_star(x: RingElement) -> RingElement:
    """The adjoint: each term a*w maps to conj(a)*w^-1."""
    return ring_element(
        x.params,
        x.coeff_field,
        {word_inv(w, x.params): c.conjugate() for w, c in x.terms},
    )


def ring_l1_bound(x: RingElement) -> Fraction:
    """Sum of |re| + |im| over all coefficients.

    A rational upper bound on the l1 norm of the element, which in turn
    dominates the norm in any *-representation, in particular the
    universal one.  Defined for Gaussian coefficients; approximate
    cyclotomic elements into Q(i) first.
    """
    if x.coeff_field != "gaussian":
        raise ParameterError("l1 bound needs Gaussian coefficients; convert first")
    total = Fraction(0)
    for _, c in x.terms:
        total += c.l1()
    return total

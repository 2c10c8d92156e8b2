"""The canonical enumerable list of trace requirements and its stability margin.

A function into the unit disc is a trace exactly when it is a class
function of positive type; both families of conditions reduce to countably
many requirements over Q(i) coefficients and word indices, so the list is
a formal object independent of the group.  The order fixed here (odd
indices: positivity, even indices: conjugation-invariance, each family in
its own canonical order) makes every downstream artifact reproducible
bit for bit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import ParameterError
from .fields import GaussianRational, gauss_height, gauss_key, rat_height

# A positivity requirement is a formal element: ((word_index, coeff), ...) with
# strictly increasing word indices and nonzero Gaussian rational coefficients.
FormalElement = tuple[tuple[int, GaussianRational], ...]


@dataclass(frozen=True)
class Requirement:
    index: int
    kind: str  # "positivity" | "class_fn"
    element: Optional[FormalElement] = None
    lambda_index: Optional[int] = None
    gamma_index: Optional[int] = None


def _rationals_up_to(h: int) -> list[Fraction]:
    values = {Fraction(0)}
    for den in range(1, h + 1):
        for num in range(1, h + 1):
            q = Fraction(num, den)
            if rat_height(q) <= h:
                values.add(q)
                values.add(-q)
    return sorted(values)


def _gaussians_up_to(h: int) -> list[GaussianRational]:
    rats = _rationals_up_to(h)
    out = []
    for re in rats:
        for im in rats:
            g = GaussianRational(re, im)
            if not g.is_zero and gauss_height(g) <= h:
                out.append(g)
    return out


def element_height(element: FormalElement) -> int:
    return max(
        len(element),
        max(idx for idx, _ in element),
        max(gauss_height(c) for _, c in element),
    )


def _element_key(element: FormalElement):
    return tuple((idx, gauss_key(c)) for idx, c in element)


def _elements_of_height(h: int) -> list[FormalElement]:
    """All formal elements of height exactly h, in canonical order."""
    coeffs = _gaussians_up_to(h)
    out: list[FormalElement] = []
    for size in range(1, h + 1):
        for support in itertools.combinations(range(h + 1), size):
            for assignment in itertools.product(coeffs, repeat=size):
                element = tuple(zip(support, assignment))
                if element_height(element) == h:
                    out.append(element)
    out.sort(key=_element_key)
    return out


_ELEMENT_BLOCKS: list[list[FormalElement]] = []


def positivity_element(t: int) -> FormalElement:
    """The t-th formal element (1-indexed) in height-then-lex order."""
    if t < 1:
        raise ParameterError("positivity element index must be >= 1")
    seen = sum(len(b) for b in _ELEMENT_BLOCKS)
    while seen < t:
        h = len(_ELEMENT_BLOCKS) + 1
        block = _elements_of_height(h)
        _ELEMENT_BLOCKS.append(block)
        seen += len(block)
    rem = t - 1
    for block in _ELEMENT_BLOCKS:
        if rem < len(block):
            return block[rem]
        rem -= len(block)
    raise AssertionError("unreachable")


def cantor_unpair(z: int) -> tuple[int, int]:
    """Inverse of the Cantor pairing (a, b) -> (a+b)(a+b+1)/2 + b."""
    import math

    w = (math.isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def requirement(l: int) -> Requirement:
    """The l-th requirement (1-indexed): positivity at odd l, class at even l."""
    if l < 1:
        raise ParameterError("requirement index must be >= 1")
    if l % 2 == 1:
        return Requirement(index=l, kind="positivity", element=positivity_element((l + 1) // 2))
    lam, gam = cantor_unpair(l // 2 - 1)
    return Requirement(index=l, kind="class_fn", lambda_index=lam, gamma_index=gam)


def requirements_up_to(k: int) -> Iterator[Requirement]:
    for l in range(1, k + 1):
        yield requirement(l)


@dataclass(frozen=True)
class DeltaBound:
    """A perturbation radius under which exact traces stay k-approximate."""

    k: int
    delta: Fraction

    def __post_init__(self) -> None:
        if self.delta <= 0:
            raise ParameterError("delta must be positive")


def delta_for_k(k: int) -> DeltaBound:
    """Computable margin: any disc-valued function within delta (sup norm on
    the relevant words) of an exact trace passes the first k relaxed
    requirements.

    For a positivity element with coefficient mass B = sum(|re| + |im|),
    perturbing the trace by delta moves the Hermitian sum by at most
    delta * B^2, and each class constraint by at most 2 * delta; the
    denominator max(2, max B^2) keeps both below 1/(2k) < 1/k.
    """
    if k < 1:
        raise ParameterError("k must be >= 1")
    worst = Fraction(2)
    for l in range(1, k + 1, 2):
        element = requirement(l).element
        assert element is not None
        mass = sum((c.l1() for _, c in element), Fraction(0))
        worst = max(worst, mass * mass)
    return DeltaBound(k, Fraction(1, 2 * k) / worst)

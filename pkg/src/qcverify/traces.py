"""Partial traces, relaxed requirement checking, and trace/correlation bridges.

A candidate trace is a finite disc-valued map on normal-form words; it is
extended to the group ring by linearity.  All checks below are exact:
distances are compared through squared rationals, so strict inequalities
mean exactly what they say and ties fail.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import NotATraceError, ParameterError, TraceDomainError
from .fields import (
    Cyclotomic,
    GaussianRational,
    as_fraction,
    cyclotomic_to_gaussian,
    lcm,
)
from .games import Correlation, all_entries, entry_index
from .requirements import Requirement, requirement
from .ring import RingElement
from .spectral import approx_product_s, projection_product
from .words import (
    GroupParams,
    Word,
    word_conj,
    word_enumerator,
    word_inv,
    word_key,
    word_mul,
)


@dataclass(frozen=True)
class PartialTrace:
    """A finite map from words into the closed unit disc of Q(i)."""

    params: GroupParams
    values: tuple[tuple[Word, GaussianRational], ...]  # sorted by word_key

    def __post_init__(self) -> None:
        for word, z in self.values:
            if z.abs_sq() > 1:
                raise ParameterError(
                    f"trace value {z} at {word} lies outside the closed unit disc"
                )

    @functools.cached_property
    def _map(self) -> dict[Word, GaussianRational]:
        return dict(self.values)

    def domain(self) -> tuple[Word, ...]:
        return tuple(w for w, _ in self.values)

    def __call__(self, word: Word) -> GaussianRational:
        try:
            return self._map[word]
        except KeyError:
            raise TraceDomainError(word) from None

    def covers(self, words) -> bool:
        return all(w in self._map for w in words)

    def eval_ring(self, x: RingElement) -> GaussianRational:
        """Linear extension to Gaussian-coefficient ring elements."""
        if x.coeff_field != "gaussian":
            raise ParameterError("linear extension needs Gaussian coefficients")
        total = GaussianRational(Fraction(0), Fraction(0))
        for word, coeff in x.terms:
            total = total + coeff * self(word)
        return total


def partial_trace(
    params: GroupParams, values: Mapping[Word, GaussianRational]
) -> PartialTrace:
    items = tuple(sorted(values.items(), key=lambda t: word_key(t[0])))
    return PartialTrace(params, items)


@dataclass(frozen=True)
class CyclotomicTrace:
    """An exact trace fixture with values in Q(zeta_m)."""

    params: GroupParams
    values: tuple[tuple[Word, Cyclotomic], ...]

    @functools.cached_property
    def _map(self) -> dict[Word, Cyclotomic]:
        return dict(self.values)

    def domain(self) -> tuple[Word, ...]:
        return tuple(w for w, _ in self.values)

    def __call__(self, word: Word) -> Cyclotomic:
        try:
            return self._map[word]
        except KeyError:
            raise TraceDomainError(word) from None


ExactTrace = Union[PartialTrace, CyclotomicTrace]


# -- the finite word support needed at level k ---------------------------------


@functools.lru_cache(maxsize=None)
def required_support(k: int, params: GroupParams) -> tuple[Word, ...]:
    """Every word the first k relaxed requirements and level-k adaptedness evaluate.

    Union of lambda^-1 * gamma over positivity supports, conjugates and
    bases for class requirements, and the supports of the certified
    projection-product approximants at level k.
    """
    if k < 1:
        raise ParameterError("k must be >= 1")
    enum = word_enumerator(params)
    words: set[Word] = set()
    for req in (requirement(l) for l in range(1, k + 1)):
        if req.kind == "positivity":
            assert req.element is not None
            support = [enum.word_at(idx) for idx, _ in req.element]
            for lam in support:
                for gam in support:
                    words.add(word_mul(word_inv(lam, params), gam, params))
        else:
            lam = enum.word_at(req.lambda_index)
            gam = enum.word_at(req.gamma_index)
            words.add(word_conj(lam, gam, params))
            words.add(lam)
    for v, w, i, j in all_entries(params):
        words.update(approx_product_s(v, w, i, j, k, params).value.support())
    return tuple(sorted(words, key=word_key))


# -- relaxed requirement checking ----------------------------------------------


def check_relaxed(tau: PartialTrace, l: int, k: int) -> tuple[bool, str]:
    """Check the 1/k-relaxation of requirement l; returns (passed, reason)."""
    if k < 1:
        raise ParameterError("k must be >= 1")
    req = requirement(l)
    enum = word_enumerator(tau.params)
    threshold_sq = Fraction(1, k * k)
    if req.kind == "positivity":
        assert req.element is not None
        resolved = [(enum.word_at(idx), coeff) for idx, coeff in req.element]
        total = GaussianRational(Fraction(0), Fraction(0))
        for lam, a in resolved:
            for gam, b in resolved:
                word = word_mul(word_inv(lam, tau.params), gam, tau.params)
                total = total + a.conjugate() * b * tau(word)
        # Distance to the closed ray [0, oo): |im| when re >= 0, else |z|.
        if total.re >= 0:
            ok = total.im * total.im < threshold_sq
        else:
            ok = total.abs_sq() < threshold_sq
        return ok, "" if ok else f"positivity sum {total} strays beyond 1/{k}"
    lam = enum.word_at(req.lambda_index)
    gam = enum.word_at(req.gamma_index)
    diff = tau(word_conj(lam, gam, tau.params)) - tau(lam)
    ok = diff.abs_sq() < threshold_sq
    return ok, "" if ok else f"class gap {diff} at words ({req.lambda_index},{req.gamma_index})"


@dataclass(frozen=True)
class TraceCheckReport:
    passed: bool
    failures: tuple[int, ...]


def is_k_approximate(tau: PartialTrace, k: int) -> TraceCheckReport:
    """Whether the first k relaxed requirements all hold for tau."""
    failures = tuple(l for l in range(1, k + 1) if not check_relaxed(tau, l, k)[0])
    return TraceCheckReport(not failures, failures)


# -- trace fixtures --------------------------------------------------------------


def regular_trace(params: GroupParams, support) -> PartialTrace:
    """1 at the identity, 0 elsewhere: the canonical trace, restricted to support."""
    one = GaussianRational(Fraction(1), Fraction(0))
    zero = GaussianRational(Fraction(0), Fraction(0))
    return partial_trace(params, {w: (one if w == () else zero) for w in support})


def character_trace(
    assignment: Sequence[int], params: GroupParams, support
) -> CyclotomicTrace:
    """The one-dimensional representation u_v -> zeta_m^assignment[v-1], on support.

    Genuinely multiplicative, hence an exact trace; its correlation is the
    deterministic correlation of the assignment.
    """
    if len(assignment) != params.n or any(not 1 <= a <= params.m for a in assignment):
        raise ParameterError(f"assignment must map [1,{params.n}] into [1,{params.m}]")
    m = params.m
    values = {}
    for word in support:
        exponent = sum(assignment[g - 1] * e for g, e in word) % m
        values[word] = Cyclotomic.root_power(m, exponent)
    items = tuple(sorted(values.items(), key=lambda t: word_key(t[0])))
    return CyclotomicTrace(params, items)


# -- exact correlation extraction ------------------------------------------------


def _embedded_value(value: Union[GaussianRational, Cyclotomic], big_m: int) -> Cyclotomic:
    if isinstance(value, GaussianRational):
        re = Cyclotomic.from_rational(big_m, value.re)
        im = Cyclotomic.root_power(big_m, big_m // 4).scale(value.im)
        return re + im
    return value.embed(big_m)


def correlation_from_trace(tau: ExactTrace) -> Correlation:
    """p(i,j|v,w) = tau(e_(v,i) e_(w,j)), evaluated exactly.

    Works in the compositum of Q(zeta_m) and Q(i); entries must come out
    rational and inside [0, 1], otherwise the input was not a trace.
    """
    params = tau.params
    big_m = lcm(params.m, 4)
    entries = [Fraction(0)] * (params.n**2 * params.m**2)
    for v, w, i, j in all_entries(params):
        product = projection_product(v, i, w, j, params)
        total = Cyclotomic.zero(big_m)
        for word, coeff in product.terms:
            total = total + coeff.embed(big_m) * _embedded_value(tau(word), big_m)
        if not total.is_rational():
            raise NotATraceError(
                f"entry ({v},{w},{i},{j}) is irrational; input is not a trace"
            )
        q = total.as_rational()
        if q < 0 or q > 1:
            raise NotATraceError(
                f"entry ({v},{w},{i},{j}) = {q} outside [0,1]; input is not a trace"
            )
        entries[entry_index(params, v, w, i, j)] = q
    return Correlation(params, tuple(entries))


# -- adaptedness ------------------------------------------------------------------


@dataclass(frozen=True)
class AdaptReport:
    passed: bool
    failures: tuple[tuple[int, int, int, int], ...]


def is_k_adapted(tau: PartialTrace, p: Correlation, k: int) -> AdaptReport:
    """Whether |p(i,j|v,w) - tau(s_(v,w,i,j,k))| < 1/k for every entry, exactly."""
    if tau.params != p.params:
        raise ParameterError("trace and correlation have different parameters")
    if k < 1:
        raise ParameterError("k must be >= 1")
    threshold_sq = Fraction(1, k * k)
    failures = []
    for v, w, i, j in all_entries(tau.params):
        approx = approx_product_s(v, w, i, j, k, tau.params)
        value = tau.eval_ring(approx.value)
        diff = GaussianRational(p(v, w, i, j) - value.re, -value.im)
        if diff.abs_sq() >= threshold_sq:
            failures.append((v, w, i, j))
    return AdaptReport(not failures, tuple(failures))


# -- rounding exact fixtures into rational witnesses ------------------------------


def rationalize_pair(
    tau_exact: CyclotomicTrace, p_exact: Correlation, eta
) -> tuple[Correlation, PartialTrace]:
    """Round an exact adapted pair into Q-valued data within sup distance eta.

    Correlation entries are already rational and pass through unchanged.
    Trace values that lie in Q(i) pass through; every other value is
    radially shrunk by (1 - eta/2) and then grid-rounded within eta/4, so
    the result is certified inside the closed unit disc at distance
    strictly below eta from the original.
    """
    eta = as_fraction(eta)
    if eta <= 0:
        raise ParameterError("eta must be positive")
    shrink = 1 - eta / 2
    rounded = {}
    for word, value in tau_exact.values:
        exact = value.exact_gaussian()
        if exact is not None:
            rounded[word] = exact
        else:
            g, _ = cyclotomic_to_gaussian(value.scale(shrink), eta / 4)
            rounded[word] = g
    return p_exact, partial_trace(tau_exact.params, rounded)

"""Recursive enumeration of witnessed rational correlations.

A candidate is a joint assignment: one rational in [0,1] per correlation
entry and one Gaussian rational in the closed unit disc per word of the
level-k support.  Candidates are indexed bijectively, ordered by height
(the maximum height of any assigned value) and lexicographically inside
each height block, with the grids per slot growing as prefix extensions,
so indices are stable, resumable, and identical across runs.  A candidate
is emitted when its trace part passes the first k relaxed requirements
and is k-adapted to its correlation part, all in exact arithmetic.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import ParameterError
from .fields import (
    GaussianRational,
    gauss_height,
    gauss_key,
    rat_height,
    rat_key,
)
from .games import Correlation, all_entries
from .requirements import requirement
from .spectral import approx_product_s
from .traces import PartialTrace, is_k_adapted, is_k_approximate, partial_trace, required_support
from .words import GroupParams, word_enumerator, word_inv, word_mul

# -- value grids (shared by every group size; prefix-extensions by height) -----

_CORR_VALUES: list[Fraction] = []
_CORR_COUNTS: list[int] = [0]  # _CORR_COUNTS[h] = number of values of height <= h
_DISC_VALUES: list[GaussianRational] = []
_DISC_COUNTS: list[int] = [0]


def _grow_grids(h: int) -> None:
    while len(_CORR_COUNTS) <= h:
        hh = len(_CORR_COUNTS)
        fresh = [
            Fraction(num, den)
            for den in range(1, hh + 1)
            for num in range(0, den + 1)
            if rat_height(Fraction(num, den)) == hh
        ]
        _CORR_VALUES.extend(sorted(set(fresh), key=rat_key))
        _CORR_COUNTS.append(len(_CORR_VALUES))

        parts = {Fraction(0)}
        for den in range(1, hh + 1):
            for num in range(1, hh + 1):
                q = Fraction(num, den)
                if rat_height(q) <= hh:
                    parts.add(q)
                    parts.add(-q)
        fresh_disc = [
            g
            for re in parts
            for im in parts
            for g in [GaussianRational(re, im)]
            if gauss_height(g) == hh and g.abs_sq() <= 1
        ]
        _DISC_VALUES.extend(sorted(fresh_disc, key=gauss_key))
        _DISC_COUNTS.append(len(_DISC_VALUES))


def correlation_values(h: int) -> list[Fraction]:
    """All rationals in [0,1] of height at most h, in canonical order."""
    _grow_grids(h)
    return _CORR_VALUES[: _CORR_COUNTS[h]]


def disc_values(h: int) -> list[GaussianRational]:
    """All Gaussian rationals in the closed unit disc of height at most h."""
    _grow_grids(h)
    return _DISC_VALUES[: _DISC_COUNTS[h]]


def grid_counts(h: int) -> tuple[int, int]:
    _grow_grids(h)
    return _CORR_COUNTS[h], _DISC_COUNTS[h]


# -- candidates -----------------------------------------------------------------


@dataclass(frozen=True)
class Candidate:
    index: int
    p: Correlation
    tau: PartialTrace
    k: int
    height: int


def is_member_witnessed(p: Correlation, tau: PartialTrace, k: int) -> bool:
    """Exact membership: tau passes the k relaxations and is k-adapted to p."""
    support = required_support(k, tau.params)
    if not tau.covers(support):
        missing = next(w for w in support if w not in tau._map)
        raise ParameterError(f"trace domain misses required word {missing}")
    return is_k_approximate(tau, k).passed and is_k_adapted(tau, p, k).passed


class _Layout:
    """Slot layout and block ranking for one (params, k)."""

    def __init__(self, params: GroupParams, k: int):
        self.params = params
        self.k = k
        self.support = required_support(k, params)
        self.n_p = params.n**2 * params.m**2
        self.n_t = len(self.support)
        self.n_slots = self.n_p + self.n_t

    def counts(self, h: int) -> tuple[int, int]:
        return grid_counts(h)

    def grid_size(self, h: int) -> int:
        if h <= 0:
            return 0
        cp, ct = self.counts(h)
        return cp**self.n_p * ct**self.n_t

    def block_of(self, index: int) -> int:
        h = 1
        while self.grid_size(h) <= index:
            h += 1
        return h

    def _radices(self, h: int) -> tuple[list[int], list[int]]:
        cp, ct = self.counts(h)
        op, ot = self.counts(h - 1)
        radix = [cp] * self.n_p + [ct] * self.n_t
        old = [op] * self.n_p + [ot] * self.n_t
        return radix, old

    def unrank(self, index: int) -> tuple[int, list[int]]:
        """Digits of the index-th candidate; block h has at least one new digit."""
        if index < 0:
            raise ParameterError("candidate index must be nonnegative")
        h = self.block_of(index)
        r = index - self.grid_size(h - 1)
        radix, old = self._radices(h)
        full_suffix = [1] * (self.n_slots + 1)
        old_suffix = [1] * (self.n_slots + 1)
        for s in range(self.n_slots - 1, -1, -1):
            full_suffix[s] = full_suffix[s + 1] * radix[s]
            old_suffix[s] = old_suffix[s + 1] * old[s]
        digits = [0] * self.n_slots
        has_new = False
        for s in range(self.n_slots):
            if has_new:
                digits[s], r = divmod(r, full_suffix[s + 1])
            else:
                per_old = full_suffix[s + 1] - old_suffix[s + 1]
                if r < old[s] * per_old:
                    digits[s], r = divmod(r, per_old)
                else:
                    r -= old[s] * per_old
                    d, r = divmod(r, full_suffix[s + 1])
                    digits[s] = old[s] + d
                    has_new = True
        assert has_new
        return h, digits

    def rank(self, h: int, digits: list[int]) -> int:
        radix, old = self._radices(h)
        full_suffix = [1] * (self.n_slots + 1)
        old_suffix = [1] * (self.n_slots + 1)
        for s in range(self.n_slots - 1, -1, -1):
            full_suffix[s] = full_suffix[s + 1] * radix[s]
            old_suffix[s] = old_suffix[s + 1] * old[s]
        r = 0
        has_new = False
        for s, d in enumerate(digits):
            if not 0 <= d < radix[s]:
                raise ParameterError(f"digit {d} out of range at slot {s}")
            if has_new:
                r += d * full_suffix[s + 1]
            else:
                per_old = full_suffix[s + 1] - old_suffix[s + 1]
                if d < old[s]:
                    r += d * per_old
                else:
                    r += old[s] * per_old + (d - old[s]) * full_suffix[s + 1]
                    has_new = True
        if not has_new:
            raise ParameterError("assignment has height below the requested block")
        return self.grid_size(h - 1) + r

    def to_candidate(self, index: int, h: int, digits: list[int]) -> Candidate:
        corr = correlation_values(h)
        disc = disc_values(h)
        entries = tuple(corr[d] for d in digits[: self.n_p])
        values = {
            word: disc[d] for word, d in zip(self.support, digits[self.n_p :])
        }
        return Candidate(
            index=index,
            p=Correlation(self.params, entries),
            tau=partial_trace(self.params, values),
            k=self.k,
            height=h,
        )

    def digits_of(self, candidate: Candidate) -> tuple[int, list[int]]:
        height = 0
        digits = []
        corr_pos = {q: d for d, q in enumerate(correlation_values(candidate.height))}
        disc_pos = {g: d for d, g in enumerate(disc_values(candidate.height))}
        for q in candidate.p.entries:
            if q not in corr_pos:
                raise ParameterError(f"correlation entry {q} exceeds height {candidate.height}")
            digits.append(corr_pos[q])
            height = max(height, rat_height(q))
        tau_map = dict(candidate.tau.values)
        for word in self.support:
            if word not in tau_map:
                raise ParameterError(f"trace misses required word {word}")
            g = tau_map[word]
            if g not in disc_pos:
                raise ParameterError(f"trace value {g} exceeds height {candidate.height}")
            digits.append(disc_pos[g])
            height = max(height, gauss_height(g))
        return height, digits


@functools.lru_cache(maxsize=None)
def _layout(params: GroupParams, k: int) -> _Layout:
    if k < 1:
        raise ParameterError("k must be >= 1")
    return _Layout(params, k)


def decode_candidate(index: int, k: int, params: GroupParams) -> Candidate:
    """Total, bijective decoding of a nonnegative index into a candidate."""
    layout = _layout(params, k)
    h, digits = layout.unrank(index)
    return layout.to_candidate(index, h, digits)


def encode_candidate(candidate: Candidate, params: GroupParams | None = None) -> int:
    """The unique index that decodes to this candidate."""
    layout = _layout(params or candidate.p.params, candidate.k)
    height, digits = layout.digits_of(candidate)
    if height != candidate.height:
        raise ParameterError(
            f"stored height {candidate.height} does not match values (true height {height})"
        )
    return layout.rank(height, digits)


# -- the memoized membership scanner ---------------------------------------------


class MembershipScanner:
    """Streams candidate indices with memoized exact membership checks.

    Requirements factor through the trace digits on their own support
    slots and each adaptedness constraint couples one correlation slot
    with the trace digits on the support of one approximant, so results
    are memoized per digit sub-tuple.  Digit-to-value maps never change
    across height blocks (the value grids are prefix extensions), which
    keeps the memos valid for the whole stream.
    """

    def __init__(self, params: GroupParams, k: int):
        self.layout = _layout(params, k)
        self.params = params
        self.k = k
        support = self.layout.support
        self._slot_of = {word: s for s, word in enumerate(support)}
        enum = word_enumerator(params)

        self._req_evals = []
        for l in range(1, k + 1):
            req = requirement(l)
            if req.kind == "positivity":
                assert req.element is not None
                resolved = [(enum.word_at(idx), c) for idx, c in req.element]
                pairs = []
                slots: list[int] = []
                for lam, a in resolved:
                    for gam, b in resolved:
                        word = word_mul(word_inv(lam, params), gam, params)
                        slot = self._slot_of[word]
                        if slot not in slots:
                            slots.append(slot)
                        pairs.append((a.conjugate() * b, slot))
                self._req_evals.append(("positivity", tuple(slots), tuple(pairs)))
            else:
                lam = enum.word_at(req.lambda_index)
                conj = word_mul(
                    word_mul(word_inv(enum.word_at(req.gamma_index), params), lam, params),
                    enum.word_at(req.gamma_index),
                    params,
                )
                s_conj, s_lam = self._slot_of[conj], self._slot_of[lam]
                slots = [s_conj] if s_conj == s_lam else [s_conj, s_lam]
                self._req_evals.append(("class_fn", tuple(slots), (s_conj, s_lam)))

        self._adapt = []
        for e, (v, w, i, j) in enumerate(all_entries(params)):
            value = approx_product_s(v, w, i, j, k, params).value
            terms = tuple((c, self._slot_of[word]) for word, c in value.terms)
            slots = tuple(sorted({s for _, s in terms}))
            self._adapt.append((slots, terms))

        self._threshold_sq = Fraction(1, k * k)
        self._req_memo: list[dict] = [dict() for _ in self._req_evals]
        self._adapt_memo: list[dict] = [dict() for _ in self._adapt]

    # membership pieces, all keyed on digit tuples

    def _req_ok(self, ridx: int, tau_digits) -> bool:
        kind, slots, payload = self._req_evals[ridx]
        key = tuple(tau_digits[s] for s in slots)
        memo = self._req_memo[ridx]
        hit = memo.get(key)
        if hit is not None:
            return hit
        disc = _DISC_VALUES
        if kind == "positivity":
            total = GaussianRational(Fraction(0), Fraction(0))
            for coeff, slot in payload:
                total = total + coeff * disc[tau_digits[slot]]
            if total.re >= 0:
                ok = total.im * total.im < self._threshold_sq
            else:
                ok = total.abs_sq() < self._threshold_sq
        else:
            s_conj, s_lam = payload
            diff = disc[tau_digits[s_conj]] - disc[tau_digits[s_lam]]
            ok = diff.abs_sq() < self._threshold_sq
        memo[key] = ok
        return ok

    def _adapt_ok(self, e: int, p_digit: int, tau_digits) -> bool:
        slots, terms = self._adapt[e]
        key = (p_digit, tuple(tau_digits[s] for s in slots))
        memo = self._adapt_memo[e]
        hit = memo.get(key)
        if hit is not None:
            return hit
        disc = _DISC_VALUES
        total = GaussianRational(Fraction(0), Fraction(0))
        for coeff, slot in terms:
            total = total + coeff * disc[tau_digits[slot]]
        diff = GaussianRational(_CORR_VALUES[p_digit] - total.re, -total.im)
        ok = diff.abs_sq() < self._threshold_sq
        memo[key] = ok
        return ok

    def trace_passes(self, tau_digits) -> bool:
        return all(self._req_ok(r, tau_digits) for r in range(len(self._req_evals)))

    def allowed_p_digits(self, e: int, tau_digits, h: int) -> tuple[bool, ...]:
        """Per correlation-grid digit: does entry e pass adaptedness at this trace?"""
        cp, _ = grid_counts(h)
        return tuple(self._adapt_ok(e, d, tau_digits) for d in range(cp))

    def is_member(self, digits) -> bool:
        n_p = self.layout.n_p
        tau_digits = digits[n_p:]
        if not self.trace_passes(tau_digits):
            return False
        for e in range(n_p):
            if not self._adapt_ok(e, digits[e], tau_digits):
                return False
        return True

    def scan(self, start: int, stop: int) -> Iterator[tuple[int, int, list[int]]]:
        """Yield (index, block height, digits) for every candidate in [start, stop]."""
        index = start
        while index <= stop:
            h, digits = self.layout.unrank(index)
            radix, old = self.layout._radices(h)
            block_end = self.layout.grid_size(h) - 1
            new_count = sum(1 for s, d in enumerate(digits) if d >= old[s])
            while index <= stop:
                yield index, h, digits
                index += 1
                # advance the odometer, skipping assignments with no new digit
                # (they belong to earlier blocks); such runs are short because
                # any wrapped digit lands on 0 only from a new top value.
                while True:
                    pos = self.layout.n_slots - 1
                    while pos >= 0:
                        d = digits[pos]
                        if d + 1 < radix[pos]:
                            digits[pos] = d + 1
                            if d + 1 >= old[pos] > d:
                                new_count += 1
                            break
                        digits[pos] = 0
                        if d >= old[pos] > 0:
                            new_count -= 1
                        pos -= 1
                    if pos < 0:
                        break  # block exhausted
                    if new_count > 0:
                        break
                if pos < 0:
                    break
            if index > stop:
                return


@functools.lru_cache(maxsize=None)
def membership_scanner(params: GroupParams, k: int) -> MembershipScanner:
    return MembershipScanner(params, k)


def enumerate_X(
    params: GroupParams, k: int, budget: int, start: int = 0
) -> Iterator[tuple[int, Candidate]]:
    """Stream (index, candidate) for every witnessed candidate with index in
    [start, budget], in increasing index order."""
    if budget < 0 or start < 0:
        raise ParameterError("budget and start index must be nonnegative")
    scanner = membership_scanner(params, k)
    for index, h, digits in scanner.scan(start, budget):
        if scanner.is_member(digits):
            yield index, scanner.layout.to_candidate(index, h, list(digits))

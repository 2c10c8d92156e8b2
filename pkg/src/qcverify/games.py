"""Nonlocal games, exact game values, and brute-force classical synchronous oracles."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ParameterError
from .fields import as_fraction
from .words import GroupParams

BRUTE_FORCE_GUARD = 10**6


def entry_index(params: GroupParams, v: int, w: int, i: int, j: int) -> int:
    """Row-major position of (v, w, i, j) in a flat correlation table."""
    n, m = params.n, params.m
    if not (1 <= v <= n and 1 <= w <= n and 1 <= i <= m and 1 <= j <= m):
        raise ParameterError(f"indices ({v},{w},{i},{j}) out of range for {params}")
    return ((v - 1) * n + (w - 1)) * m * m + (i - 1) * m + (j - 1)


def all_entries(params: GroupParams):
    rng_n = range(1, params.n + 1)
    rng_m = range(1, params.m + 1)
    return itertools.product(rng_n, rng_n, rng_m, rng_m)


@dataclass(frozen=True)
class Correlation:
    """A rational tuple p(i,j|v,w) in [0,1]^(n^2 m^2), stored row-major."""

    params: GroupParams
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        expected = self.params.n**2 * self.params.m**2
        if len(self.entries) != expected:
            raise ParameterError(f"expected {expected} entries, got {len(self.entries)}")
        for q in self.entries:
            if q < 0 or q > 1:
                raise ParameterError(f"correlation entry {q} outside [0, 1]")

    def __call__(self, v: int, w: int, i: int, j: int) -> Fraction:
        return self.entries[entry_index(self.params, v, w, i, j)]

    @classmethod
    def from_function(cls, params: GroupParams, fn) -> "Correlation":
        entries = [Fraction(0)] * (params.n**2 * params.m**2)
        for v, w, i, j in all_entries(params):
            entries[entry_index(params, v, w, i, j)] = as_fraction(fn(v, w, i, j))
        return cls(params, tuple(entries))


@dataclass(frozen=True)
class NonlocalGame:
    """A question distribution mu plus a dense accept table D over (v, w, i, j)."""

    params: GroupParams
    mu: tuple[tuple[tuple[int, int], Fraction], ...]
    accept: tuple[int, ...]  # dense 0/1 bits, row-major like Correlation

    def __post_init__(self) -> None:
        expected = self.params.n**2 * self.params.m**2
        if len(self.accept) != expected:
            raise ParameterError("accept table has wrong size")
        total = Fraction(0)
        for (v, w), q in self.mu:
            if not (1 <= v <= self.params.n and 1 <= w <= self.params.n):
                raise ParameterError(f"mu question pair ({v},{w}) out of range")
            if q < 0:
                raise ParameterError("mu values must be nonnegative")
            total += q
        if total != 1:
            raise ParameterError(f"mu must sum to exactly 1, got {total}")

    def D(self, v: int, w: int, i: int, j: int) -> int:
        return self.accept[entry_index(self.params, v, w, i, j)]

    @classmethod
    def build(
        cls,
        params: GroupParams,
        mu: Mapping[tuple[int, int], Fraction],
        accepting: Sequence[tuple[int, int, int, int]],
    ) -> "NonlocalGame":
        bits = [0] * (params.n**2 * params.m**2)
        for v, w, i, j in accepting:
            bits[entry_index(params, v, w, i, j)] = 1
        mu_items = tuple(sorted((pair, as_fraction(q)) for pair, q in mu.items()))
        return cls(params, mu_items, tuple(bits))


def game_value(game: NonlocalGame, p: Correlation) -> Fraction:
    """Exact value: sum over questions of mu(v,w) * sum of accepted p entries."""
    if game.params != p.params:
        raise ParameterError(f"game is over {game.params}, correlation over {p.params}")
    total = Fraction(0)
    m = game.params.m
    for (v, w), weight in game.mu:
        if weight == 0:
            continue
        block = Fraction(0)
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                if game.D(v, w, i, j):
                    block += p(v, w, i, j)
        total += weight * block
    return total


def is_synchronous(p: Correlation) -> bool:
    """True when p(i,j|v,v) = 0 for every v and all distinct i, j."""
    for v in range(1, p.params.n + 1):
        for i in range(1, p.params.m + 1):
            for j in range(1, p.params.m + 1):
                if i != j and p(v, v, i, j) != 0:
                    return False
    return True


def deterministic_correlation(assignment: Sequence[int], params: GroupParams) -> Correlation:
    """The correlation of a deterministic answer rule v -> assignment[v-1]."""
    if len(assignment) != params.n or any(not 1 <= a <= params.m for a in assignment):
        raise ParameterError(f"assignment must map [1,{params.n}] into [1,{params.m}]")
    return Correlation.from_function(
        params,
        lambda v, w, i, j: 1 if (assignment[v - 1] == i and assignment[w - 1] == j) else 0,
    )


def all_assignments(params: GroupParams):
    """All answer rules [n] -> [m] in lexicographic order (guarded)."""
    if params.m**params.n > BRUTE_FORCE_GUARD:
        raise ParameterError(
            f"m^n = {params.m**params.n} exceeds the brute-force guard {BRUTE_FORCE_GUARD}"
        )
    return itertools.product(range(1, params.m + 1), repeat=params.n)


def classical_sync_value(game: NonlocalGame) -> tuple[Fraction, tuple[int, ...]]:
    """Best deterministic synchronous value with a lexicographic-min witness."""
    best: Fraction | None = None
    witness: tuple[int, ...] | None = None
    for assignment in all_assignments(game.params):
        val = game_value(game, deterministic_correlation(assignment, game.params))
        if best is None or val > best:
            best, witness = val, assignment
    assert best is not None and witness is not None
    return best, witness


def mirror_game(params: GroupParams) -> NonlocalGame:
    """Uniform diagonal questions, accept equal answers."""
    mu = {(v, v): Fraction(1, params.n) for v in range(1, params.n + 1)}
    accepting = [
        (v, v, i, i) for v in range(1, params.n + 1) for i in range(1, params.m + 1)
    ]
    return NonlocalGame.build(params, mu, accepting)


def antimirror_game(params: GroupParams) -> NonlocalGame:
    """Uniform diagonal questions, accept distinct answers."""
    mu = {(v, v): Fraction(1, params.n) for v in range(1, params.n + 1)}
    accepting = [
        (v, v, i, j)
        for v in range(1, params.n + 1)
        for i in range(1, params.m + 1)
        for j in range(1, params.m + 1)
        if i != j
    ]
    return NonlocalGame.build(params, mu, accepting)

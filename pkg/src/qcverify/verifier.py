"""The semi-decision verifier: stream witnessed candidates, accept past 1/2.

The relaxation level comes from a pluggable modulus (the soundness of
acceptance relative to the true synchronous commuting value is exactly
the modulus's contract; no computable modulus is known, so it is an
input, recorded in every certificate).  Acceptance is exact rational
arithmetic and every certificate can be rechecked offline.
"""

from __future__ import annotations

import itertools
import subprocess
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .enumerator import Candidate, decode_candidate, enumerate_X, is_member_witnessed
from .errors import ModulusError, ParameterError
from .games import (
    Correlation,
    NonlocalGame,
    all_assignments,
    antimirror_game,
    deterministic_correlation,
    game_value,
    mirror_game,
)
from .simplex import solve_lp
from .traces import PartialTrace
from .words import GroupParams

SCHEMA_VERSION = 1
SUBSET_GUARD = 200_000


@dataclass(frozen=True)
class QcModulus:
    """A pluggable relaxation-level oracle (n, m) -> k >= 1.

    kinds: "constant" (fixed k0), "table" (explicit per-size map), or
    "external" (a command invoked as `cmd n m`, printing an integer).
    """

    kind: str
    k0: Optional[int] = None
    table: Optional[tuple[tuple[tuple[int, int], int], ...]] = None
    command: Optional[tuple[str, ...]] = None

    @classmethod
    def constant(cls, k0: int) -> "QcModulus":
        return cls(kind="constant", k0=int(k0))

    @classmethod
    def from_table(cls, mapping) -> "QcModulus":
        items = tuple(sorted(((int(n), int(m)), int(k)) for (n, m), k in mapping.items()))
        return cls(kind="table", table=items)

    @classmethod
    def external(cls, command: Sequence[str]) -> "QcModulus":
        return cls(kind="external", command=tuple(command))

    def k_for(self, n: int, m: int) -> int:
        if self.kind == "constant":
            k = self.k0
        elif self.kind == "table":
            k = dict(self.table or ()).get((n, m))
            if k is None:
                raise ModulusError(f"modulus table has no entry for ({n}, {m})")
        elif self.kind == "external":
            try:
                out = subprocess.run(
                    list(self.command) + [str(n), str(m)],
                    capture_output=True,
                    text=True,
                    check=True,
                    timeout=60,
                )
                k = int(out.stdout.strip())
            except (OSError, ValueError, subprocess.SubprocessError) as exc:
                raise ModulusError(f"external modulus failed: {exc}") from exc
        else:
            raise ModulusError(f"unknown modulus kind {self.kind!r}")
        if k is None or k < 1:
            raise ModulusError(f"modulus returned unusable level {k!r}")
        return k

    def describe(self) -> dict:
        if self.kind == "constant":
            return {"kind": "constant", "k": self.k0}
        if self.kind == "table":
            return {"kind": "table", "entries": [[n, m, k] for (n, m), k in self.table]}
        return {"kind": "external", "command": list(self.command or ())}


@dataclass(frozen=True)
class GameFamily:
    """A deterministic, total mapping from input strings to games."""

    name: str
    generator: Callable[[str], NonlocalGame]

    def game_for(self, z: str) -> NonlocalGame:
        try:
            return self.generator(z)
        except ParameterError:
            raise
        except Exception as exc:
            raise ParameterError(f"family {self.name!r} failed on {z!r}: {exc}") from exc


def _toy_generator(z: str) -> NonlocalGame:
    params = GroupParams(2, 2)
    return mirror_game(params) if z.endswith("1") else antimirror_game(params)


TOY_FAMILY = GameFamily("toy", _toy_generator)

FAMILIES: dict[str, GameFamily] = {TOY_FAMILY.name: TOY_FAMILY}


def get_family(name: str) -> GameFamily:
    family = FAMILIES.get(name)
    if family is None:
        raise ParameterError(f"unknown game family {name!r} (known: {sorted(FAMILIES)})")
    return family


@dataclass(frozen=True)
class VerdictCertificate:
    """Self-contained acceptance evidence, recheckable offline."""

    schema_version: int
    z: str
    params: GroupParams
    k: int
    index: int
    p: Correlation
    tau: PartialTrace
    value: Fraction
    modulus: dict


@dataclass(frozen=True)
class Accept:
    certificate: VerdictCertificate


@dataclass(frozen=True)
class BudgetExhausted:
    next_index: int


ACCEPT_THRESHOLD = Fraction(1, 2)


def verify(
    z: str,
    family: GameFamily,
    modulus: QcModulus,
    budget: int,
    start: int = 0,
) -> Accept | BudgetExhausted:
    """Scan candidate indices in [start, budget) for an acceptance witness.

    Accepts at the smallest index whose witnessed candidate gives the game
    an exact value above 1/2; otherwise reports where to resume.
    """
    if budget < 0 or start < 0:
        raise ParameterError("budget and start must be nonnegative")
    game = family.game_for(z)
    params = game.params
    k = modulus.k_for(params.n, params.m)
    if start >= budget:
        return BudgetExhausted(next_index=max(start, budget))
    for index, candidate in enumerate_X(params, k, budget - 1, start=start):
        value = game_value(game, candidate.p)
        if value > ACCEPT_THRESHOLD:
            certificate = VerdictCertificate(
                schema_version=SCHEMA_VERSION,
                z=z,
                params=params,
                k=k,
                index=index,
                p=candidate.p,
                tau=candidate.tau,
                value=value,
                modulus=modulus.describe(),
            )
            return Accept(certificate)
    return BudgetExhausted(next_index=budget)


def recheck_certificate(certificate: VerdictCertificate, family: GameFamily) -> bool:
    """Deterministically replay every claim in the certificate; False on any mismatch."""
    try:
        game = family.game_for(certificate.z)
        if game.params != certificate.params:
            return False
        if game_value(game, certificate.p) != certificate.value:
            return False
        if not certificate.value > ACCEPT_THRESHOLD:
            return False
        if not is_member_witnessed(certificate.p, certificate.tau, certificate.k):
            return False
        decoded = decode_candidate(certificate.index, certificate.k, certificate.params)
        return decoded.p == certificate.p and decoded.tau == certificate.tau
    except Exception:
        return False


# -- empirical distance to the classical synchronous hull -------------------------


def stability_probe(
    p: Correlation, depth: int
) -> tuple[Fraction, tuple[tuple[tuple[int, ...], Fraction], ...]]:
    """Best sup-norm distance from p to convex mixtures of at most `depth`
    deterministic synchronous correlations, by exact linear programming.

    Every mixture lies in the synchronous quantum-commuting set, so the
    optimum is a certified upper bound on the distance to that set.
    """
    if depth < 1:
        raise ParameterError("depth must be >= 1")
    params = p.params
    assignments = list(all_assignments(params))
    tables = [deterministic_correlation(f, params).entries for f in assignments]
    size = min(depth, len(assignments))
    n_subsets = 1
    for t in range(size):
        n_subsets = n_subsets * (len(assignments) - t) // (t + 1)
    if n_subsets > SUBSET_GUARD:
        raise ParameterError(
            f"{n_subsets} support subsets exceed the guard {SUBSET_GUARD}"
        )

    n_entries = len(p.entries)
    best: Optional[Fraction] = None
    best_witness: tuple[tuple[tuple[int, ...], Fraction], ...] = ()
    for subset in itertools.combinations(range(len(assignments)), size):
        # Variables: one weight per chosen assignment, then the sup-norm bound t.
        c = [Fraction(0)] * size + [Fraction(1)]
        a_ub: list[list[Fraction]] = []
        b_ub: list[Fraction] = []
        for e in range(n_entries):
            row_hi = [tables[f][e] for f in subset] + [Fraction(-1)]
            a_ub.append(row_hi)
            b_ub.append(p.entries[e])
            row_lo = [-tables[f][e] for f in subset] + [Fraction(-1)]
            a_ub.append(row_lo)
            b_ub.append(-p.entries[e])
        a_eq = [[Fraction(1)] * size + [Fraction(0)]]
        b_eq = [Fraction(1)]
        result = solve_lp(c, a_ub, b_ub, a_eq, b_eq)
        assert result.status == "optimal" and result.value is not None
        if best is None or result.value < best:
            best = result.value
            assert result.solution is not None
            best_witness = tuple(
                (assignments[f], weight)
                for f, weight in zip(subset, result.solution[:size])
                if weight > 0
            )
            if best == 0:
                break
    assert best is not None
    return best, best_witness

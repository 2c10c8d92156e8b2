"""Normal-form words in the free product of n cyclic groups of order m.

A word is a tuple of (generator, exponent) syllables with generators in
[1, n], exponents in [1, m-1], and no two adjacent syllables sharing a
generator.  The empty tuple is the identity.  All operations are pure
functions on these immutable tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ParameterError

Syllable = tuple[int, int]
Word = tuple[Syllable, ...]

IDENTITY: Word = ()


@dataclass(frozen=True, order=True)
class GroupParams:
    """Question count n and generator order m, both at least 2."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 2 or self.m < 2:
            raise ParameterError(f"need n >= 2 and m >= 2, got n={self.n}, m={self.m}")


def _check_generator(g: int, params: GroupParams) -> None:
    if not 1 <= g <= params.n:
        raise ParameterError(f"generator {g} out of range [1, {params.n}]")


def normalize(raw: Iterable[tuple[int, int]], params: GroupParams) -> Word:
    """Reduce an arbitrary syllable sequence to normal form.

    Exponents are taken mod m, zero-exponent syllables are dropped and
    adjacent syllables with equal generator are merged, to a fixpoint.
    """
    stack: list[list[int]] = []
    for g, e in raw:
        _check_generator(g, params)
        e %= params.m
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] = (stack[-1][1] + e) % params.m
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return tuple((g, e) for g, e in stack)


def is_normal(word: Word, params: GroupParams) -> bool:
    prev = 0
    for g, e in word:
        if not (1 <= g <= params.n and 1 <= e <= params.m - 1 and g != prev):
            return False
        prev = g
    return True


def word_mul(a: Word, b: Word, params: GroupParams) -> Word:
    """Product of two normal-form words (normal form of the concatenation)."""
    return normalize(a + b, params)


def word_inv(a: Word, params: GroupParams) -> Word:
    """Inverse: reversed syllables with complemented exponents."""
    return tuple((g, params.m - e) for g, e in reversed(a))


def word_conj(a: Word, g: Word, params: GroupParams) -> Word:
    """Conjugate g^-1 * a * g."""
    return word_mul(word_mul(word_inv(g, params), a, params), g, params)


def word_key(word: Word) -> tuple[int, tuple[int, ...]]:
    """Canonical sort key: syllable count, then flattened (gen, exp) lex order."""
    flat: list[int] = []
    for g, e in word:
        flat.append(g)
        flat.append(e)
    return (len(word), tuple(flat))


def _words_of_count(params: GroupParams, count: int) -> Iterator[Word]:
    """All normal-form words with exactly `count` syllables, in word_key order."""
    if count == 0:
        yield IDENTITY
        return

    def extend(prefix: list[Syllable]) -> Iterator[Word]:
        if len(prefix) == count:
            yield tuple(prefix)
            return
        last = prefix[-1][0] if prefix else 0
        for g in range(1, params.n + 1):
            if g == last:
                continue
            for e in range(1, params.m):
                prefix.append((g, e))
                yield from extend(prefix)
                prefix.pop()

    yield from extend([])


class WordEnumerator:
    """Deterministic enumeration g_0, g_1, ... of the whole group.

    Order: syllable count ascending, then lexicographic on the flattened
    (generator, exponent) sequence.  g_0 is the identity.
    """

    def __init__(self, params: GroupParams):
        self.params = params
        self._words: list[Word] = []
        self._index: dict[Word, int] = {}
        self._next_count = 0

    def _grow(self) -> None:
        for w in _words_of_count(self.params, self._next_count):
            self._index[w] = len(self._words)
            self._words.append(w)
        self._next_count += 1

    def word_at(self, i: int) -> Word:
        if i < 0:
            raise ParameterError("word index must be nonnegative")
        while len(self._words) <= i:
            self._grow()
        return self._words[i]

    def index_of(self, word: Word) -> int:
        if not is_normal(word, self.params):
            raise ParameterError(f"not a normal-form word: {word}")
        while self._next_count <= len(word):
            self._grow()
        return self._index[word]

    def first(self, count: int) -> list[Word]:
        if count < 0:
            raise ParameterError("count must be nonnegative")
        while len(self._words) < count:
            self._grow()
        return self._words[:count]


_ENUMERATORS: dict[GroupParams, WordEnumerator] = {}


def word_enumerator(params: GroupParams) -> WordEnumerator:
    enum = _ENUMERATORS.get(params)
    if enum is None:
        enum = _ENUMERATORS[params] = WordEnumerator(params)
    return enum


def enumerate_words(params: GroupParams, count: int) -> list[Word]:
    """The first `count` words of the canonical enumeration."""
    return word_enumerator(params).first(count)


def single(v: int, e: int, params: GroupParams) -> Word:
    """The word u_v^e (normalized, so e mod m == 0 gives the identity)."""
    return normalize([(v, e)], params)


def word_to_json(word: Word) -> list[list[int]]:
    return [[g, e] for g, e in word]


def word_from_json(data: Sequence[Sequence[int]], params: GroupParams) -> Word:
    return normalize([(int(g), int(e)) for g, e in data], params)

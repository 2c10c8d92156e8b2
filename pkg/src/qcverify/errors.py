"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument violates a documented precondition (range, mismatch, guard)."""


class TraceDomainError(KeyError):
    """A trace was evaluated at a word outside its stored domain."""

    def __init__(self, word):
        self.word = word
        super().__init__(f"trace has no value for word {list(map(list, word))}")


class NotATraceError(ValueError):
    """An allegedly exact trace produced an irrational or out-of-range correlation entry."""


class ModulusError(ValueError):
    """A modulus returned an unusable relaxation level (k < 1) or failed entirely."""

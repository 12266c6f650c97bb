"""Exception hierarchy shared by every entax module."""


class EntaxError(Exception):
    """Base class for all domain errors raised by entax."""


class NormalizationError(EntaxError, ValueError):
    """A state's probabilities or amplitudes do not have unit norm."""


class DegenerateStateError(EntaxError, ValueError):
    """The input describes no state at all (e.g. an all-zero amplitude matrix)."""


class BudgetExceeded(EntaxError):
    """A type-class enumeration or dimension cap would be exceeded."""

    def __init__(self, message, needed=None, budget=None):
        super().__init__(message)
        self.needed = needed
        self.budget = budget


class NotFound(EntaxError):
    """A search ran to completion without producing a witness.

    ``evaluations`` and ``best_margin`` are filled in by searches that
    track them, so callers can report how much work was done.
    """

    def __init__(self, message, evaluations=0, best_margin=None):
        super().__init__(message)
        self.evaluations = evaluations
        self.best_margin = best_margin

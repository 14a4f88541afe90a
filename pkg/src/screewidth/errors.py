"""Exception hierarchy shared across the library.

Everything raised on purpose derives from ScreewidthError so callers (and the
CLI) can distinguish domain failures from genuine bugs.  BudgetExceeded is
kept separate from verification failures: running out of search budget is not
the same thing as a refuted claim.
"""


class ScreewidthError(Exception):
    """Base class for all library errors."""


# --- graph construction -------------------------------------------------

class SelfLoopError(ScreewidthError):
    pass


class DisconnectedError(ScreewidthError):
    pass


class UnknownVertexError(ScreewidthError):
    pass


class BadParamsError(ScreewidthError):
    pass


class NotTwoValentError(ScreewidthError):
    pass


class NotABridgeError(ScreewidthError):
    pass


# --- tree-cut decompositions --------------------------------------------

class NotATreeError(ScreewidthError):
    pass


class BagsOverlapError(ScreewidthError):
    pass


class BagsMissVerticesError(ScreewidthError):
    pass


class UnknownLinkError(ScreewidthError):
    pass


class UnknownNodeError(ScreewidthError):
    pass


class BadPartitionError(ScreewidthError):
    pass


class NotIndependentError(ScreewidthError):
    pass


class EndpointNotFoundError(ScreewidthError):
    pass


class ShapeMismatchError(ScreewidthError):
    pass


class GraphMismatchError(ScreewidthError):
    """A certificate references a different graph (content hash mismatch)."""


# --- scrambles ----------------------------------------------------------

class EmptyEggError(ScreewidthError):
    pass


class DisconnectedEggError(ScreewidthError):
    pass


# --- chip firing --------------------------------------------------------

class NotEquivalentError(ScreewidthError):
    pass


class NonEffectiveIntermediateError(ScreewidthError):
    """A level-set chain produced a non-effective intermediate divisor.

    The theory says this should never happen for equivalent effective
    divisors; we refuse to guess a reordering and surface the failure.
    """


class NotPartitioningError(ScreewidthError):
    pass


# --- search / verification ----------------------------------------------

class BudgetExceededError(ScreewidthError):
    pass


class PreconditionFailedError(ScreewidthError):
    pass


class InconsistentCertificatesError(ScreewidthError):
    """Verified certificates contradict a proven inequality; fatal."""


class ClaimFailedError(ScreewidthError):
    """One or more corpus records failed verification."""

    def __init__(self, message, failed_ids=()):
        super().__init__(message)
        self.failed_ids = list(failed_ids)

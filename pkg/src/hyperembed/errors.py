"""Exception hierarchy shared by the construction and verification modules."""


class HyperembedError(Exception):
    """Base class for every error raised by this package."""


class InvalidHypergraphError(HyperembedError, ValueError):
    """Malformed hyperedge, vertex set or multiplicity table."""


class InvalidOrderError(InvalidHypergraphError):
    pass


class UnknownVertexError(InvalidHypergraphError, KeyError):
    pass


class PreconditionError(HyperembedError, ValueError):
    """An input does not satisfy the hypotheses required by a construction.

    ``violations`` lists human-readable descriptions of every failed check.
    """

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class IneligibleInstanceError(PreconditionError):
    pass


class UnsupportedInstanceError(HyperembedError):
    """The construction has no guarantee for this instance and refuses it.

    ``reason`` is a short machine-readable tag such as ``"greedy-stuck"``.
    """

    def __init__(self, message, reason="unsupported"):
        super().__init__(message)
        self.reason = reason


class ConstructionError(HyperembedError, RuntimeError):
    """An internal step failed although its hypotheses held.

    This signals a bug or a bypassed precondition; it is never expected on
    eligible inputs.
    """


class DetachmentError(ConstructionError):
    """No feasible split was found; ``partial`` holds the state reached."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class GreedyStuckError(ConstructionError):
    """The greedy coloring of edges meeting one new vertex ran out of colors."""


class NegativeFillError(ConstructionError):
    """Some color would need a negative number of all-new-vertex edges."""

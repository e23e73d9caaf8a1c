"""Exception types shared across the package."""


class EdgedomError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(EdgedomError):
    """Malformed graph, file, instance or argument."""


class OracleTooLargeError(EdgedomError):
    """Input exceeds the configured cap of an exponential-time oracle."""


class NotATreeError(InvalidInputError):
    """A tree was required but the graph has a cycle or is disconnected."""


class InvalidRootError(InvalidInputError):
    """The requested root vertex is not a leaf of the tree."""


class OperationInapplicableError(EdgedomError):
    """A family operation's precondition failed at the chosen site."""

    def __init__(self, message: str, clause: str = ""):
        super().__init__(message)
        self.clause = clause


class InvalidLabelledTreeError(EdgedomError):
    """A labelled tree violates its family's label invariants."""


class InvalidCertificateError(EdgedomError):
    """A witness set does not verify or is not minimum."""


class EncodingInfeasibleError(EdgedomError):
    """The assignment does not satisfy the instance, so no set is encoded."""

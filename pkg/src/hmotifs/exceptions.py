"""Exception hierarchy shared by the library and the CLI."""


class HypergraphError(ValueError):
    """Base class for invalid hypergraph input."""


class InputFormatError(HypergraphError):
    """A dataset file could not be parsed."""


class EmptyHypergraphError(HypergraphError):
    """The dataset contains no hyperedges."""


class ClassificationError(ValueError):
    """A hyperedge triple does not correspond to any h-motif."""


class ResourceLimitError(RuntimeError):
    """A configured size or memory cap was exceeded.

    Attributes:
        reached: amount of work or storage completed before the cap hit.
    """

    def __init__(self, message, reached=None):
        super().__init__(message)
        self.reached = reached



class EnumerationAborted(RuntimeError):
    """An instance sink failed; ``emitted`` instances were delivered before."""

    def __init__(self, message, emitted):
        super().__init__(message)
        self.emitted = emitted

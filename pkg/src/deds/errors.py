"""Exception types shared across the package."""


class DedsError(Exception):
    """Base class for all package-specific errors."""


class InputError(DedsError):
    """Malformed or inconsistent input (files, parameters, constructions)."""


class GraphFormatError(InputError):
    """A graph / solution / decomposition text file could not be parsed."""


class MalformedSolutionError(InputError):
    """A solution references arcs that do not exist in the instance."""


class NoEdgeCoverError(DedsError):
    """An edge cover was requested for a graph with an isolated vertex."""


class ResourceLimitError(DedsError):
    """A configured work or memory ceiling was exceeded (not a 'no' answer)."""


class WrongEngineError(DedsError):
    """An engine was invoked outside the (p,q) range it supports."""


class DecompositionError(InputError):
    """A tree decomposition violates one of its defining properties."""

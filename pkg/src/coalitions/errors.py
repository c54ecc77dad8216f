"""Exception types shared by the library and the command line."""


class CoalitionError(Exception):
    """Base class for every error raised by this package."""


class GraphParseError(CoalitionError, ValueError):
    """A graph, partition or config file could not be parsed."""


class DomainError(CoalitionError, ValueError):
    """Arguments fall outside an operation's domain."""


class InvalidPartitionError(DomainError):
    """A partition is not a valid k-bounded partition of the game."""


class InstanceTooLargeError(DomainError):
    """A brute-force routine was asked to exceed its size guard."""


class NonConvergenceError(CoalitionError, RuntimeError):
    """An iterative solver exhausted its budget.

    ``stats`` carries whatever the solver had recorded when it gave up.
    """

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats

"""
Exceptions raised by the projection toolkit.
"""

__all__ = [
    "ProjectionError",
    "InputError",
    "InfeasibleError",
    "MaxIterExceededError",
    "ReturnsParseError",
    "EmptyReturnsFileError",
    "RaggedRowError",
    "NonNumericCellError",
]


class ProjectionError(Exception):
    pass


class InputError(ProjectionError, ValueError):
    """Malformed or non-finite input, out of range parameter, size guard."""


class InfeasibleError(ProjectionError):
    """The set {x : a'x <= b, x in simplex} is empty."""


class MaxIterExceededError(ProjectionError):
    """
    An iteration cap was hit.

    :param message: human readable reason
    :param diagnostic: short machine readable tag copied into the SolveReport
    :param sigma: last dual iterate, when there is one
    :param iterations: steps taken by the phase that gave up
    """

    def __init__(self, message, diagnostic="max_iter", sigma=None, iterations=0):
        ProjectionError.__init__(self, message)
        self.diagnostic = diagnostic
        self.sigma = sigma
        self.iterations = iterations


class ReturnsParseError(InputError):
    def __init__(self, message, line):
        InputError.__init__(self, f"line {line}: {message}")
        self.line = line


class EmptyReturnsFileError(ReturnsParseError):
    pass


class RaggedRowError(ReturnsParseError):
    pass


class NonNumericCellError(ReturnsParseError):
    pass

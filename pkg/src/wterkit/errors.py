"""Exception hierarchy.

Every error carries a stable ``code`` so the CLI can map it onto its exit
status without string matching.
"""


class WterError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 3


class ParseError(WterError):
    exit_code = 2

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidEdge(WterError):
    pass


class DuplicateEdge(WterError):
    pass


class MissingEdge(WterError):
    pass


class InvalidCut(WterError):
    pass


class InvalidInput(WterError):
    pass


class InvalidIndex(WterError):
    pass


class TooLargeForExact(WterError):
    pass


class InfeasibleDegree(WterError):
    pass


class CertificationFailed(WterError):
    pass


class AllocationInfeasible(WterError):
    pass


class NotBipartite(WterError):
    pass


class UnequalParts(WterError):
    pass


class CapacityExhausted(WterError):
    pass


class DensityTooLow(WterError):
    pass


class DensityTooHigh(WterError):
    pass


class IsolatedVertex(WterError):
    pass


class UnsupportedPattern(WterError):
    pass


class HittingSetFailed(WterError):
    pass


class AnchorUnavailable(WterError):
    pass


class BudgetExceeded(WterError):
    """An oracle was asked to solve an instance beyond its configured budget."""


class UsageError(WterError):
    """Bad command line or an unknown claim kind."""

    exit_code = 4

"""Exception hierarchy.

Every domain error derives from :class:`DiagnosticError` (itself a
``ValueError``), so callers can catch the whole family in one place. The CLI
maps these to exit code 1.
"""


class DiagnosticError(ValueError):
    """Base class for all domain errors raised by this package."""


class InvalidProbability(DiagnosticError):
    pass


class NoDiseasedSamples(DiagnosticError):
    pass


class NoHealthySamples(DiagnosticError):
    pass


class NoPositiveTests(DiagnosticError):
    pass


class NoNegativeTests(DiagnosticError):
    pass


class NoDetectableCases(DiagnosticError):
    pass


class Degenerate(DiagnosticError):
    pass


class NoTrials(DiagnosticError):
    pass


class InvalidGrid(DiagnosticError):
    pass


class InvalidCosts(DiagnosticError):
    pass


class OneClassOnly(DiagnosticError):
    pass


class TooFewSamples(DiagnosticError):
    pass


class EmptyCurve(DiagnosticError):
    pass


class IngestError(DiagnosticError):
    pass


class MissingColumn(IngestError):
    pass


class MalformedRow(IngestError):
    """A data row could not be parsed. ``row`` is the 1-based line number."""

    def __init__(self, row: int, reason: str):
        self.row = row
        self.reason = reason
        super().__init__(f"row {row}: {reason}")


class NonNumericScore(MalformedRow):
    pass

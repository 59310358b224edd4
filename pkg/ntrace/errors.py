"""Exception hierarchy shared by the library, the CLI and the HTTP API

Every error carries the process exit code used by the command line and the
HTTP status used by the JSON API, so both front-ends map failures the same way.
"""


class NtraceError(Exception):
    """Base class for all errors raised by ntrace"""
    exit_code = 3
    status_code = 422

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    @property
    def kind(self):
        return type(self).__name__

    def to_dict(self):
        payload = {'error': self.message, 'kind': self.kind}
        if self.details:
            payload['details'] = self.details
        return payload


# Usage / parse errors

class UsageError(NtraceError):
    exit_code = 2
    status_code = 400


class ParseError(UsageError):
    pass


class InvalidWeight(UsageError):
    pass


class UnknownSuite(UsageError):
    pass


class MatrixTooLarge(UsageError):
    pass


# Math-domain errors

class MathDomainError(NtraceError):
    pass


class NotPositive(MathDomainError):
    pass


class NotHermitian(MathDomainError):
    pass


class NoConvergence(MathDomainError):
    pass


class SpectrumMismatch(MathDomainError):
    pass


class AlphaOneZero(MathDomainError):
    pass


class NotConcave(MathDomainError):
    pass


class NotDominated(MathDomainError):
    pass


class DimensionMismatch(MathDomainError):
    pass


class IndexOutOfRange(MathDomainError):
    pass


class BadSpectrum(MathDomainError):
    pass


class GroundTooLarge(MathDomainError):
    pass


class IncompleteMeasure(MathDomainError):
    pass


class InvalidExponent(MathDomainError):
    pass


class ConcaveWeight(MathDomainError):
    pass


# Verification failures

class SearchExhausted(NtraceError):
    exit_code = 1
    status_code = 409


class InternalInconsistency(NtraceError):
    exit_code = 1
    status_code = 500

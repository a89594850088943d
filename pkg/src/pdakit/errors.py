"""Exception hierarchy shared by every pdakit module.

The CLI maps each family to an exit code, so new exceptions should subclass
one of the three category bases rather than ``PdaError`` directly.
"""


class PdaError(Exception):
    """Root of all pdakit errors."""


class DomainError(PdaError):
    """Parameters outside a construction's or formula's domain (exit 1)."""


class ParseError(PdaError):
    """Unreadable or structurally malformed input (exit 2)."""


class VerificationError(PdaError):
    """An array or a simulated delivery failed a correctness check (exit 3)."""


class BadParams(DomainError):
    pass


class Infeasible(DomainError):
    pass


class NotDivisible(DomainError):
    pass


class BlockNotFound(DomainError):
    pass


class UnknownSymbol(DomainError):
    pass


class TooLarge(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class MalformedArray(ParseError):
    pass


class InvalidArray(VerificationError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NoPerfectMatching(VerificationError):
    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class PostValidationFailed(VerificationError):
    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class NullSpaceExhausted(VerificationError):
    def __init__(self, message, packet=None):
        super().__init__(message)
        self.packet = packet


class RankDeficient(VerificationError):
    def __init__(self, message, user=None, block=None):
        super().__init__(message)
        self.user = user
        self.block = block

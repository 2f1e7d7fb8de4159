"""Exception types raised across the package."""


class CodeError(ValueError):
    """Base class for every error raised by perfcodes."""


class NotPrimePower(CodeError):
    pass


class IndexOutOfRange(CodeError):
    pass


class ZeroInverse(CodeError):
    pass


class LengthMismatch(CodeError):
    pass


class TooSmall(CodeError):
    pass


class TooLarge(CodeError):
    pass


class Empty(CodeError):
    pass


class ArityMismatch(CodeError):
    pass


class BadLength(CodeError):
    pass


class BadShape(CodeError):
    pass


class ZeroCoefficient(CodeError):
    pass


class NotPerfect(CodeError):
    pass


class BadVHPair(CodeError):
    pass


class BadPartition(CodeError):
    pass


class BadOrder(CodeError):
    pass


class NonlinearSigma(CodeError):
    pass


class ComponentLawViolation(CodeError):
    pass


class OuterNotPerfect(CodeError):
    pass


class LayoutMismatch(CodeError):
    pass


class NotPerfectResult(CodeError):
    """The union of components failed the covering check.

    ``certificate`` holds the offending word.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class RankTooHigh(CodeError):
    pass


class StructureViolation(CodeError):
    pass


class FormatError(CodeError):
    """Malformed input file."""


class NotQuasigroup(CodeError):
    pass

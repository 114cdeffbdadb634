"""Exception hierarchy shared by every module of the package."""


class NumsysError(Exception):
    """Base class for all library errors."""


class EmptyLanguage(NumsysError):
    pass


class FiniteLanguage(NumsysError):
    pass


class UnknownLetter(NumsysError, KeyError):
    pass


class NotInLanguage(NumsysError, ValueError):
    pass


class NotASublanguage(NumsysError):
    pass


class MorphismConflict(NumsysError):
    pass


class InvalidModulus(NumsysError, ValueError):
    pass


class NotStrictlyIncreasing(NumsysError, ValueError):
    pass


class NotIncreasing(NumsysError, ValueError):
    """A positional base sequence failed the strict-increase check."""


class ZeroTrailingCoefficient(NumsysError, ValueError):
    pass


class HorizonExceeded(NumsysError):
    pass


class NegativeValue(NumsysError, ValueError):
    pass


class NoSuitableAnchor(NumsysError):
    """No final state yields a base sequence expressing every state's counts."""


class NotPositional(NumsysError):
    pass


class RemainderClosureOverflow(NumsysError):
    pass


class NotExactlyPolynomial(NumsysError):
    pass


class UnsupportedGrowthClass(NumsysError):
    pass


class GoldenMismatch(NumsysError):
    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row

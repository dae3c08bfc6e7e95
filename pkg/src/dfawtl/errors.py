"""Exception hierarchy shared by all analyses."""


class DfaWtlError(Exception):
    """Base class for every error raised by this package."""


class InvalidAutomaton(DfaWtlError):
    """A raw description failed validation.

    ``issues`` holds every violation found, not just the first one.
    """

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


class UnknownStateError(DfaWtlError, KeyError):
    def __str__(self):
        return f"unknown state {self.args[0]!r}"


class LetterOutsideAlphabet(DfaWtlError, ValueError):
    pass


class BoundTooLarge(DfaWtlError, ValueError):
    pass


class PreconditionViolated(DfaWtlError):
    """An analysis was applied to a machine outside its domain."""


class AlphabetNotBinary(PreconditionViolated):
    pass


class NotConstant(PreconditionViolated):
    pass


class AlphabetMismatch(PreconditionViolated):
    pass

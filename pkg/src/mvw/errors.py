"""Exception hierarchy shared by all modules."""


class MvwError(Exception):
    """Base class for every error raised by this package."""


class MonoidError(MvwError, ValueError):
    pass


class AssociativityViolation(MonoidError):
    def __init__(self, x, y, z):
        super().__init__(f"({x}*{y})*{z} != {x}*({y}*{z})")
        self.witness = (x, y, z)


class IdentityViolation(MonoidError):
    pass


class RangeError(MonoidError):
    pass


class BudgetExceeded(MvwError):
    """A configured size cap was hit; ``found`` carries partial progress when known."""

    def __init__(self, message, found=None):
        super().__init__(message)
        self.found = found


class SizeBudgetExceeded(BudgetExceeded):
    pass


class CapExceeded(BudgetExceeded):
    pass


class ClassBudgetExceeded(BudgetExceeded):
    pass


class AssignmentBudgetExceeded(BudgetExceeded):
    pass


class GenerationBudgetExceeded(BudgetExceeded):
    pass


class ParseError(MvwError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnboundVariable(MvwError, KeyError):
    pass


class LetterAbsent(MvwError, ValueError):
    pass


class FormatError(MvwError, ValueError):
    pass


class PreconditionFailed(MvwError):
    pass


class AlignmentOrderMismatch(MvwError):
    pass


class ChainStepMismatch(MvwError):
    def __init__(self, step, before, after):
        super().__init__(f"substitution step {step} changed the image: {before} -> {after}")
        self.step = step
        self.images = (before, after)

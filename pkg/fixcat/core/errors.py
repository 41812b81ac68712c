"""
Exception taxonomy shared by every core module.

Non-termination is not an error: chain drivers return a NotStabilized report.
Errors that carry evidence keep it on `witness` in JSON-ready form.
"""


class FixcatError(Exception):
    """Base class; `witness` is optional supporting evidence."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.message = message
        self.witness = witness


class NonEnumerable(FixcatError):
    pass


class CapabilityMissing(FixcatError):
    pass


class BudgetExceeded(FixcatError):
    pass


class IllTypedInput(FixcatError, ValueError):
    pass


class TypeMismatch(IllTypedInput):
    """Composition of non-composable morphisms."""


class LatticeError(IllTypedInput):
    pass


class FunctorMismatch(FixcatError):
    pass


class ResolutionNotInvertible(FixcatError):
    pass


class UnitNotInvertible(FixcatError):
    pass


class ComparisonNotIso(FixcatError):
    pass


class CoactionNotIso(ComparisonNotIso):
    pass


class NonMonotoneTransfer(FixcatError):
    pass

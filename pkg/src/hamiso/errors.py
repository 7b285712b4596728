class HamisoError(Exception):
    pass


class PreconditionError(HamisoError, ValueError):
    """Inputs fall outside the range where an operation is defined."""


class SliceTooLarge(PreconditionError):
    pass


class AmbientTooLarge(PreconditionError):
    pass


class BudgetExceeded(PreconditionError):
    pass


class NotProfileSymmetric(HamisoError):
    pass


class NoValidR0(HamisoError):
    pass


class VerificationError(HamisoError):
    """An internal invariant that must never fail did fail."""

"""Exception types raised across the package."""


class NonhittingError(Exception):
    pass


class NonPrime(NonhittingError, ValueError):
    pass


class NotPrimePower(NonhittingError, ValueError):
    pass


class CapExceeded(NonhittingError, ValueError):
    pass


class DivisionByZero(NonhittingError, ZeroDivisionError):
    pass


class EvenCharacteristic(NonhittingError, ValueError):
    pass


class OddCharacteristic(NonhittingError, ValueError):
    pass


class SizeMismatch(NonhittingError, ValueError):
    pass


class NotInternalNucleus(NonhittingError, ValueError):
    pass


class IncompleteData(NonhittingError, ValueError):
    pass


class DegreeOutOfRange(NonhittingError, ValueError):
    pass


class FamilyInapplicable(NonhittingError, ValueError):
    pass


class NotMaximalArc(NonhittingError, ValueError):
    pass


class NoSuchConfiguration(NonhittingError, RuntimeError):
    pass


class BudgetExceeded(NonhittingError, RuntimeError):
    pass

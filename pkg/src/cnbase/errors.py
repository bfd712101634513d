"""Exception hierarchy shared by all cnbase modules."""


class CnbaseError(Exception):
    """Base class for all library errors."""


class NotPrime(CnbaseError):
    pass


class NotPrimePower(CnbaseError):
    pass


class NotCoprime(CnbaseError):
    pass


class NotIrreducible(CnbaseError):
    pass


class Reducible(NotIrreducible):
    """A polynomial required to be irreducible splits."""


class DivisionByZero(CnbaseError):
    pass


class ZeroElement(CnbaseError):
    pass


class NotADivisor(CnbaseError):
    pass


class OrderUnavailable(CnbaseError):
    """Requested root-of-unity order does not divide the group order."""


class MixedContext(CnbaseError):
    """Two operands live in different field contexts."""


class CharacteristicDividesK(CnbaseError):
    pass


class ZeroPolynomial(CnbaseError):
    pass


class NotMonic(CnbaseError):
    pass


class NotRegular(CnbaseError):
    """The pair (q, n) fails the regularity condition."""


class WrongParity(CnbaseError):
    pass


class NotExceptional(CnbaseError):
    pass


class NotInModule(CnbaseError):
    pass


class NotInSubfield(CnbaseError):
    pass


class TooLarge(CnbaseError):
    """An exhaustive operation exceeds its enumeration budget."""


class Unfactored(CnbaseError):
    """Integer factorization exceeded its time budget."""


class UnsupportedPair(CnbaseError):
    pass


class ExhaustedNoneFound(CnbaseError):
    """A search ran to completion without finding a qualifying element."""

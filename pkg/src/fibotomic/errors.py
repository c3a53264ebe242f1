"""Exception hierarchy shared by every module of the package."""


class FibotomicError(Exception):
    """Base class for all package errors."""


class DomainTooSmall(FibotomicError, ValueError):
    pass


class BadRange(FibotomicError, ValueError):
    pass


class BadInput(FibotomicError, ValueError):
    pass


class NotPrime(FibotomicError, ValueError):
    pass


class NotCoprime(FibotomicError, ValueError):
    pass


class DomainMismatch(FibotomicError, TypeError):
    """Operands live in different coefficient domains."""


class ModulusMismatch(FibotomicError, ValueError):
    pass


class InexactDivision(FibotomicError, ArithmeticError):
    """A polynomial division left a nonzero remainder."""


class OddTermPresent(FibotomicError, ValueError):
    pass


class NotRealResult(FibotomicError, ValueError):
    pass


class NotIntegral(FibotomicError, ValueError):
    pass


class ZeroPolynomial(FibotomicError, ValueError):
    pass


class DegreeTooSmall(FibotomicError, ValueError):
    pass


class NotMonic(FibotomicError, ValueError):
    pass


class NotInvertible(FibotomicError, ArithmeticError):
    pass


class InternalInvariantViolation(FibotomicError, AssertionError):
    """A computation contradicted a fact the library relies on."""

"""Exception hierarchy shared by every module."""


class HasseForgeError(Exception):
    """Base class for all library errors."""


# finite fields
class NonPrime(HasseForgeError, ValueError):
    pass


class Reducible(HasseForgeError, ValueError):
    pass


class DegreeMismatch(HasseForgeError, ValueError):
    pass


class FieldMismatch(HasseForgeError, ValueError):
    pass


class DivisionByZero(HasseForgeError, ZeroDivisionError):
    pass


class TooLarge(HasseForgeError, ValueError):
    def __init__(self, size, limit):
        super().__init__(f"{size} elements exceeds enumeration limit {limit}")
        self.size = size
        self.limit = limit


# Witt vectors
class ShapeMismatch(HasseForgeError, ValueError):
    pass


class UnsupportedBaseRing(HasseForgeError, TypeError):
    pass


class LengthTooShort(HasseForgeError, ValueError):
    pass


class WrongBaseField(HasseForgeError, ValueError):
    pass


# varieties / zeta reconstruction
class SingularCurve(HasseForgeError, ValueError):
    pass


class MissingCount(HasseForgeError, LookupError):
    def __init__(self, m):
        super().__init__(f"no point count stored for m={m}")
        self.m = m


class InsufficientCounts(HasseForgeError, ValueError):
    pass


class NonIntegerCoefficients(HasseForgeError, ValueError):
    pass


class SurplusCountMismatch(HasseForgeError, ValueError):
    pass


# spectra and regularized determinants
class RootFindingDiverged(HasseForgeError, ArithmeticError):
    pass


class Singular(HasseForgeError, ArithmeticError):
    pass


class IllConditioned(HasseForgeError, ArithmeticError):
    pass


class Pole(HasseForgeError, ArithmeticError):
    pass


class BadParameter(HasseForgeError, ValueError):
    pass


class BranchBoundary(HasseForgeError, ArithmeticError):
    pass


class IdentityViolated(HasseForgeError, AssertionError):
    def __init__(self, sample, lhs, rhs, relerr):
        super().__init__(
            f"zeta identity fails at s={sample}: lhs={lhs}, rhs={rhs}, relerr={relerr:.3e}")
        self.sample = sample
        self.lhs = lhs
        self.rhs = rhs
        self.relerr = relerr


class SpecParse(HasseForgeError, ValueError):
    pass

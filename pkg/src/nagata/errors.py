"""Exception hierarchy.

Every domain error derives from :class:`NagataError`; the command line maps
these to exit status 3 and prints the class name on stderr.
"""


class NagataError(Exception):
    """Base class for all domain errors raised by the package."""


# exact arithmetic
class MixedRadicand(NagataError, ValueError):
    pass


class NegativeRadicand(NagataError, ValueError):
    pass


class NotRepresentable(NagataError, ValueError):
    pass


class DivisionByZero(NagataError, ZeroDivisionError):
    pass


# lattice / cremona / cones
class DimensionMismatch(NagataError, ValueError):
    pass


class ClassSyntaxError(NagataError, ValueError):
    """Malformed divisor-class text; ``position`` is the 0-based offset."""

    def __init__(self, message, position=0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class IndexOutOfRange(NagataError, IndexError):
    pass


class RepeatedIndex(NagataError, ValueError):
    pass


class NumericalPrecondition(NagataError, ValueError):
    pass


class UnsupportedN(NagataError, ValueError):
    pass


class InvalidArgs(NagataError, ValueError):
    pass


# clusters
class InvalidParameter(NagataError, ValueError):
    pass


class InvalidCluster(NagataError, ValueError):
    pass


class NonTermination(NagataError, RuntimeError):
    pass


class NonIntegral(NagataError, ValueError):
    pass


# valuations
class ZeroPolynomial(NagataError, ValueError):
    pass


class TruncationCap(NagataError, RuntimeError):
    pass


class UnknownValue(NagataError, LookupError):
    """Raised when a quantity depends on a value of mu-hat outside the table."""


# interpolation
class BadPrime(NagataError, ValueError):
    pass


class DegenerateConfig(NagataError, RuntimeError):
    pass


class ResourceGuard(NagataError, RuntimeError):
    pass

"""Exception hierarchy shared by every module of the package."""


class G2CMError(Exception):
    """Base class for all errors raised by g2cm."""


# fields
class CompositeModulus(G2CMError, ValueError):
    pass


class EvenCharacteristic(G2CMError, ValueError):
    pass


class DivisionByZero(G2CMError, ZeroDivisionError):
    pass


# polynomials
class DivisionByZeroPoly(G2CMError, ZeroDivisionError):
    pass


class NonMonicIntegerDivisor(G2CMError, ValueError):
    pass


class CoefficientOverflow(G2CMError, OverflowError):
    pass


class DegreeCapExceeded(G2CMError, ValueError):
    pass


# curves and Jacobians
class BadDegree(G2CMError, ValueError):
    pass


class NotSquarefree(G2CMError, ValueError):
    pass


class DegreeSixUnsupported(G2CMError, ValueError):
    pass


class InvalidDivisor(G2CMError, ValueError):
    pass


class BoundExceeded(G2CMError, ValueError):
    pass


class InconsistentCounts(G2CMError, ValueError):
    pass


class NotAnnihilated(G2CMError, ValueError):
    pass


# CM algebra
class NotTotallyPositive(G2CMError, ValueError):
    pass


class DegenerateField(G2CMError, ValueError):
    pass


class IrrationalNorm(G2CMError, ValueError):
    pass


class CompositeNorm(G2CMError, ValueError):
    pass


class EvenNorm(G2CMError, ValueError):
    pass


class WeilViolation(G2CMError, ValueError):
    pass


class EvenEll(G2CMError, ValueError):
    pass


class EllNotPrime(G2CMError, ValueError):
    pass


# group analysis
class EllEqualsP(G2CMError, ValueError):
    pass


class NotCyclic(G2CMError):
    """The l-Sylow subgroup has rank >= 2, so no single generator exists."""


class Exhausted(G2CMError):
    """Random search ran out of trials without certifying a generator."""

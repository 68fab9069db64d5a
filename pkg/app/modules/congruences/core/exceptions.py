"""Typed errors raised across the congruences module"""


class CongruenceError(Exception):
    """Base class for every error the module raises on purpose."""


# --- p-adic layer ---
class PadicError(CongruenceError):
    pass


class DivisionByZero(PadicError):
    pass


class PrecisionExhausted(PadicError):
    """A result is not determined even modulo p."""


class InsufficientPrecision(PadicError):
    """A comparison asked for more digits than the operands carry."""

    def __init__(self, message: str, needed: int = 0, available: int = 0):
        super().__init__(message)
        self.needed = needed
        self.available = available


class NotPAdicInteger(PadicError):
    pass


class BaseDivisibleByP(PadicError):
    pass


class BernoulliDenominatorDivisibleByP(PadicError):
    pass


class InvalidPrime(CongruenceError):
    pass


# --- quadratic forms ---
class NotRepresentable(CongruenceError):
    pass


# --- sums ---
class ZeroParameter(CongruenceError):
    pass


# --- symbolic layer ---
class UnsupportedShift(CongruenceError):
    pass


class UnknownCertificate(CongruenceError):
    pass


class PoleAtPoint(CongruenceError):
    pass


# --- suite ---
class UnknownCheck(CongruenceError):
    pass


class NotApplicable(CongruenceError):
    pass

"""Exception types shared across the package."""


class DivisionByZero(ZeroDivisionError):
    """Raised when a rational function is built over the zero polynomial."""


class PoleAtPoint(ZeroDivisionError):
    """Raised when a rational function is evaluated at a root of its denominator."""


class InvalidParams(ValueError):
    """Parameters violate a verifier's preconditions (gcd, parity, primality...)."""


class InvalidModulus(ValueError):
    """Congruence requested modulo a constant (or zero) polynomial."""


class NotPAdicInteger(ValueError):
    """A rational with negative p-adic valuation was reduced modulo p^t."""

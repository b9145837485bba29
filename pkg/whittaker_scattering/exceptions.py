from typing import Optional


class WhittakerScatteringError(Exception):
    """Base exception for the Whittaker scattering toolkit."""
    pass

class IncompatibleModulusError(WhittakerScatteringError):
    """Raised when cyclotomic values from different fields Q(zeta_N) meet."""
    pass

class DivisionByZeroError(WhittakerScatteringError, ZeroDivisionError):
    """Raised when inverting an exact zero."""
    pass

class DomainError(WhittakerScatteringError, ValueError):
    """Raised when an argument lies outside an operation's domain."""
    pass

class DimensionMismatchError(WhittakerScatteringError):
    """Raised when matrix shapes do not fit an operation."""
    pass

class NormalizationError(WhittakerScatteringError):
    """Raised when a normalizing gamma value vanishes."""
    pass

class ConfigError(WhittakerScatteringError, ValueError):
    """Raised for an invalid analysis configuration."""
    pass

class PoleError(WhittakerScatteringError):
    """Raised when a rational function is evaluated at one of its poles."""

    def __init__(self, order: int, point: Optional[str] = None):
        self.order = order
        self.point = point
        where = f" at {point}" if point is not None else ""
        super().__init__(f"pole of order {order}{where}")

class IdentityViolation(WhittakerScatteringError):
    """Raised when an exact identity fails; carries the identity name and a witness."""

    def __init__(self, identity: str, witness: str):
        self.identity = identity
        self.witness = witness
        super().__init__(f"{identity} violated: {witness}")

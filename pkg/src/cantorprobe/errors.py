"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid numeric parameter (schedule ratio, exponent, zero slope...)."""


class RangeError(IndexError):
    """Address, level or depth outside the constructed range."""


class NotInSetError(ValueError):
    """A point lies in a removed gap, or is not a midpoint where one is required."""


class InjectivityError(ValueError):
    """The embedding maps two distinct addresses to the same value."""


class InsufficientScalesError(ValueError):
    """Fewer than three box-counting scales survived the window rule."""


class ResourceCapError(RuntimeError):
    """Requested work exceeds a configured size cap."""


class ConfigError(ValueError):
    """Malformed or unknown configuration entry."""


class CheckFailed(AssertionError):
    """A numerical inequality that must hold was violated."""

"""Exception types shared across the library."""


class WggError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGeometryError(WggError, ValueError):
    """Inputs are non-finite or violate a geometric precondition."""


class DegenerateCirclesError(InvalidGeometryError):
    """Two circles coincide, so their intersection is ill-defined."""


class InputFormatError(WggError, ValueError):
    """A file or configuration does not match its documented format."""


class ConsistencyError(WggError, RuntimeError):
    """Two computation paths that must agree produced different answers."""


class ConstructionFailure(WggError, RuntimeError):
    """A drawing construction could not be completed."""


class VerificationInternalError(WggError, RuntimeError):
    """An accepted witness certificate failed the brute-force self-check.

    This always indicates a tolerance bug in the verifier, never a property
    of the input, so it is raised loudly instead of being returned.
    """

"""Exception hierarchy shared by every module."""


class CMCKitError(Exception):
    pass


class InvalidInputError(CMCKitError, ValueError):
    pass


class DomainError(CMCKitError, ValueError):
    """A parameter point lies outside the surface's domain."""


class ImmersionDegeneracyError(CMCKitError, ArithmeticError):
    """The induced metric (nu^2) is numerically zero."""


class BranchPointError(ImmersionDegeneracyError):
    def __init__(self, location, message=None):
        self.location = complex(location)
        super().__init__(message or f"metric factor vanishes at w = {self.location:.6g}")


class PreconditionError(CMCKitError):
    pass


class ConsistencyError(CMCKitError, AssertionError):
    """Two computation paths that must agree did not."""

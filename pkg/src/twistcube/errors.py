"""Exception hierarchy shared by every twistcube module."""


class TwistCubeError(Exception):
    """Base class for all library errors."""


class UsageError(TwistCubeError, ValueError):
    """Bad index, bad length, or otherwise malformed input."""


class CapacityError(TwistCubeError):
    """A configured size cap (points, cones, grid) was exceeded."""

    def __init__(self, what, cap):
        self.what = what
        self.cap = cap
        super().__init__(f"{what} exceeds the configured cap of {cap}")


class ArithmeticOverflowError(TwistCubeError, OverflowError):
    """An intermediate value left the signed 64-bit range."""


class InconsistencyError(TwistCubeError, RuntimeError):
    """Checks that must agree did not. Always an implementation bug."""

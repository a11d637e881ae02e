"""
Error types raised by the box-ball toolkit
"""


class PBBSError(ValueError):
    """Base class for rejected inputs."""


class InvalidPathError(PBBSError):
    """Path text is empty or uses letters other than 1 and 2."""


class NotHighestError(PBBSError):
    """A highest path was required."""


class NegativeWeightError(PBBSError):
    """An operation defined for wt(p) >= 0 received a negative-weight path."""


class InvalidConfigurationError(PBBSError):
    """Configuration, rigging or angle data violates its invariants."""


class SizeGuardError(PBBSError):
    """An exhaustive computation was requested beyond its configured size."""


class PeriodCapExceeded(PBBSError):
    """Brute-force iteration did not return to the start within the cap."""

    def __init__(self, path: str, capacity: int, cap: int):
        super().__init__(
            f"T_{capacity} did not return to {path} within {cap} steps"
        )
        self.path = path
        self.capacity = capacity
        self.cap = cap

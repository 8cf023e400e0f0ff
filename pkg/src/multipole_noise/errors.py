"""Exception types shared across the package."""


class MultipoleError(Exception):
    """Base class for all package errors."""


class DomainError(MultipoleError, ValueError):
    """An argument lies outside the domain of a function."""


class PhysicalDivergenceError(DomainError):
    """The field is evaluated at the centre of a singular (Hankel) wave.

    Outgoing and converging spherical waves are singular at their centre,
    where the emitting or detecting atom sits, so the vacuum noise there is
    infinite rather than merely large.
    """

    def __init__(self, where="source"):
        self.where = where
        super().__init__(
            f"physical divergence at {where}: spherical Hankel waves are "
            f"singular at kr = 0, the vacuum noise is infinite there"
        )


class CalibrationError(MultipoleError):
    pass


class ThresholdNotFoundError(MultipoleError):
    pass


class ThresholdAmbiguityError(MultipoleError):
    def __init__(self, message, crossings):
        self.crossings = list(crossings)
        super().__init__(f"{message}; floor crossings near kr = {self.crossings}")


class UsageError(MultipoleError, ValueError):
    """Invalid user-level configuration (ranges, counts, flags)."""

"""Exception types shared across the package."""


class DaggerAlgError(Exception):
    pass


class NonElement(DaggerAlgError):
    """Value does not belong to the ring's carrier."""


class DimensionMismatch(DaggerAlgError):
    pass


class FlavorMismatch(DaggerAlgError):
    """Max-flavor norm requested over an Archimedean ring, or mixed flavors."""


class NotCokernelForm(DaggerAlgError):
    pass


class UnsupportedRing(DaggerAlgError):
    pass


class ZeroSampleElement(DaggerAlgError):
    pass


class TailDiverges(DaggerAlgError):
    """Tail majorant radius does not strictly dominate the evaluation radius."""


class NotStrictlySmaller(DaggerAlgError):
    """Polyradius comparison requires strict componentwise inequality."""


class UnitIdealWitnessMissing(DaggerAlgError):
    pass


class NonPositiveLowerBound(DaggerAlgError):
    pass


class TruncationTooSmall(DaggerAlgError):
    """A truncated homology verdict flipped between nearby truncation levels."""


class NotACover(DaggerAlgError):
    pass


class CoordinateOutOfDisk(DaggerAlgError):
    """A fiber coordinate lies outside the polydisk of the algebra."""


class ViolationWitness(DaggerAlgError):
    """An inequality that should always hold failed; carries the witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

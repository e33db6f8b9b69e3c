"""Exception hierarchy. Every error carries its class name for CLI reporting."""


class FreeIndexError(ValueError):
    @property
    def name(self) -> str:
        return type(self).__name__


class InvalidDistance(FreeIndexError):
    pass


class NonPositiveDistance(InvalidDistance):
    pass


class TriangleInequalityViolated(InvalidDistance):
    pass


class AlignedMetric(FreeIndexError):
    pass


class SamePoint(FreeIndexError):
    pass


class SingularSystem(FreeIndexError):
    pass


class NoIncidentFace(FreeIndexError):
    pass


class NonCanonicalMetric(FreeIndexError):
    pass


class WrongRegime(FreeIndexError):
    pass


class AlphaOutOfRange(FreeIndexError):
    pass


class CertificationError(RuntimeError):
    """A proof inequality that must hold for the witness construction failed."""

"""Exception hierarchy shared by every module of the package."""


class CurvexError(Exception):
    """Base class; ``name`` is what the CLI reports."""

    @property
    def name(self):
        return type(self).__name__


class SizeLimitExceeded(CurvexError, ValueError):
    pass


class DeadlineExceeded(CurvexError, TimeoutError):
    pass


class NotAnAutomorphism(CurvexError, ValueError):
    pass


class MixedOrientation(CurvexError, ValueError):
    pass


class EmptyCoverSet(CurvexError, ValueError):
    pass


class NonHyperbolicType(CurvexError, ValueError):
    pass


class InvalidCut(CurvexError, ValueError):
    pass


class WrongType(CurvexError, ValueError):
    pass


class DepthLimitExceeded(CurvexError, ValueError):
    pass


class ModulusLimitExceeded(CurvexError, ValueError):
    pass


class DivisibilityError(CurvexError, ValueError):
    pass


class MissingFiberMetadata(CurvexError, ValueError):
    pass


class MixedFlavor(CurvexError, ValueError):
    pass


class InvalidCoordinate(CurvexError, ValueError):
    pass


class NeighborhoodTooLarge(CurvexError, ValueError):
    pass


class VertexSetMismatch(CurvexError, ValueError):
    pass


class ProjectionMismatch(CurvexError, RuntimeError):
    pass


class NoUniqueTop(CurvexError, ValueError):
    pass


class UnsupportedInput(CurvexError, ValueError):
    pass

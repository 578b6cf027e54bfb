"""Exception hierarchy for the kernel.

Every error raised on a domain violation derives from `GeometryError`, so
callers (and the CLI) can separate geometric failures from bad input.
"""


class GeometryError(ValueError):
    """Base class for all geometric precondition and domain failures."""


class ZeroVector(GeometryError):
    pass


class NotNegative(GeometryError):
    """A point was required to lie in the ball."""


class DegenerateSubspace(GeometryError):
    """The form restricted to a subspace is degenerate (or the vectors are dependent)."""


class SignatureViolation(GeometryError):
    pass


class BaseMismatch(GeometryError):
    pass


class DegeneratePlane(GeometryError):
    pass


class CoincidentPoints(GeometryError):
    pass


class NotOnGeodesic(GeometryError):
    pass


class NotTangent(NotOnGeodesic):
    pass


class NotUnitTangent(GeometryError):
    pass


class NonpositiveAlpha(GeometryError):
    pass


class PolarPoint(GeometryError):
    pass


class OrthogonalPair(GeometryError):
    pass


class IndefiniteFailure(GeometryError):
    pass


class NoCommonRealPlane(GeometryError):
    pass


class CollinearInput(GeometryError):
    pass


class NotOnFlat(GeometryError):
    pass


class NotOnSpine(GeometryError):
    pass


class NonUnitPhase(GeometryError):
    pass


class OnSpine(GeometryError):
    pass


class NotOnBisector(GeometryError):
    pass


class ParameterOutOfRange(GeometryError):
    pass


class NoSignChange(GeometryError):
    pass


class VertexInput(GeometryError):
    pass


class CommonFlatExists(GeometryError):
    pass


class DependentSpan(GeometryError):
    pass


class ClassificationMismatch(GeometryError):
    """The closed-form tangent classification disagrees with brute-force closure."""

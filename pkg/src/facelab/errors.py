"""Exception hierarchy.

Every error raised on purpose by facelab derives from :class:`FacelabError`, so
callers (and the CLI) can separate input/precondition problems from bugs.
"""


class FacelabError(ValueError):
    """Base class for all facelab errors."""


# complex_core
class EmptyInput(FacelabError):
    pass


class MalformedToken(FacelabError):
    pass


class FaceNotInComplex(FacelabError):
    pass


class ApexCollision(FacelabError):
    pass


# homology_engine / manifold_check
class NotASubcomplex(FacelabError):
    pass


class NotAManifold(FacelabError):
    pass


class NotConnected(FacelabError):
    pass


class NotOrientable(FacelabError):
    pass


class ClosedManifold(FacelabError):
    pass


class NotPure(FacelabError):
    pass


# enumerative
class ProfileMismatch(FacelabError):
    pass


class NotStartingAtOne(FacelabError):
    pass


class DimensionTooSmall(FacelabError):
    pass


class OddDimension(FacelabError):
    pass


# artinian_oracle
class FieldTooSmall(FacelabError):
    pass


class LsopFailure(FacelabError):
    def __init__(self, message, seeds=()):
        super().__init__(message)
        self.seeds = tuple(seeds)


class NotApplicable(FacelabError):
    pass


class NotSphereOrBall(FacelabError):
    pass


# surgery_lab
class NotAFacet(FacelabError):
    pass


class VertexClash(FacelabError):
    pass


class ManifoldViolation(FacelabError):
    pass


class DistanceTooSmall(FacelabError):
    pass


class NotMissingFacet(FacelabError):
    pass


class PieceNotManifold(FacelabError):
    pass


class PreconditionFailed(FacelabError):
    pass


class UnexpectedBase(FacelabError):
    """A decomposition ended on a base that the structure theorems rule out."""


class InvalidParams(FacelabError):
    pass

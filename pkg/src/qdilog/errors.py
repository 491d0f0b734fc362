"""Exception hierarchy shared by all evaluators."""


class QdilogError(Exception):
    """Base class for every error raised by the package."""


class DomainError(QdilogError, ValueError):
    """An argument lies outside the region where the operation is defined."""


class BranchCut(DomainError):
    """Argument on a branch cut with no side specified."""


class ZeroIndex(DomainError):
    """A pole index n = 0 was requested."""


class VanishingFactor(DomainError):
    """A factor of an infinite product is exactly zero."""


class PoleProximity(DomainError):
    """Evaluation point too close to a pole of the Borel transform."""


class PoleHit(DomainError):
    """Evaluation point is a pole of the quantum dilogarithm."""


class CircleOverlapsPole(DomainError):
    """A residue circle encloses or touches a second pole."""


class RayHitsPole(DomainError):
    """A Laplace ray passes within the exclusion radius of a pole."""


class SectorError(DomainError):
    """The ray direction gives no exponential decay for this tau."""


class NonConvergence(QdilogError, ArithmeticError):
    """A quadrature or series exhausted its budget before reaching tolerance."""


class UnknownCheck(QdilogError, KeyError):
    """A verification check name is not registered."""

"""Exception hierarchy shared by all modules."""


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class TooFewVertices(GeometryError):
    pass


class NotConvex(GeometryError):
    pass


class DuplicateVertex(GeometryError):
    pass


class NonFiniteCoordinate(GeometryError):
    pass


class ParallelOverlap(GeometryError):
    """The line contains the whole segment, so the intersection is not a point."""


class DegenerateAngle(GeometryError):
    pass


class NotInscribed(GeometryError):
    pass


class NotCircumscribed(GeometryError):
    pass


class AngleConditionViolated(GeometryError):
    pass


class LineNotSupporting(GeometryError):
    pass


class NotAdmissible(ValueError):
    pass


class EpsTooLarge(ValueError):
    pass


class ParamsTooLarge(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class NoConvergence(RuntimeError):
    pass


class DocumentSyntaxError(ValueError):
    """Malformed polygon or result document."""

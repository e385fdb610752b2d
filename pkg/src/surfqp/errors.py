"""Exception hierarchy shared by all modules."""


class SurfQPError(Exception):
    """Base class for every error raised by this package."""


class ParseError(SurfQPError, ValueError):
    """A JSON document does not conform to the expected schema.

    ``location`` is a JSON-pointer-like string such as ``triangles[2][1]``.
    """

    def __init__(self, message, location=""):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class TriangulationError(SurfQPError, ValueError):
    """The combinatorial map is not a valid (T3) ideal triangulation."""


class QuiverError(SurfQPError, ValueError):
    """A quiver violates the structural invariants required by an operation."""


class PreconditionError(SurfQPError, ValueError):
    """An operation was called outside its documented precondition."""


class HypothesisError(PreconditionError):
    """Neither (star) nor (diamond with scalar product != 1) holds."""


class DegreeOverflowError(SurfQPError, ValueError):
    """An element exceeds the truncation degree of a TruncatedAlgebra."""


class OracleMismatchError(SurfQPError, AssertionError):
    """Two independent computations disagree. This signals a bug."""

"""Jacobian algebras of quivers with potential from triangulated punctured surfaces."""

from .errors import (
    DegreeOverflowError,
    HypothesisError,
    OracleMismatchError,
    ParseError,
    PreconditionError,
    QuiverError,
    SurfQPError,
    TriangulationError,
)
from .path_algebra import (
    Path,
    PathVector,
    ScalarAssignment,
    TruncatedAlgebra,
    jacobian_relations,
    multiply,
    normal_form,
    potential,
    truncated_quotient,
)
from .quiver import Quiver, adjacency_quiver, quiver_conditions
from .surface import (
    MarkedSurface,
    Triangulation,
    add_puncture,
    condition_report,
    nice_triangulation,
    once_punctured_genus,
    parse_triangulation,
    puncture_cycles,
    sphere_base,
    validate,
)

__version__ = "0.1.0"

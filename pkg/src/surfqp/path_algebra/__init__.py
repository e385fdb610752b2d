from .paths import (
    Path,
    PathVector,
    ScalarAssignment,
    arrow_path,
    compose_paths,
    concat,
    cyclic_derivative,
    jacobian_relations,
    make_path,
    path_target,
    potential,
    trivial,
)
from .quotient import TruncatedAlgebra, default_truncation, multiply, normal_form, truncated_quotient

__all__ = [
    "Path",
    "PathVector",
    "ScalarAssignment",
    "TruncatedAlgebra",
    "arrow_path",
    "compose_paths",
    "concat",
    "cyclic_derivative",
    "default_truncation",
    "jacobian_relations",
    "make_path",
    "multiply",
    "normal_form",
    "path_target",
    "potential",
    "trivial",
    "truncated_quotient",
]

import pytest

from surfqp import adjacency_quiver, once_punctured_genus, sphere_base
from surfqp.path_algebra import ScalarAssignment, truncated_quotient

NAMED = {
    "torus": lambda: once_punctured_genus(1),
    "sphere4": lambda: sphere_base(4),
    "sphere5": lambda: sphere_base(5),
    "sphere6": lambda: sphere_base(6),
}


@pytest.fixture(scope="session")
def named():
    """name -> (triangulation, quiver, scalars, truncated algebra at default N)."""
    out = {}
    for name, make in NAMED.items():
        t = make()
        q = adjacency_quiver(t)
        c = ScalarAssignment.default(q)
        out[name] = (t, q, c, truncated_quotient(q, c))
    return out

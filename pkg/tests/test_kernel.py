import os
import subprocess
import sys

import numpy as np
import pytest

from surfqp import adjacency_quiver, once_punctured_genus, sphere_base
from surfqp.path_algebra import _backend, _kernel_py


def _run(kmod, q, N, ns):
    return kmod.binomial_classes(q.f, q.g, q.n, q.g_orbit_of, q.n_vertices, N, ns)


@pytest.mark.skipif(_backend.compiled is None, reason="compiled kernel not built")
@pytest.mark.parametrize("make, N", [(lambda: sphere_base(4), 7), (lambda: once_punctured_genus(1), 11), (lambda: sphere_base(6), 6)])
def test_compiled_matches_python(make, N):
    q = adjacency_quiver(make())
    ns = len(q.g_orbits)
    r1, e1, d1, c1 = _run(_kernel_py, q, N, ns)
    r2, e2, d2, c2 = _run(_backend.compiled, q, N, ns)
    # same partition into classes
    first = {}
    for x, (a, b) in enumerate(zip(r1.tolist(), r2.tolist())):
        assert first.setdefault(a, b) == b
    assert len(set(r1.tolist())) == len(set(r2.tolist()))
    assert np.array_equal(d1[r1].astype(bool), d2[r2].astype(bool))
    # relative weights between members agree
    for x in range(len(r1)):
        y = int(r1[x])
        assert np.array_equal(e1[x] - e1[y], e2[x] - e2[y])
    assert bool(c1) == bool(c2)


def test_path_counts():
    assert _kernel_py.total_paths(3, 6, 2) == 3 + 6 + 12
    assert _kernel_py.path_base(3, 6, 2) == 9


def test_pure_python_switch():
    env = dict(os.environ, SURFQP_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from surfqp.path_algebra import _backend; print(_backend.BACKEND)"],
        capture_output=True, text=True, env=env,
    )
    assert out.stdout.strip() == "python"
    with pytest.raises(ValueError):
        _backend.get_kernel("fortran")

from fractions import Fraction

import pytest

from surfqp import ParseError, PreconditionError, adjacency_quiver, once_punctured_genus, sphere_base
from surfqp.path_algebra import (
    Path,
    PathVector,
    ScalarAssignment,
    concat,
    cyclic_derivative,
    jacobian_relations,
    make_path,
    potential,
)


@pytest.mark.parametrize(
    "make, terms",
    [(lambda: once_punctured_genus(1), 3), (lambda: sphere_base(4), 8), (lambda: sphere_base(6), 14)],
)
def test_potential_term_counts(make, terms):
    q = adjacency_quiver(make())
    w = potential(q, ScalarAssignment.default(q))
    assert len(w) == terms == len(q.f_orbits) + len(q.g_orbits)
    for p, c in w.items():
        assert p.arrows[0] == min(p.arrows) or c == 1
        assert q.tgt[p.arrows[-1]] == p.source


def test_potential_torus_shape():
    q = adjacency_quiver(once_punctured_genus(1))
    w = potential(q, ScalarAssignment((Fraction(5),)))
    lengths = sorted((p.length, c) for p, c in w.items())
    assert lengths == [(3, 1), (3, 1), (6, -5)]


def test_scalar_errors():
    q = adjacency_quiver(sphere_base(4))
    with pytest.raises(PreconditionError):
        potential(q, ScalarAssignment((1, 2, 3)))
    with pytest.raises(PreconditionError):
        ScalarAssignment((1, 0))
    with pytest.raises(ParseError):
        ScalarAssignment.parse("1,x")
    assert ScalarAssignment.parse("1/2, 3").values == (Fraction(1, 2), Fraction(3))
    assert ScalarAssignment.default(q).values == (2, 3, 5, 7)


def test_cyclic_derivative_examples():
    q = adjacency_quiver(sphere_base(6))
    a = 0
    tri = PathVector.of(Path(q.src[a], (a, q.f[a], q.f[q.f[a]])))
    assert cyclic_derivative(q, tri, a) == PathVector.of(Path(q.tgt[a], (q.f[a], q.f[q.f[a]])))
    other = next(b for b in q.arrows if b not in (a, q.f[a], q.f[q.f[a]]))
    assert cyclic_derivative(q, tri, other).is_zero()
    cyc = PathVector.of(Path(q.src[a], q.g_run(a, q.n[a])), 7)
    assert cyclic_derivative(q, cyc, a) == PathVector.of(Path(q.tgt[a], q.g_run(q.g[a], q.n[a] - 1)), 7)
    with pytest.raises(PreconditionError):
        cyclic_derivative(q, PathVector.of(Path(q.src[a], (a,))), a)


def test_cyclic_derivative_counts_every_occurrence():
    q = adjacency_quiver(once_punctured_genus(1))
    a = 0
    # the full g-cycle visits each arc twice, so a 12-step loop holds a twice
    loop = PathVector.of(Path(q.src[a], q.g_run(a, 12)))
    assert sum(cyclic_derivative(q, loop, a).terms.values()) == 2


@pytest.mark.parametrize(
    "make, count, high",
    [(lambda: once_punctured_genus(1), 6, 5), (lambda: sphere_base(4), 12, 2), (lambda: sphere_base(6), 24, 3)],
)
def test_jacobian_relations(make, count, high):
    q = adjacency_quiver(make())
    c = ScalarAssignment.default(q)
    rels = jacobian_relations(q, c)
    assert len(rels) == count
    for a, r in enumerate(rels):
        assert r.lowest_degree == 2
        assert sorted(p.length for p in r) == sorted([2, high])
        assert r[Path(q.tgt[a], (q.f[a], q.f[q.f[a]]))] == 1
        assert r[Path(q.tgt[a], q.g_run(q.g[a], q.n[a] - 1))] == -c.for_arrow(q, a)


def test_pathvector_arithmetic_and_json():
    q = adjacency_quiver(sphere_base(4))
    p = make_path(q, (0, q.f[0]))
    x = PathVector({p: Fraction(1, 3), Path(0, ()): 2})
    assert (x - x).is_zero() and x == x.copy()
    assert (x * 0).is_zero() and (3 * x)[p] == 1
    assert PathVector.from_json(x.to_json(), q) == x
    assert x.to_json_obj()[0] == {"coefficient": "2", "source": 0, "arrows": []}
    with pytest.raises(ParseError):
        PathVector.from_json('[{"coefficient": "1/0", "source": 0, "arrows": []}]')
    with pytest.raises(ParseError):
        PathVector.from_json('[{"coefficient": "1", "source": 0, "arrows": [0, 0]}]', q)
    with pytest.raises(ValueError):
        make_path(q, (0, 0))


def test_concat_zero_when_not_composable():
    q = adjacency_quiver(sphere_base(4))
    a = PathVector.of(Path(q.src[0], (0,)))
    e_far = PathVector.of(Path(q.src[0], ()))
    if q.tgt[0] != q.src[0]:
        assert concat(q, a, e_far).is_zero()
    assert concat(q, e_far, a) == a

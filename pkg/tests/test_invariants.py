from fractions import Fraction

import pytest

from surfqp import HypothesisError, adjacency_quiver, add_puncture, once_punctured_genus, sphere_base
from surfqp.invariants import (
    algebra_dimension,
    basis_count,
    cartan_matrix,
    cartan_vs_algebra,
    center_basis,
    hypothesis_report,
    jacobian_basis,
    nonrigidity_check,
    socle_element,
    symmetry_check,
)
from surfqp.linalg import bareiss_det, left_inverse_rows, nullspace, rank
from surfqp.path_algebra import Path, PathVector, ScalarAssignment, truncated_quotient


def test_hypothesis_report_examples():
    q = adjacency_quiver(sphere_base(4))
    assert hypothesis_report(q, ScalarAssignment((2, 3, 5, 7))) == {
        "star": False, "diamond": True, "scalar_product_ok": True, "theorems_apply": True,
    }
    assert hypothesis_report(q, ScalarAssignment((1, 1, 1, 1))) == {
        "star": False, "diamond": True, "scalar_product_ok": False, "theorems_apply": False,
    }
    qt = adjacency_quiver(once_punctured_genus(1))
    for c in (1, 2, Fraction(-1, 3)):
        r = hypothesis_report(qt, ScalarAssignment((c,)))
        assert r["star"] and not r["diamond"] and r["theorems_apply"]


@pytest.mark.parametrize(
    "name, parts",
    [("torus", (3, 30, 3)), ("sphere4", (6, 24, 6)), ("sphere6", (12, 72, 12)), ("sphere5", (9, 48, 9))],
)
def test_jacobian_basis(named, name, parts):
    t, q, c, a = named[name]
    b = jacobian_basis(q, c, a)
    d = b.to_dict()
    assert (d["trivial"], d["segments"], d["socle"]) == parts
    assert b.count == sum(parts) == algebra_dimension(t) == basis_count(q)
    assert len({tuple(sorted(x.terms)) for x in b.reduced}) == b.count


def test_jacobian_basis_requires_hypotheses():
    q = adjacency_quiver(sphere_base(4))
    a = truncated_quotient(q, ScalarAssignment((1, 1, 1, 1)), 8)
    with pytest.raises(HypothesisError, match="product of scalars equals 1"):
        jacobian_basis(q, a.scalars, a)
    for fn in (symmetry_check, center_basis, nonrigidity_check):
        with pytest.raises(HypothesisError):
            fn(q, a.scalars, a)


@pytest.mark.parametrize(
    "make, dim", [(lambda: once_punctured_genus(1), 36), (lambda: sphere_base(5), 66), (lambda: sphere_base(6), 96)]
)
def test_algebra_dimension(make, dim):
    assert algebra_dimension(make()) == dim


def test_cartan_torus():
    C = cartan_matrix(once_punctured_genus(1))
    assert C.matrix == [[4] * 3] * 3 and C.rank == 1 and C.determinant == 0 and C.ok


def test_cartan_tetrahedron():
    t = sphere_base(4)
    C = cartan_matrix(t)
    M = C.matrix
    assert all(M[i][i] == 2 for i in range(6))
    # arcs i, j are opposite edges of the tetrahedron iff they share no puncture
    ends = {a: set(t.arc_endpoints(a)) for a in range(6)}
    for i in range(6):
        for j in range(6):
            if i != j:
                assert M[i][j] == (0 if not ends[i] & ends[j] else 1)
    assert C.rank == 4 and C.determinant == 0


@pytest.mark.parametrize("name", ["torus", "sphere4", "sphere5", "sphere6"])
def test_cartan_sum_and_oracle(named, name):
    t, q, c, a = named[name]
    C = cartan_matrix(t)
    assert sum(map(sum, C.matrix)) == algebra_dimension(t)
    assert cartan_vs_algebra(t, a)


@pytest.mark.parametrize("name, checks", [("torus", 36 * 6 * 2), ("sphere4", 36 * 12 * 2), ("sphere6", 96 * 24 * 2)])
def test_symmetry(named, name, checks):
    _, q, c, a = named[name]
    cert = symmetry_check(q, c, a)
    assert cert.verdict and len(cert.checks) == checks and not cert.failures
    assert cert.to_dict()["verdict"] is True


def test_symmetry_socle_dual_case_table(named):
    """Phi(z_i^v) . beta = beta for source(beta) = i and beta . Phi(z_i^v) = beta for target i."""
    from surfqp.invariants import _DualBasis
    from surfqp.path_algebra import multiply

    _, q, c, a = named["torus"]
    D = _DualBasis(q, c, a)
    for k, lab in enumerate(D.basis.labels):
        if lab[0] != "z":
            continue
        i = lab[1]
        assert D.phi[k] == PathVector.of(Path(i, ()))
        for b in q.arrows:
            bv = PathVector.of(Path(q.src[b], (b,)))
            assert multiply(D.phi[k], bv, a) == (bv if q.src[b] == i else PathVector())


def test_symmetry_detects_a_wrong_phi(named, monkeypatch):
    from surfqp import invariants

    _, q, c, a = named["sphere6"]
    original = invariants._DualBasis._phi_of

    def skewed(self, lab):
        out = original(self, lab)
        return out * 2 if lab == ("seg", 0, 1) else out

    monkeypatch.setattr(invariants._DualBasis, "_phi_of", skewed)
    cert = symmetry_check(q, c, a, spot_checks=0)
    assert not cert.verdict
    bad = cert.to_dict()["counterexamples"][0]
    assert {"basis_element", "arrow", "side", "lhs", "rhs"} <= set(bad)


@pytest.mark.parametrize("name, dim", [("torus", 4), ("sphere4", 7), ("sphere5", 10), ("sphere6", 13)])
def test_center(named, name, dim):
    _, q, c, a = named[name]
    z = center_basis(q, c, a)
    assert z.dimension == dim == q.n_vertices + 1
    assert z.spanned_by_one_and_socle and z.products_vanish and z.socle_annihilates


@pytest.mark.parametrize("name", ["torus", "sphere4", "sphere5", "sphere6"])
def test_nonrigidity(named, name):
    _, q, c, a = named[name]
    assert nonrigidity_check(q, c, a)


def test_nonrigidity_false_when_socle_is_truncated():
    q = adjacency_quiver(once_punctured_genus(1))
    c = ScalarAssignment.default(q)
    assert not nonrigidity_check(q, c, truncated_quotient(q, c, 2))
    assert not nonrigidity_check(q, c, truncated_quotient(q, c, 4))


def test_socle_element_representative():
    q = adjacency_quiver(sphere_base(6))
    c = ScalarAssignment.default(q)
    z = socle_element(q, c, 3)
    [(p, coef)] = z.items()
    a0 = min(q.out_arrows[3])
    assert p.arrows[0] == a0 and p.length == q.n[a0] and coef == c.for_arrow(q, a0)


def test_larger_cases_basis_and_symmetry():
    for t in (once_punctured_genus(2), add_puncture(sphere_base(5), 3)):
        q = adjacency_quiver(t)
        c = ScalarAssignment.default(q)
        a = truncated_quotient(q, c)
        assert jacobian_basis(q, c, a).count == algebra_dimension(t)
        assert symmetry_check(q, c, a, spot_checks=5).verdict


def test_linalg_helpers():
    assert rank([[1, 2], [2, 4]]) == 1
    assert bareiss_det([[2, 1], [1, 2]]) == 3
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0
    assert bareiss_det([[Fraction(1, 2), 1], [1, 4]]) == 1
    assert nullspace([{0: 1, 1: 1}], 2) == [{1: 1, 0: -1}]
    inv = left_inverse_rows([{0: 2}, {0: 1, 1: 1}], 2)
    assert inv == [{0: Fraction(1, 2)}, {0: Fraction(-1, 2), 1: 1}]
    assert left_inverse_rows([{0: 1}, {0: 2}], 2) is None

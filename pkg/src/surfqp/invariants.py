"""Explicit basis, dimension, Cartan matrix, symmetry, center and non-rigidity checks.

Each check computes its claim through the rule-based normal form and confirms
it against the elimination oracle of the truncated algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import HypothesisError, OracleMismatchError, PreconditionError
from .linalg import bareiss_det, left_inverse_rows, nullspace, rank
from .path_algebra.paths import Path, PathVector, ScalarAssignment, concat
from .path_algebra.quotient import TruncatedAlgebra, hypotheses, multiply, normal_form
from .quiver import Quiver
from .surface import Triangulation, puncture_cycles

__all__ = [
    "JacobianBasis",
    "CartanMatrix",
    "CenterDescription",
    "SymmetryCertificate",
    "hypothesis_report",
    "jacobian_basis",
    "algebra_dimension",
    "basis_count",
    "cartan_matrix",
    "cartan_vs_algebra",
    "socle_element",
    "symmetry_check",
    "center_basis",
    "nonrigidity_check",
]


def hypothesis_report(q: Quiver, c: ScalarAssignment) -> dict:
    """star, diamond, scalar_product_ok and theorems_apply = star or (diamond and prod c != 1)."""
    c.check(q)
    return hypotheses(q, c)


def _require(a: TruncatedAlgebra) -> None:
    if not a.theorems_apply:
        h = a.hypotheses
        if h["diamond"] and not h["scalar_product_ok"]:
            raise HypothesisError("hypotheses not met: product of scalars equals 1")
        raise HypothesisError("hypotheses not met: neither (star) nor (diamond) holds")


def _vec(p: Path, c=1) -> PathVector:
    return PathVector.of(p, c)


def socle_element(q: Quiver, c: ScalarAssignment, i: int) -> PathVector:
    """z_i stored as c_a times the g-cycle at i, a the smallest arrow leaving i."""
    a = min(q.out_arrows[i])
    return _vec(Path(i, q.g_run(a, q.n[a])), c.for_arrow(q, a))


@dataclass
class JacobianBasis:
    labels: list[tuple]
    elements: list[PathVector]
    reduced: list[PathVector]

    @property
    def count(self) -> int:
        return len(self.elements)

    def by_label(self) -> dict:
        return dict(zip(self.labels, self.elements))

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "trivial": sum(1 for l in self.labels if l[0] == "e"),
            "segments": sum(1 for l in self.labels if l[0] == "seg"),
            "socle": sum(1 for l in self.labels if l[0] == "z"),
        }


def basis_count(q: Quiver) -> int:
    """2|Q0| + sum over arrows of (n_a - 1)."""
    return 2 * q.n_vertices + sum(n - 1 for n in q.n)


def _explicit_basis(q: Quiver, c: ScalarAssignment):
    labels, elems = [], []
    for i in q.vertices:
        labels.append(("e", i))
        elems.append(_vec(Path(i, ())))
    for a in q.arrows:
        for r in range(1, q.n[a]):
            labels.append(("seg", a, r))
            elems.append(_vec(Path(q.src[a], q.g_run(a, r))))
    for i in q.vertices:
        labels.append(("z", i))
        elems.append(socle_element(q, c, i))
    return labels, elems


def jacobian_basis(q: Quiver, c: ScalarAssignment, a: TruncatedAlgebra) -> JacobianBasis:
    """Trivial paths, g-segments of length 1..n-1 and socle cycles, checked against the oracle."""
    _require(a)
    labels, elems = _explicit_basis(q, c)
    reduced = []
    for lab, x in zip(labels, elems):
        nf = normal_form(x, a)
        if nf != a.reduce(x):
            raise OracleMismatchError(f"normal form of {lab} disagrees with the oracle")
        reduced.append(nf)
    # every representative of z_i must agree
    for i in q.vertices:
        z = normal_form(socle_element(q, c, i), a)
        for b in q.out_arrows[i]:
            three = _vec(Path(i, (b, q.f[b], q.f[q.f[b]])))
            cyc = _vec(Path(i, q.g_run(b, q.n[b])), c.for_arrow(q, b))
            if normal_form(three, a) != z or normal_form(cyc, a) != z:
                raise OracleMismatchError(f"representatives of z_{i} disagree")
    if len(elems) != a.dimension or rank([a.coordinates(x) for x in reduced]) != a.dimension:
        raise OracleMismatchError(
            f"basis of {len(elems)} elements does not match the oracle quotient of dimension {a.dimension}"
        )
    return JacobianBasis(labels, elems, reduced)


def algebra_dimension(t: Triangulation) -> int:
    return sum(p.n ** 2 for p in puncture_cycles(t))


@dataclass
class CartanMatrix:
    matrix: list[list[int]]
    rank: int
    determinant: int
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def to_dict(self) -> dict:
        return {
            "matrix": self.matrix,
            "rank": self.rank,
            "determinant": int(self.determinant),
            "entries_ok": self.ok,
            "problems": self.problems,
        }


def cartan_matrix(t: Triangulation) -> CartanMatrix:
    cycles = puncture_cycles(t)
    n = t.n_arcs
    C = [[0] * n for _ in range(n)]
    for p in cycles:
        v = p.v
        for i in range(n):
            if v[i]:
                for j in range(n):
                    C[i][j] += v[i] * v[j]
    problems = []
    for i in range(n):
        if C[i][i] not in (2, 4):
            problems.append(f"diagonal entry C[{i}][{i}] = {C[i][i]}")
        for j in range(n):
            if C[i][j] not in (0, 1, 2, 4):
                problems.append(f"entry C[{i}][{j}] = {C[i][j]}")
    r = rank(C)
    if r > len(cycles):
        problems.append(f"rank {r} exceeds the number of punctures {len(cycles)}")
    det = bareiss_det(C)
    if det != 0:
        problems.append(f"determinant {det} is not zero")
    return CartanMatrix(C, r, int(det), problems)


def cartan_vs_algebra(t: Triangulation, a: TruncatedAlgebra) -> bool:
    C = cartan_matrix(t).matrix
    q = a.quiver
    counts = [[0] * q.n_vertices for _ in range(q.n_vertices)]
    for p in a.basis:
        tgt = q.tgt[p.arrows[-1]] if p.arrows else p.source
        counts[p.source][tgt] += 1
    return counts == C


# -- symmetry ----------------------------------------------------------------


@dataclass
class SymmetryCertificate:
    checks: list[dict]
    failures: list[dict]
    spot_checks: int
    spot_failures: list[dict]

    @property
    def verdict(self) -> bool:
        return not self.failures and not self.spot_failures

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "checked_pairs": len(self.checks),
            "failed_pairs": len(self.failures),
            "counterexamples": self.failures[:5] + self.spot_failures[:5],
            "random_spot_checks": self.spot_checks,
        }


class _DualBasis:
    """Coordinates with respect to the explicit basis and the map Phi on its dual."""

    def __init__(self, q, c, a):
        self.q, self.c, self.a = q, c, a
        self.basis = jacobian_basis(q, c, a)
        self.n = self.basis.count
        rows = [dict(enumerate(a.coordinates(x))) for x in self.basis.reduced]
        rows = [{k: v for k, v in r.items() if v} for r in rows]
        inv = left_inverse_rows(rows, self.n)
        if inv is None:
            raise OracleMismatchError("explicit basis is singular in the quotient")
        self.inv = inv  # standard monomial k -> combination of basis elements
        self.phi = [normal_form(self._phi_of(lab), a) for lab in self.basis.labels]

    def _phi_of(self, lab) -> PathVector:
        q, c = self.q, self.c
        if lab[0] == "e":
            return socle_element(q, c, lab[1])
        if lab[0] == "z":
            return _vec(Path(lab[1], ()))
        _, alpha, r = lab
        start = q.g_power(alpha, r)
        return _vec(Path(q.src[start], q.g_run(start, q.n[alpha] - r)), c.for_arrow(q, alpha))

    def coords(self, x: PathVector) -> dict[int, Fraction]:
        """Coordinates of x over the explicit basis."""
        out: dict[int, Fraction] = {}
        for k, v in enumerate(self.a.coordinates(x)):
            if v:
                for b, w in self.inv[k].items():
                    s = out.get(b, 0) + v * w
                    if s:
                        out[b] = s
                    else:
                        out.pop(b, None)
        return out

    def Phi(self, functional: dict[int, Fraction]) -> PathVector:
        out = PathVector()
        for b, v in functional.items():
            out = out + self.phi[b] * v
        return out


def symmetry_check(
    q: Quiver, c: ScalarAssignment, a: TruncatedAlgebra, spot_checks: int = 20, seed: int = 0
) -> SymmetryCertificate:
    """Check Phi(p^v . beta) = Phi(p^v) . beta and Phi(beta . p^v) = beta . Phi(p^v).

    ``(phi . x)(y) = phi(x y)`` and ``(x . phi)(y) = phi(y x)``.
    """
    _require(a)
    if a.top_degree + 1 > a.N:
        raise PreconditionError("truncation too small to multiply basis elements by arrows")
    if 2 * a.top_degree > a.N:
        spot_checks = 0
    D = _DualBasis(q, c, a)
    elems = D.basis.reduced
    checks, failures = [], []
    for beta in q.arrows:
        bv = _vec(Path(q.src[beta], (beta,)))
        # coords of beta.x and x.beta for every basis element x
        left = [D.coords(multiply(bv, x, a)) for x in elems]
        right = [D.coords(multiply(x, bv, a)) for x in elems]
        for p in range(D.n):
            phi_p = D.phi[p]
            dual_beta = {x: left[x][p] for x in range(D.n) if p in left[x]}  # (p^v . beta)(x) = p^v(beta x)
            beta_dual = {x: right[x][p] for x in range(D.n) if p in right[x]}
            for side, functional, rhs in (
                ("right", dual_beta, multiply(phi_p, bv, a)),
                ("left", beta_dual, multiply(bv, phi_p, a)),
            ):
                lhs = D.Phi(functional)
                rec = {"basis_element": list(D.basis.labels[p]), "arrow": beta, "side": side}
                checks.append(rec)
                if lhs != rhs:
                    failures.append(dict(rec, lhs=lhs.to_json_obj(), rhs=rhs.to_json_obj()))
    spot_failures = []
    rng = random.Random(seed)
    for _ in range(spot_checks):
        phi = {b: Fraction(rng.randint(-3, 3)) for b in rng.sample(range(D.n), min(4, D.n))}
        phi = {b: v for b, v in phi.items() if v}
        x = PathVector()
        for b in rng.sample(range(D.n), min(3, D.n)):
            x = x + elems[b] * rng.randint(1, 3)
        xs = [D.coords(multiply(x, y, a)) for y in elems]
        ys = [D.coords(multiply(y, x, a)) for y in elems]
        phi_x = {y: sum(v * xs[y].get(b, 0) for b, v in phi.items()) for y in range(D.n)}
        x_phi = {y: sum(v * ys[y].get(b, 0) for b, v in phi.items()) for y in range(D.n)}
        lhs1, rhs1 = D.Phi({k: v for k, v in phi_x.items() if v}), multiply(D.Phi(phi), x, a)
        lhs2, rhs2 = D.Phi({k: v for k, v in x_phi.items() if v}), multiply(x, D.Phi(phi), a)
        if lhs1 != rhs1 or lhs2 != rhs2:
            spot_failures.append({"functional": {str(k): str(v) for k, v in phi.items()}, "element": x.to_json_obj()})
    return SymmetryCertificate(checks, failures, spot_checks, spot_failures)


# -- center ------------------------------------------------------------------


@dataclass
class CenterDescription:
    basis: list[PathVector]
    dimension: int
    spanned_by_one_and_socle: bool
    products_vanish: bool
    socle_annihilates: bool

    @property
    def ok(self) -> bool:
        return self.spanned_by_one_and_socle and self.products_vanish and self.socle_annihilates

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "spanned_by_one_and_socle": self.spanned_by_one_and_socle,
            "pairwise_products_vanish": self.products_vanish,
            "socle_annihilates_radical": self.socle_annihilates,
        }


def center_basis(q: Quiver, c: ScalarAssignment, a: TruncatedAlgebra) -> CenterDescription:
    """Solve z x = x z for x running over idempotents and arrows over the oracle basis."""
    _require(a)
    if a.top_degree + 1 > a.N:
        raise PreconditionError("truncation too small to multiply basis elements by arrows")
    gens = [_vec(Path(i, ())) for i in q.vertices] + [_vec(Path(q.src[b], (b,))) for b in q.arrows]
    dim = a.dimension
    # row (generator g, coordinate j) of the map u -> [s, g] for s the k-th standard monomial
    rows: dict[tuple[int, int], dict[int, Fraction]] = {}
    for k, s in enumerate(a.basis):
        sv = _vec(s)
        for gi, gvec in enumerate(gens):
            comm = a.reduce(concat(q, sv, gvec)) - a.reduce(concat(q, gvec, sv))
            for p, v in comm.items():
                rows.setdefault((gi, a.index[p]), {})[k] = v
    null = nullspace(list(rows.values()), dim)
    center = [a.from_coordinates([vec.get(k, Fraction(0)) for k in range(dim)]) for vec in null]
    one = PathVector({Path(i, ()): 1 for i in q.vertices})
    socle = [normal_form(socle_element(q, c, i), a) for i in q.vertices]
    expected = [a.coordinates(one)] + [a.coordinates(z) for z in socle]
    found = [a.coordinates(z) for z in center]
    spanned = (
        len(center) == q.n_vertices + 1
        and rank(expected) == len(expected)
        and rank(expected + found) == len(expected)
    )
    products = all(multiply(zi, zj, a).is_zero() for zi in socle for zj in socle)
    annihilates = True
    for i, zi in enumerate(socle):
        for s in a.basis:
            if s == Path(i, ()):
                continue
            sv = _vec(s)
            if not multiply(zi, sv, a).is_zero() or not multiply(sv, zi, a).is_zero():
                annihilates = False
    return CenterDescription(center, len(center), spanned, products, annihilates)


def nonrigidity_check(q: Quiver, c: ScalarAssignment, a: TruncatedAlgebra) -> bool:
    """Every 3-cycle a f(a) f2(a) is the nonzero socle element at source(a)."""
    _require(a)
    if a.N < 3:
        return False
    for alpha in q.arrows:
        w = _vec(Path(q.src[alpha], (alpha, q.f[alpha], q.f[q.f[alpha]])))
        nf = normal_form(w, a)
        if nf.is_zero() or a.reduce(w).is_zero():
            return False
        if nf != normal_form(socle_element(q, c, q.src[alpha]), a) or nf != a.reduce(w):
            return False
    return True

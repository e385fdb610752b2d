"""Truncated Jacobian quotient: an elimination oracle and a rule-based normal form.

Every generator ``p . (f(a) f2(a) - c_a g(a) ... g^(n-1)(a)) . s`` of the
truncated ideal is a binomial (or a monomial once the long side exceeds N), so
the quotient of the path space is determined by a graph on paths: two paths
are joined with a scalar ratio by each binomial, and a connected class
survives (spans one dimension) iff it holds no path beyond N and every cycle
in it has weight 1.  The oracle computes these classes either by a dense
union-find over every path of length <= N (``"full"``, compiled kernel) or by
exploring only the classes reachable from surviving paths (``"lazy"``, which
uses that the surviving paths are closed under taking subpaths).

Standard monomials: inside a class the longest path wins, ties broken by the
lexicographically smallest arrow sequence.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable

import numpy as np

from ..errors import DegreeOverflowError, PreconditionError
from ..quiver import Quiver, quiver_conditions
from . import _backend
from .paths import Path, PathVector, ScalarAssignment, concat

__all__ = [
    "TruncatedAlgebra",
    "default_truncation",
    "truncated_quotient",
    "normal_form",
    "multiply",
]

FULL_LIMIT_COMPILED = 6_000_000
FULL_LIMIT_PYTHON = 120_000


def default_truncation(q: Quiver) -> int:
    return 2 * max(q.n) + 2


def _rep_key(arrows):
    return (-len(arrows), arrows)


class TruncatedAlgebra:
    """K Q / (J + m^(N+1)) described by its standard monomials.

    ``canonical(path)`` returns ``(rep, coef)`` with ``path = coef * rep`` in
    the quotient, or ``None`` when the path vanishes.
    """

    def __init__(self, q, scalars, N, strategy, live, hypotheses):
        self.quiver = q
        self.scalars = scalars
        self.N = N
        self.strategy = strategy
        self._live = live  # Path -> (rep Path, Fraction)
        reps = sorted({rep for rep, _ in live.values()}, key=Path.sort_key)
        self.basis: tuple[Path, ...] = tuple(reps)
        self.index = {p: i for i, p in enumerate(self.basis)}
        dims = [0] * (N + 1)
        for p in self.basis:
            dims[p.length] += 1
        self.dims: tuple[int, ...] = tuple(dims)
        self.hypotheses = hypotheses

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def theorems_apply(self) -> bool:
        return self.hypotheses["theorems_apply"]

    @property
    def stabilized(self) -> bool:
        return self.dims[self.N] == 0

    @property
    def top_degree(self) -> int:
        return max((p.length for p in self.basis), default=-1)

    @property
    def n_live_paths(self) -> int:
        return len(self._live)

    def canonical(self, p: Path):
        return self._live.get(p)

    def reduce(self, x: PathVector) -> PathVector:
        """Oracle reduction; paths longer than N vanish."""
        out = PathVector()
        for p, c in x.terms.items():
            hit = self._live.get(p)
            if hit is not None:
                out._add(hit[0], c * hit[1])
        return out

    def coordinates(self, x: PathVector) -> list[Fraction]:
        vec = [Fraction(0)] * len(self.basis)
        for p, c in self.reduce(x).terms.items():
            vec[self.index[p]] += c
        return vec

    def from_coordinates(self, vec) -> PathVector:
        return PathVector({self.basis[i]: c for i, c in enumerate(vec) if c})

    def basis_between(self, i: int, j: int) -> list[Path]:
        q = self.quiver
        return [p for p in self.basis if p.source == i and (q.tgt[p.arrows[-1]] if p.arrows else p.source) == j]

    def summary(self) -> dict:
        return {
            "truncation": self.N,
            "strategy": self.strategy,
            "dimension": self.dimension,
            "dims_per_degree": list(self.dims),
            "stabilized": self.stabilized,
        }


def hypotheses(q: Quiver, c: ScalarAssignment) -> dict:
    cond = quiver_conditions(q)
    product_ok = c.product() != 1
    return {
        "star": cond["star"],
        "diamond": cond["diamond"],
        "scalar_product_ok": product_ok,
        "theorems_apply": cond["star"] or (cond["diamond"] and product_ok),
    }


def truncated_quotient(
    q: Quiver,
    c: ScalarAssignment | None = None,
    N: int | None = None,
    strategy: str = "auto",
    kernel: str | None = None,
) -> TruncatedAlgebra:
    """Compute the standard-monomial basis of the quotient up to degree N.

    ``strategy`` is ``"full"``, ``"lazy"`` or ``"auto"``; ``kernel`` picks the
    backend of the full strategy (``None``, ``"python"``, ``"compiled"``).
    """
    if c is None:
        c = ScalarAssignment.default(q)
    c.check(q)
    if N is None:
        N = default_truncation(q)
    if N < 2:
        raise PreconditionError("truncation degree must be at least 2")
    if strategy == "auto":
        kmod = _backend.get_kernel(kernel)
        limit = FULL_LIMIT_COMPILED if kmod is _backend.compiled else FULL_LIMIT_PYTHON
        total = q.n_vertices + q.n_arrows * ((1 << N) - 1)
        strategy = "full" if total <= limit else "lazy"
    if strategy == "full":
        live = _full_classes(q, c, N, _backend.get_kernel(kernel))
    elif strategy == "lazy":
        live = _LazyExplorer(q, c, N).live_classes()
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return TruncatedAlgebra(q, c, N, strategy, live, hypotheses(q, c))


def _weight(values, exps) -> Fraction:
    w = Fraction(1)
    for v, e in zip(values, exps):
        if e:
            w *= v ** int(e)
    return w


def _decode(q: Quiver, idx: int) -> Path:
    nv, m = q.n_vertices, q.n_arrows
    if idx < nv:
        return Path(idx, ())
    rest = idx - nv
    L = 1
    while rest >= m << (L - 1):
        rest -= m << (L - 1)
        L += 1
    span = 1 << (L - 1)
    a0, bits = divmod(rest, span)
    arrows = [a0]
    for j in range(1, L):
        prev = arrows[-1]
        arrows.append(q.g[prev] if (bits >> (L - 1 - j)) & 1 else q.f[prev])
    return Path(q.src[a0], tuple(arrows))


def _full_classes(q: Quiver, c: ScalarAssignment, N: int, kmod) -> dict:
    root, exps, dead, conflicts = kmod.binomial_classes(
        q.f, q.g, q.n, q.g_orbit_of, q.n_vertices, N, len(c.values)
    )
    dead = dead.astype(bool)
    for node, d in set(conflicts):
        r = root[node]
        if not dead[r] and _weight(c.values, d) != 1:
            dead[r] = True
    live_idx = np.nonzero(~dead[root])[0]
    groups: dict[int, list[int]] = {}
    for i in live_idx.tolist():
        groups.setdefault(int(root[i]), []).append(i)
    live = {}
    for members in groups.values():
        paths = {i: _decode(q, i) for i in members}
        rep_i = min(members, key=lambda i: _rep_key(paths[i].arrows))
        rep = paths[rep_i]
        e_rep = exps[rep_i]
        for i in members:
            live[paths[i]] = (rep, _weight(c.values, exps[i] - e_rep))
    return live


class _LazyExplorer:
    """Class-by-class exploration restricted to paths that can survive."""

    def __init__(self, q: Quiver, c: ScalarAssignment, N: int):
        self.q, self.c, self.N = q, c, N
        self.status: dict[tuple, object] = {}  # arrows -> (rep, coef) or False

    def neighbours(self, P: tuple):
        """Yield ``(other, ratio)`` with ``P = ratio * other``; ``other`` None means overflow."""
        q, N = self.q, self.N
        f, g, n_of = q.f, q.g, q.n
        L = len(P)
        for j in range(1, L):
            if P[j] != f[P[j - 1]]:
                continue
            alpha = f[f[P[j - 1]]]
            n = n_of[alpha]
            if L + n - 3 > N:
                yield None, None
                return
            yield P[: j - 1] + q.g_run(g[alpha], n - 1) + P[j + 1:], self.c.for_arrow(q, alpha)
        # g-runs of length n-1 starting at g(alpha) are the long side of d_alpha W
        for i in range(L):
            x = P[i]
            alpha = q.g_inv[x]
            n = n_of[alpha]
            end = i + n - 1
            if end > L:
                continue
            if all(P[k] == g[P[k - 1]] for k in range(i + 1, end)):
                yield P[:i] + (f[alpha], f[f[alpha]]) + P[end:], 1 / self.c.for_arrow(q, alpha)

    def explore(self, start: tuple):
        val = {start: Fraction(1)}  # member = val * start
        heap = [(_rep_key(start), start)]
        ok = True
        while heap and ok:
            _, P = heapq.heappop(heap)
            for other, ratio in self.neighbours(P):
                if other is None:
                    ok = False
                    break
                w = val[P] / ratio
                seen = val.get(other)
                if seen is None:
                    val[other] = w
                    heapq.heappush(heap, (_rep_key(other), other))
                elif seen != w:
                    ok = False
                    break
        if not ok:
            for P in val:
                self.status[P] = False
            return False
        rep = min(val, key=_rep_key)
        for P, w in val.items():
            self.status[P] = (rep, w / val[rep])
        return True

    def alive(self, P: tuple) -> bool:
        st = self.status.get(P)
        if st is None:
            return self.explore(P)
        return st is not False

    def live_classes(self) -> dict:
        q = self.q
        live = {Path(v, ()): (Path(v, ()), Fraction(1)) for v in q.vertices}
        level = []
        for a in q.arrows:
            if self.alive((a,)):
                level.append((a,))
        L = 1
        while level and L < self.N:
            nxt = []
            level_set = set(level)
            for P in level:
                last = P[-1]
                for a in sorted((q.f[last], q.g[last])):
                    if L >= 1 and P[1:] + (a,) not in level_set:
                        continue
                    Q = P + (a,)
                    if self.alive(Q):
                        nxt.append(Q)
            level = nxt
            L += 1
        for P, st in self.status.items():
            if st is not False:
                rep, w = st
                live[Path(q.src[P[0]], P)] = (Path(q.src[rep[0]], rep), w)
        return live


# ---------------------------------------------------------------------------
# rule-based normal form


def _steps(q: Quiver, arrows) -> str:
    return "".join("f" if b == q.f[a] else "g" for a, b in zip(arrows, arrows[1:]))


def _pick(members) -> tuple[Path, Fraction]:
    """``members``: list of (Path, w) meaning path = w * X; returns (rep, w_rep)."""
    return min(members, key=lambda m: _rep_key(m[0].arrows))


def _pair_class(q: Quiver, c: ScalarAssignment, beta: int):
    """Members of the class of beta.f(beta) = c . bar(beta) g(bar beta) ... (run of n-1)."""
    b = q.bar[beta]
    cb = c.for_arrow(q, b)
    return [
        (Path(q.src[beta], (beta, q.f[beta])), Fraction(1)),
        (Path(q.src[b], q.g_run(b, q.n[b] - 1)), 1 / cb),
    ]


def _socle_class(q: Quiver, c: ScalarAssignment, alpha: int):
    """The four paths representing z at source(alpha)."""
    out = []
    for a in (alpha, q.bar[alpha]):
        out.append((Path(q.src[a], (a, q.f[a], q.f[q.f[a]])), Fraction(1)))
        out.append((Path(q.src[a], q.g_run(a, q.n[a])), 1 / c.for_arrow(q, a)))
    return out


def _reduce_path(q: Quiver, c: ScalarAssignment, p: Path):
    """Normal form of a single path as (rep, coef), or None for zero."""
    arrows = p.arrows
    L = len(arrows)
    if L <= 1:
        return p, Fraction(1)
    s = _steps(q, arrows)
    if "gf" in s or "fg" in s:
        return None
    if s[0] == "f":
        if L == 2:
            members = _pair_class(q, c, arrows[0])
        elif L == 3:
            members = _socle_class(q, c, arrows[0])
        else:
            return None
        w_p = members[0][1]
    else:
        a = arrows[0]
        n = q.n[a]
        if L < n - 1:
            return p, Fraction(1)
        if L == n - 1:
            members = _pair_class(q, c, q.f[q.g_inv[a]])
            w_p = members[1][1]
        elif L == n:
            members = _socle_class(q, c, a)
            w_p = members[1][1]
        else:
            return None
    rep, w_rep = _pick(members)
    return rep, w_p / w_rep


def normal_form(x: PathVector, a: TruncatedAlgebra) -> PathVector:
    """Reduce x to standard monomials.

    Under the hypotheses this applies the local rewrite rules (no oracle data);
    otherwise it falls back to the elimination oracle.
    """
    deg = x.degree
    if deg > a.N:
        raise DegreeOverflowError(f"element of degree {deg} exceeds truncation N={a.N}")
    if not a.theorems_apply:
        return a.reduce(x)
    out = PathVector()
    for p, coef in x.terms.items():
        hit = _reduce_path(a.quiver, a.scalars, p)
        if hit is not None:
            out._add(hit[0], coef * hit[1])
    return out


def multiply(x: PathVector, y: PathVector, a: TruncatedAlgebra) -> PathVector:
    return normal_form(concat(a.quiver, x, y), a)


def product(factors: Iterable[PathVector], a: TruncatedAlgebra) -> PathVector:
    factors = list(factors)
    out = factors[0]
    for y in factors[1:]:
        out = multiply(out, y, a)
    return out

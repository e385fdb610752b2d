"""Adjacency quivers of triangulations with their f / g permutation structure.

Arrow ``3t + k`` of the adjacency quiver is the corner of triangle ``t``
between side ``k`` and side ``k + 1``; it points from the arc on side ``k``
to the arc on side ``k + 1``.  ``f`` turns inside the triangle and ``g``
turns around the puncture at the corner.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import PreconditionError, QuiverError, TriangulationError
from .surface import Triangulation, sphere_base, validate

__all__ = [
    "Quiver",
    "OrbitPartition",
    "adjacency_quiver",
    "bar",
    "orbit_partition",
    "quiver_conditions",
    "xy_transitivity",
    "diamond_structure_check",
]


def _cycles(perm) -> tuple[tuple[int, ...], ...]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        a = start
        while not seen[a]:
            seen[a] = True
            cyc.append(a)
            a = perm[a]
        out.append(tuple(cyc))
    return tuple(out)


@dataclass(frozen=True)
class Quiver:
    """Vertices ``0 .. n_vertices-1``, arrows ``0 .. len(src)-1``."""

    n_vertices: int
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    f: tuple[int, ...]
    g: tuple[int, ...]

    @property
    def vertices(self) -> range:
        return range(self.n_vertices)

    @property
    def arrows(self) -> range:
        return range(len(self.src))

    @property
    def n_arrows(self) -> int:
        return len(self.src)

    @cached_property
    def out_arrows(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for a, s in enumerate(self.src):
            out[s].append(a)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_arrows(self) -> tuple[tuple[int, ...], ...]:
        inn: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for a, t in enumerate(self.tgt):
            inn[t].append(a)
        return tuple(tuple(x) for x in inn)

    @cached_property
    def f_inv(self) -> tuple[int, ...]:
        inv = [0] * self.n_arrows
        for a, b in enumerate(self.f):
            inv[b] = a
        return tuple(inv)

    @cached_property
    def g_inv(self) -> tuple[int, ...]:
        inv = [0] * self.n_arrows
        for a, b in enumerate(self.g):
            inv[b] = a
        return tuple(inv)

    @cached_property
    def bar(self) -> tuple[int, ...]:
        out = []
        for a in self.arrows:
            pair = self.out_arrows[self.src[a]]
            if len(pair) != 2:
                raise QuiverError(f"vertex {self.src[a]} has out-degree {len(pair)}")
            out.append(pair[1] if pair[0] == a else pair[0])
        return tuple(out)

    @cached_property
    def f_orbits(self) -> tuple[tuple[int, ...], ...]:
        return _cycles(self.f)

    @cached_property
    def g_orbits(self) -> tuple[tuple[int, ...], ...]:
        """g-orbits ordered by their minimal arrow, each starting at it."""
        return _cycles(self.g)

    @cached_property
    def g_orbit_of(self) -> tuple[int, ...]:
        out = [0] * self.n_arrows
        for k, orbit in enumerate(self.g_orbits):
            for a in orbit:
                out[a] = k
        return tuple(out)

    @cached_property
    def n(self) -> tuple[int, ...]:
        """Size of the g-orbit of each arrow."""
        sizes = [len(o) for o in self.g_orbits]
        return tuple(sizes[k] for k in self.g_orbit_of)

    def g_power(self, a: int, r: int) -> int:
        for _ in range(r % self.n[a]):
            a = self.g[a]
        return a

    def g_run(self, a: int, length: int) -> tuple[int, ...]:
        """The path a . g(a) . ... . g^(length-1)(a)."""
        out = []
        for _ in range(length):
            out.append(a)
            a = self.g[a]
        return tuple(out)

    def check(self) -> list[str]:
        """List every violated structural invariant (empty when well formed)."""
        problems = []
        m = self.n_arrows
        for name, perm in (("f", self.f), ("g", self.g)):
            if len(perm) != m or sorted(perm) != list(range(m)):
                problems.append(f"{name} is not a permutation of the arrows")
        if problems:
            return problems
        for a in self.arrows:
            if self.src[a] == self.tgt[a]:
                problems.append(f"arrow {a} is a loop")
        pairs = {(self.src[a], self.tgt[a]) for a in self.arrows}
        for s, t in sorted(pairs):
            if s < t and (t, s) in pairs:
                problems.append(f"2-cycle between vertices {s} and {t}")
        for v in self.vertices:
            if len(self.out_arrows[v]) != 2 or len(self.in_arrows[v]) != 2:
                problems.append(
                    f"vertex {v} has out-degree {len(self.out_arrows[v])} and in-degree {len(self.in_arrows[v])}"
                )
        for a in self.arrows:
            fa, ga = self.f[a], self.g[a]
            if {fa, ga} != set(self.out_arrows[self.tgt[a]]) or fa == ga:
                problems.append(f"f({a}), g({a}) are not the two arrows leaving the target of {a}")
        if any(self.f[self.f[self.f[a]]] != a or self.f[a] == a for a in self.arrows):
            problems.append("f^3 is not the identity or f has a fixed point")
        if any(len(o) < 3 for o in self.g_orbits):
            problems.append("some g-orbit has fewer than 3 arrows")
        return problems

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [
                {"id": a, "src": self.src[a], "tgt": self.tgt[a], "f": self.f[a], "g": self.g[a]}
                for a in self.arrows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> Quiver:
        arrows = sorted(data["arrows"], key=lambda r: r["id"])
        if [r["id"] for r in arrows] != list(range(len(arrows))):
            raise QuiverError("arrow ids must be the contiguous range 0..m-1")
        vertices = sorted(data["vertices"])
        if vertices != list(range(len(vertices))):
            raise QuiverError("vertex ids must be the contiguous range 0..n-1")
        return cls(
            len(vertices),
            tuple(r["src"] for r in arrows),
            tuple(r["tgt"] for r in arrows),
            tuple(r["f"] for r in arrows),
            tuple(r["g"] for r in arrows),
        )


@dataclass(frozen=True)
class OrbitPartition:
    kind: str
    classes: tuple[tuple[int, ...], ...]

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def adjacency_quiver(t: Triangulation) -> Quiver:
    report = validate(t)
    if not report.ok:
        raise TriangulationError("invalid triangulation: " + "; ".join(report.problems))
    m = 3 * t.n_triangles
    src = tuple(t.side_arc(a) for a in range(m))
    tgt = tuple(t.side_arc(3 * (a // 3) + (a % 3 + 1) % 3) for a in range(m))
    f = tuple(3 * (a // 3) + (a % 3 + 1) % 3 for a in range(m))
    q = Quiver(t.n_arcs, src, tgt, f, t.rotation)
    problems = q.check()
    if problems:
        # cannot happen for a valid (T3) map; guards the corner bookkeeping
        raise QuiverError("; ".join(problems))
    return q


def bar(q: Quiver, a: int) -> int:
    return q.bar[a]


def orbit_partition(q: Quiver, kind: str) -> OrbitPartition:
    if kind == "f":
        return OrbitPartition("f", q.f_orbits)
    if kind == "g":
        return OrbitPartition("g", q.g_orbits)
    if kind == "h":
        # h(b) = g^-3(bar b)
        gi = q.g_inv
        h = tuple(gi[gi[gi[q.bar[a]]]] for a in q.arrows)
        return OrbitPartition("h", _cycles(h))
    raise ValueError(f"unknown orbit kind {kind!r} (expected 'f', 'g' or 'h')")


def quiver_conditions(q: Quiver) -> dict[str, bool]:
    n = q.n
    star = all(n[a] >= 4 or n[q.f[a]] >= 4 for a in q.arrows)
    diamond = all(x == 3 for x in n)
    return {"star": star, "diamond": diamond}


def xy_transitivity(q: Quiver) -> bool:
    """Whether <x: a -> bar(a), y: a -> g(a)> acts transitively on the arrows."""
    if q.n_arrows == 0:
        return False
    try:
        bars = q.bar
    except QuiverError:
        return False
    seen = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b in (bars[a], q.g[a]):
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return len(seen) == q.n_arrows


def _isomorphic(q: Quiver, ref: Quiver) -> bool:
    """Arrow bijection commuting with f and g and inducing a vertex bijection."""
    if q.n_arrows != ref.n_arrows or q.n_vertices != ref.n_vertices:
        return False
    for image in ref.arrows:
        phi = {0: image}
        queue = deque([0])
        ok = True
        while queue and ok:
            a = queue.popleft()
            for mq, mr in ((q.f, ref.f), (q.g, ref.g)):
                b, c = mq[a], mr[phi[a]]
                if b in phi:
                    ok = phi[b] == c
                    if not ok:
                        break
                else:
                    phi[b] = c
                    queue.append(b)
        if not ok or len(phi) != q.n_arrows or len(set(phi.values())) != q.n_arrows:
            continue
        vmap: dict[int, int] = {}
        for a, b in phi.items():
            for vq, vr in ((q.src[a], ref.src[b]), (q.tgt[a], ref.tgt[b])):
                if vmap.setdefault(vq, vr) != vr:
                    ok = False
        if ok and len(set(vmap.values())) == q.n_vertices:
            return True
    return False


def diamond_structure_check(q: Quiver) -> bool:
    if not quiver_conditions(q)["diamond"]:
        raise PreconditionError("quiver does not satisfy (diamond): some g-orbit has size != 3")
    if q.n_vertices != 6 or q.n_arrows != 12 or len(q.g_orbits) != 4:
        return False
    try:
        bars = q.bar
    except QuiverError:
        return False
    orb = q.g_orbit_of
    for a in q.arrows:
        quad = (a, bars[a], q.f[a], q.f[bars[a]])
        if len({orb[x] for x in quad}) != 4:
            return False
    return _isomorphic(q, adjacency_quiver(sphere_base(4)))

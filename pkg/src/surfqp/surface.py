"""Closed marked surfaces and their ideal triangulations as combinatorial maps.

A triangulation is a list of triangles, each given by the three arc ids on
its boundary in a consistent rotational order.  The two occurrences of an
arc are glued reversing direction, which is the only gluing compatible with
an orientation, so the triples alone determine the surface.

Corners are numbered ``3 * t + k``: corner ``3t+k`` sits between side ``k``
and side ``k + 1`` of triangle ``t``.  Rotating a corner around its puncture
means crossing side ``k + 1`` into the neighbouring triangle; all puncture
data below are orbit traces of that permutation.
"""

from __future__ import annotations

import json
import random
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import ParseError, PreconditionError, TriangulationError

__all__ = [
    "MarkedSurface",
    "Triangulation",
    "PunctureCycle",
    "ValidationReport",
    "parse_triangulation",
    "validate",
    "euler_data",
    "puncture_cycles",
    "condition_report",
    "sphere_base",
    "once_punctured_genus",
    "add_puncture",
    "nice_triangulation",
]


@dataclass(frozen=True)
class MarkedSurface:
    """A closed oriented surface of the given genus with ``puncture_count`` punctures."""

    genus: int
    puncture_count: int

    def __post_init__(self):
        if self.genus < 0 or self.puncture_count < 1:
            raise PreconditionError(
                f"genus must be >= 0 and punctures >= 1, got ({self.genus}, {self.puncture_count})"
            )

    @property
    def triangulable(self) -> bool:
        # valence count: 2 * (6g - 6 + 3P) >= 3P
        return self.genus >= 1 or self.puncture_count >= 4

    @property
    def arc_count(self) -> int:
        return 6 * self.genus - 6 + 3 * self.puncture_count


@dataclass(frozen=True)
class PunctureCycle:
    puncture_id: int
    arc_sequence: tuple[int, ...]
    v: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.arc_sequence)

    def to_dict(self) -> dict:
        return {
            "puncture_id": self.puncture_id,
            "arc_sequence": list(self.arc_sequence),
            "n_p": self.n,
            "v_p": list(self.v),
        }


@dataclass
class ValidationReport:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {"valid": self.ok, "problems": list(self.problems)}


@dataclass(frozen=True)
class Triangulation:
    triangles: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "triangles", tuple(tuple(int(a) for a in tri) for tri in self.triangles)
        )

    @property
    def arc_ids(self) -> frozenset[int]:
        return frozenset(a for tri in self.triangles for a in tri)

    @property
    def n_arcs(self) -> int:
        return len(self.arc_ids)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def side_arc(self, corner: int) -> int:
        t, k = divmod(corner, 3)
        return self.triangles[t][k]

    @cached_property
    def occurrences(self) -> dict[int, list[int]]:
        """Arc id -> list of side slots ``3t + k`` where it occurs."""
        occ: dict[int, list[int]] = {}
        for t, tri in enumerate(self.triangles):
            for k, a in enumerate(tri):
                occ.setdefault(a, []).append(3 * t + k)
        return occ

    @cached_property
    def partner(self) -> tuple[int, ...] | None:
        """Side slot -> the slot holding the other occurrence of the same arc.

        ``None`` when some arc does not occur exactly twice.
        """
        occ = self.occurrences
        if any(len(v) != 2 for v in occ.values()):
            return None
        out = [0] * (3 * len(self.triangles))
        for a, b in occ.values():
            out[a], out[b] = b, a
        return tuple(out)

    @cached_property
    def rotation(self) -> tuple[int, ...] | None:
        """Corner rotation around punctures (the permutation ``g`` on corners)."""
        partner = self.partner
        if partner is None:
            return None
        return tuple(partner[3 * (c // 3) + (c % 3 + 1) % 3] for c in range(3 * len(self.triangles)))

    @cached_property
    def corner_orbits(self) -> tuple[tuple[int, ...], ...] | None:
        rot = self.rotation
        if rot is None:
            return None
        seen = [False] * len(rot)
        orbits = []
        for start in range(len(rot)):
            if seen[start]:
                continue
            orbit = []
            c = start
            while not seen[c]:
                seen[c] = True
                orbit.append(c)
                c = rot[c]
            orbits.append(tuple(orbit))
        return tuple(orbits)

    @cached_property
    def puncture_of_corner(self) -> tuple[int, ...] | None:
        orbits = self.corner_orbits
        if orbits is None:
            return None
        out = [0] * (3 * len(self.triangles))
        for p, orbit in enumerate(orbits):
            for c in orbit:
                out[c] = p
        return tuple(out)

    def valences(self) -> list[int]:
        orbits = self.corner_orbits
        if orbits is None:
            raise TriangulationError("arc occurrence counts are inconsistent; punctures undefined")
        return [len(o) for o in orbits]

    def arc_endpoints(self, arc: int) -> tuple[int, int]:
        """Punctures at the two ends of ``arc`` (equal for a loop)."""
        pc = self.puncture_of_corner
        if pc is None:
            raise TriangulationError("arc occurrence counts are inconsistent; punctures undefined")
        a, b = self.occurrences[arc]
        return pc[a], pc[b]

    def is_connected(self) -> bool:
        if not self.triangles:
            return False
        occ = self.occurrences
        adj: dict[int, set[int]] = {t: set() for t in range(len(self.triangles))}
        for slots in occ.values():
            ts = [s // 3 for s in slots]
            for u, v in combinations(ts, 2):
                adj[u].add(v)
                adj[v].add(u)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in adj[u] - seen:
                seen.add(v)
                stack.append(v)
        return len(seen) == len(self.triangles)

    def to_dict(self) -> dict:
        return {"triangles": [list(t) for t in self.triangles]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def parse_triangulation(document) -> Triangulation:
    """Parse ``{"triangles": [[a, b, c], ...]}`` (text or already-decoded mapping)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON ({exc.msg})", f"line {exc.lineno} col {exc.colno}") from exc
    if not isinstance(document, Mapping):
        raise ParseError("expected a JSON object", "$")
    if "triangles" not in document:
        raise ParseError("missing key 'triangles'", "$")
    tris = document["triangles"]
    if not isinstance(tris, list):
        raise ParseError("expected a list", "triangles")
    if not tris:
        raise ParseError("triangle list is empty", "triangles")
    out = []
    for i, tri in enumerate(tris):
        if not isinstance(tri, list) or len(tri) != 3:
            raise ParseError("expected a list of three arc ids", f"triangles[{i}]")
        for j, a in enumerate(tri):
            if isinstance(a, bool) or not isinstance(a, int) or a < 0:
                raise ParseError("expected a nonnegative integer", f"triangles[{i}][{j}]")
        out.append(tuple(tri))
    return Triangulation(tuple(out))


def validate(t: Triangulation) -> ValidationReport:
    report = ValidationReport()
    problems = report.problems
    if not t.triangles:
        problems.append("no triangles")
        return report
    for idx, tri in enumerate(t.triangles):
        if len(set(tri)) < 3:
            problems.append(f"self-folded triangle at index {idx}")
    for a, slots in sorted(t.occurrences.items()):
        if len(slots) != 2:
            problems.append(f"arc {a} occurs {len(slots)} times (expected 2)")
    ids = t.arc_ids
    if ids != frozenset(range(len(ids))):
        problems.append(f"arc ids are not the contiguous range 0..{len(ids) - 1}")
    if not t.is_connected():
        problems.append("gluing graph is disconnected")
    if t.corner_orbits is not None:
        for p, orbit in enumerate(t.corner_orbits):
            if len(orbit) < 3:
                problems.append(f"(T3) violated at puncture {p} (valence {len(orbit)})")
    return report


def _require_valid(t: Triangulation) -> None:
    report = validate(t)
    if not report.ok:
        raise TriangulationError("invalid triangulation: " + "; ".join(report.problems))


def euler_data(t: Triangulation) -> dict:
    _require_valid(t)
    punctures = len(t.corner_orbits)
    arcs, triangles = t.n_arcs, t.n_triangles
    chi = punctures - arcs + triangles
    if chi % 2 or chi > 2:
        raise TriangulationError(f"Euler characteristic {chi} does not give an integer genus >= 0")
    genus = (2 - chi) // 2
    if arcs != 6 * genus - 6 + 3 * punctures:
        raise TriangulationError("arc count disagrees with 6g - 6 + 3P")
    return {"punctures": punctures, "arcs": arcs, "triangles": triangles, "genus": genus}


def puncture_cycles(t: Triangulation) -> list[PunctureCycle]:
    """One cycle per puncture: the arcs met when rotating around it."""
    _require_valid(t)
    n_arcs = t.n_arcs
    cycles = []
    for p, orbit in enumerate(t.corner_orbits):
        seq = tuple(t.side_arc(c) for c in orbit)
        v = [0] * n_arcs
        for a in seq:
            v[a] += 1
        cycles.append(PunctureCycle(p, seq, tuple(v)))
    return cycles


def condition_report(t: Triangulation) -> dict[str, bool]:
    report = validate(t)
    if not report.ok:
        return {"T3": False, "T3half": False, "T4": False}
    val = t.valences()
    t4 = min(val) >= 4
    t3half = all(max(val[p] for p in t.arc_endpoints(a)) >= 4 for a in t.arc_ids)
    return {"T3": True, "T3half": t3half, "T4": t4}


# -- constructions ----------------------------------------------------------


def _from_faces(faces, coords=None) -> Triangulation:
    """Build a triangulation from vertex triples.

    With ``coords`` given (a convex polyhedron around the origin) each face
    is first oriented outward.
    """
    oriented = []
    for a, b, c in faces:
        if coords is not None:
            pa, pb, pc = coords[a], coords[b], coords[c]
            det = (
                pa[0] * (pb[1] * pc[2] - pb[2] * pc[1])
                - pa[1] * (pb[0] * pc[2] - pb[2] * pc[0])
                + pa[2] * (pb[0] * pc[1] - pb[1] * pc[0])
            )
            if det < 0:
                b, c = c, b
        oriented.append((a, b, c))
    edges = sorted({tuple(sorted(e)) for a, b, c in oriented for e in ((a, b), (b, c), (c, a))})
    arc = {e: i for i, e in enumerate(edges)}
    key = lambda u, v: arc[(min(u, v), max(u, v))]  # noqa: E731
    return Triangulation(tuple((key(a, b), key(b, c), key(c, a)) for a, b, c in oriented))


def sphere_base(punctures: int) -> Triangulation:
    """Tetrahedron, triangular bipyramid or octahedron for 4, 5, 6 punctures."""
    if punctures == 4:
        coords = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
        faces = list(combinations(range(4), 3))
    elif punctures == 5:
        coords = [(0, 0, 2), (0, 0, -2), (2, 0, 0), (-1, 2, 0), (-1, -2, 0)]
        faces = [(apex, e1, e2) for apex in (0, 1) for e1, e2 in ((2, 3), (3, 4), (4, 2))]
    elif punctures == 6:
        coords = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
        faces = [(x, y, z) for x in (0, 1) for y in (2, 3) for z in (4, 5)]
    else:
        raise PreconditionError(f"sphere_base supports 4, 5 or 6 punctures, got {punctures}")
    return _from_faces(faces, coords)


def once_punctured_genus(g: int) -> Triangulation:
    """Fan triangulation of the 4g-gon with side word a1 b1 a1^-1 b1^-1 ...

    All polygon vertices are identified, giving one puncture of valence
    ``12g - 6``.  Side arcs get ids ``0 .. 2g-1``, diagonals follow.
    """
    if g < 1:
        raise PreconditionError(f"genus must be >= 1, got {g}")
    m = 4 * g

    def side(j):
        k, r = divmod(j, 4)
        return 2 * k + (r % 2)

    def edge(u, v):
        if (u, v) in ((0, 1), (1, 0)):
            return side(0)
        if (u, v) in ((0, m - 1), (m - 1, 0)):
            return side(m - 1)
        if abs(u - v) == 1:
            return side(min(u, v))
        d = v if u == 0 else u
        return 2 * g + d - 2

    return Triangulation(tuple((edge(0, j), edge(j, j + 1), edge(j + 1, 0)) for j in range(1, m - 1)))


def add_puncture(t: Triangulation, arc: int | None = None) -> Triangulation:
    """Replace ``arc`` by a star of four arcs around a new puncture on it.

    The new arcs reuse ``arc``'s id and take ``A, A+1, A+2``.
    """
    _require_valid(t)
    if arc is None:
        arc = min(t.arc_ids)
    if arc not in t.arc_ids:
        raise PreconditionError(f"arc {arc} does not exist")
    slot1, slot2 = t.occurrences[arc]
    t1, k1 = divmod(slot1, 3)
    t2, k2 = divmod(slot2, 3)
    _, a, b = (t.triangles[t1][(k1 + i) % 3] for i in range(3))
    _, c, d = (t.triangles[t2][(k2 + i) % 3] for i in range(3))
    n = t.n_arcs
    s0, s1, s2, s3 = arc, n, n + 1, n + 2
    tris = list(t.triangles)
    tris[t1] = (s0, s2, b)
    tris[t2] = (s1, s3, d)
    tris.append((s1, a, s2))
    tris.append((s0, c, s3))
    return Triangulation(tuple(tris))


def nice_triangulation(s: MarkedSurface, rng: random.Random | None = None) -> Triangulation:
    """A triangulation with the strongest valence condition the surface admits.

    Arcs for the inserted punctures are the smallest id unless ``rng`` is
    given, in which case they are drawn from it.
    """
    if not s.triangulable:
        raise PreconditionError(
            f"sphere with {s.puncture_count} punctures has no triangulation with (T3)"
        )
    if s.genus == 0:
        base_p = min(s.puncture_count, 6)
        t = sphere_base(base_p)
    else:
        base_p = 1
        t = once_punctured_genus(s.genus)
    for _ in range(s.puncture_count - base_p):
        arc = rng.choice(sorted(t.arc_ids)) if rng is not None else None
        t = add_puncture(t, arc)
    return t

"""Paths, exact linear combinations of paths, the potential and its derivatives."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from ..errors import ParseError, PreconditionError
from ..quiver import Quiver

__all__ = [
    "Path",
    "PathVector",
    "ScalarAssignment",
    "trivial",
    "arrow_path",
    "make_path",
    "path_target",
    "compose_paths",
    "concat",
    "potential",
    "cyclic_derivative",
    "jacobian_relations",
]


class Path(NamedTuple):
    """A path given by its source vertex and its arrows (empty for e_source)."""

    source: int
    arrows: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.source)


def trivial(i: int) -> Path:
    return Path(i, ())


def arrow_path(q: Quiver, a: int) -> Path:
    return Path(q.src[a], (a,))


def make_path(q: Quiver, arrows: Iterable[int], source: int | None = None) -> Path:
    arrows = tuple(arrows)
    if not arrows:
        if source is None:
            raise ValueError("a trivial path needs an explicit source vertex")
        return Path(source, ())
    for a, b in zip(arrows, arrows[1:]):
        if q.tgt[a] != q.src[b]:
            raise ValueError(f"arrows {a} and {b} do not compose")
    if source is not None and source != q.src[arrows[0]]:
        raise ValueError("source vertex disagrees with the first arrow")
    return Path(q.src[arrows[0]], arrows)


def path_target(q: Quiver, p: Path) -> int:
    return q.tgt[p.arrows[-1]] if p.arrows else p.source


def compose_paths(q: Quiver, p: Path, r: Path) -> Path | None:
    """p followed by r, or None when they do not compose."""
    if path_target(q, p) != r.source:
        return None
    return Path(p.source, p.arrows + r.arrows)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class PathVector:
    """Finite linear combination of paths with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[Path, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for p, c in items:
                self._add(p, _frac(c))

    def _add(self, p: Path, c: Fraction) -> None:
        if not c:
            return
        v = self.terms.get(p, 0) + c
        if v:
            self.terms[p] = v
        else:
            del self.terms[p]

    @classmethod
    def of(cls, p: Path, c=1) -> PathVector:
        return cls({p: c})

    def copy(self) -> PathVector:
        out = PathVector()
        out.terms = dict(self.terms)
        return out

    def items(self):
        return self.terms.items()

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, p: Path) -> Fraction:
        return self.terms.get(p, Fraction(0))

    def __contains__(self, p):
        return p in self.terms

    @property
    def degree(self) -> int:
        """Largest path length occurring (-1 for the zero vector)."""
        return max((p.length for p in self.terms), default=-1)

    @property
    def lowest_degree(self) -> int:
        return min((p.length for p in self.terms), default=-1)

    def __add__(self, other: PathVector) -> PathVector:
        out = self.copy()
        for p, c in other.terms.items():
            out._add(p, c)
        return out

    def __sub__(self, other: PathVector) -> PathVector:
        out = self.copy()
        for p, c in other.terms.items():
            out._add(p, -c)
        return out

    def __neg__(self) -> PathVector:
        return PathVector({p: -c for p, c in self.terms.items()})

    def __mul__(self, scalar) -> PathVector:
        if isinstance(scalar, PathVector):
            return NotImplemented
        s = _frac(scalar)
        if not s:
            return PathVector()
        out = PathVector()
        out.terms = {p: c * s for p, c in self.terms.items()}
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, PathVector):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_items(self) -> list[tuple[Path, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __repr__(self):
        if not self.terms:
            return "PathVector(0)"
        parts = []
        for p, c in self.sorted_items():
            word = "e%d" % p.source if not p.arrows else "*".join(map(str, p.arrows))
            parts.append(f"{c}*[{word}]")
        return "PathVector(" + " + ".join(parts) + ")"

    def to_json_obj(self) -> list[dict]:
        return [
            {"coefficient": str(c), "source": p.source, "arrows": list(p.arrows)}
            for p, c in self.sorted_items()
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json(cls, doc, q: Quiver | None = None) -> PathVector:
        if isinstance(doc, (str, bytes)):
            try:
                doc = json.loads(doc)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON ({exc.msg})", f"line {exc.lineno}") from exc
        if not isinstance(doc, list):
            raise ParseError("expected a list of terms", "$")
        out = cls()
        for i, term in enumerate(doc):
            loc = f"[{i}]"
            if not isinstance(term, dict) or not {"coefficient", "source", "arrows"} <= set(term):
                raise ParseError("expected {coefficient, source, arrows}", loc)
            try:
                c = Fraction(str(term["coefficient"]))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad coefficient {term['coefficient']!r}", loc + ".coefficient") from exc
            arrows = term["arrows"]
            if not isinstance(arrows, list) or not all(isinstance(a, int) for a in arrows):
                raise ParseError("arrows must be a list of integers", loc + ".arrows")
            if q is not None:
                try:
                    p = make_path(q, arrows, term["source"])
                except (ValueError, IndexError) as exc:
                    raise ParseError(str(exc), loc) from exc
            else:
                p = Path(int(term["source"]), tuple(arrows))
            out._add(p, c)
        return out


def concat(q: Quiver, x: PathVector, y: PathVector) -> PathVector:
    """Bilinear extension of path concatenation (non-composable pairs give 0)."""
    out = PathVector()
    tgt = q.tgt
    for p, c in x.terms.items():
        t = tgt[p.arrows[-1]] if p.arrows else p.source
        for r, d in y.terms.items():
            if r.source == t:
                out._add(Path(p.source, p.arrows + r.arrows), c * d)
    return out


@dataclass(frozen=True)
class ScalarAssignment:
    """One nonzero rational per g-orbit, indexed in g-orbit order (minimal arrow id)."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(_frac(v) for v in self.values)
        if any(v == 0 for v in vals):
            raise PreconditionError("scalars must be nonzero")
        object.__setattr__(self, "values", vals)

    @classmethod
    def default(cls, q: Quiver) -> ScalarAssignment:
        return cls(tuple(Fraction(p) for p in _primes(len(q.g_orbits))))

    @classmethod
    def parse(cls, text: str) -> ScalarAssignment:
        try:
            vals = tuple(Fraction(s.strip()) for s in text.split(",") if s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse scalars {text!r}", "--scalars") from exc
        if not vals:
            raise ParseError("empty scalar list", "--scalars")
        return cls(vals)

    def check(self, q: Quiver) -> None:
        if len(self.values) != len(q.g_orbits):
            raise PreconditionError(
                f"expected {len(q.g_orbits)} scalars (one per g-orbit), got {len(self.values)}"
            )

    def for_arrow(self, q: Quiver, a: int) -> Fraction:
        return self.values[q.g_orbit_of[a]]

    def product(self) -> Fraction:
        out = Fraction(1)
        for v in self.values:
            out *= v
        return out

    def to_list(self) -> list[str]:
        return [str(v) for v in self.values]


def _primes(k: int) -> list[int]:
    out: list[int] = []
    n = 2
    while len(out) < k:
        if all(n % p for p in out if p * p <= n):
            out.append(n)
        n += 1
    return out


def potential(q: Quiver, c: ScalarAssignment) -> PathVector:
    """Sum of the triangle 3-cycles minus the scaled puncture cycles."""
    c.check(q)
    w = PathVector()
    for orbit in q.f_orbits:
        a = min(orbit)
        w._add(Path(q.src[a], (a, q.f[a], q.f[q.f[a]])), Fraction(1))
    for k, orbit in enumerate(q.g_orbits):
        b = min(orbit)
        w._add(Path(q.src[b], q.g_run(b, len(orbit))), -c.values[k])
    return w


def cyclic_derivative(q: Quiver, w: PathVector, a: int) -> PathVector:
    out = PathVector()
    for p, coef in w.terms.items():
        if not p.arrows or q.tgt[p.arrows[-1]] != p.source:
            raise PreconditionError(f"term {p} is not a cycle")
        arrows = p.arrows
        for k, b in enumerate(arrows):
            if b != a:
                continue
            rot = arrows[k + 1:] + arrows[:k]
            out._add(Path(q.tgt[a], rot), coef)
    return out


def jacobian_relations(q: Quiver, c: ScalarAssignment) -> list[PathVector]:
    """The cyclic derivative of the potential with respect to every arrow, in arrow order."""
    w = potential(q, c)
    rels = [cyclic_derivative(q, w, a) for a in q.arrows]
    for a, r in enumerate(rels):
        if len(r) != 2:
            raise PreconditionError(f"relation for arrow {a} is not a binomial: {r}")
    return rels

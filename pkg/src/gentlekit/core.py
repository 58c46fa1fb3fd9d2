"""Graded quivers with quadratic monomial relations and their path bases.

Conventions
-----------
Paths are read left to right: the path ``(f, g)`` traverses ``f`` first and
then ``g``.  A relation is stored as the ordered pair ``(f, g)`` and means that
this length-two path is zero.  The right-to-left product ``a2 b1`` found in
most texts is therefore the pair ``("b1", "a2")``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InfiniteDimensional, InputError


@dataclass(frozen=True, order=True)
class Arrow:
    id: str
    source: str
    target: str
    degree: int = 0


@dataclass(frozen=True)
class GradedQuiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex id")
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate arrow id")
        if set(ids) & set(self.vertices):
            raise InputError("arrow ids and vertex ids must be distinct")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise InputError(f"arrow {a.id} has an undeclared endpoint")
            if not isinstance(a.degree, int):
                raise InputError(f"arrow {a.id} has a non-integer degree")

    @cached_property
    def arrow(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    def outgoing(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def incoming(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]


@dataclass(frozen=True)
class GentlePresentation:
    """The graded algebra kQ/I with I generated by length-two paths."""

    quiver: GradedQuiver
    relations: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        rels = frozenset(tuple(r) for r in self.relations)
        object.__setattr__(self, "relations", rels)
        arrows = self.quiver.arrow
        for r in rels:
            if len(r) != 2 or r[0] not in arrows or r[1] not in arrows:
                raise InputError(f"relation {r!r} names an unknown arrow")
            if arrows[r[0]].target != arrows[r[1]].source:
                raise InputError(f"relation {r!r} is not composable")

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    def degree(self, arrow_id: str) -> int:
        return self.quiver.arrow[arrow_id].degree

    def with_degrees(self, degrees: dict[str, int]) -> "GentlePresentation":
        """Same quiver and relations, arrows regraded by ``degrees`` (others kept)."""
        unknown = set(degrees) - set(self.quiver.arrow)
        if unknown:
            raise InputError(f"unknown arrows {sorted(unknown)}")
        arrows = tuple(Arrow(a.id, a.source, a.target, int(degrees.get(a.id, a.degree)))
                       for a in self.quiver.arrows)
        return GentlePresentation(GradedQuiver(self.quiver.vertices, arrows), self.relations)

    def is_relation(self, first: str, second: str) -> bool:
        return (first, second) in self.relations

    def continuations(self, arrow_id: str) -> list[Arrow]:
        """Arrows g with ``arrow_id`` then g a nonzero path."""
        a = self.quiver.arrow[arrow_id]
        return [b for b in self.quiver.outgoing(a.target) if (a.id, b.id) not in self.relations]


@dataclass(frozen=True, order=True)
class Path:
    """A path ``start -> end``; ``arrows == ()`` is the trivial path e_start."""

    start: str
    end: str
    arrows: tuple[str, ...] = ()
    degree: int = 0

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    @property
    def first(self) -> str | None:
        return self.arrows[0] if self.arrows else None

    @property
    def last(self) -> str | None:
        return self.arrows[-1] if self.arrows else None

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return f"e{self.start}" if not self.arrows else ".".join(self.arrows)


def trivial(v: str) -> Path:
    return Path(v, v, (), 0)


def make_path(p: GentlePresentation, arrows) -> Path:
    """Build a nonzero path from an arrow sequence; raises if it is zero or broken."""
    arrows = tuple(arrows)
    if not arrows:
        raise InputError("use trivial() for the trivial path")
    q = p.quiver.arrow
    for x in arrows:
        if x not in q:
            raise InputError(f"unknown arrow {x}")
    for x, y in zip(arrows, arrows[1:]):
        if q[x].target != q[y].source:
            raise InputError(f"arrows {x}, {y} are not composable")
        if (x, y) in p.relations:
            raise InputError(f"path {'.'.join(arrows)} is zero in the algebra")
    return Path(q[arrows[0]].source, q[arrows[-1]].target, arrows, sum(q[x].degree for x in arrows))


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate_gentle(p: GentlePresentation) -> ValidationReport:
    """Check the gentle axioms; returns every violated clause with its culprit."""
    bad = []
    rel = p.relations
    for v in p.vertices:
        if len(p.quiver.outgoing(v)) > 2:
            bad.append(f"vertex {v}: more than two outgoing arrows")
        if len(p.quiver.incoming(v)) > 2:
            bad.append(f"vertex {v}: more than two incoming arrows")
    for a in p.arrows:
        after = p.quiver.outgoing(a.target)
        before = p.quiver.incoming(a.source)
        if sum((a.id, b.id) in rel for b in after) > 1:
            bad.append(f"arrow {a.id}: more than one relation continuation")
        if sum((a.id, b.id) not in rel for b in after) > 1:
            bad.append(f"arrow {a.id}: more than one nonzero continuation")
        if sum((c.id, a.id) in rel for c in before) > 1:
            bad.append(f"arrow {a.id}: more than one relation predecessor")
        if sum((c.id, a.id) not in rel for c in before) > 1:
            bad.append(f"arrow {a.id}: more than one nonzero predecessor")
    return ValidationReport(not bad, bad)


@dataclass(frozen=True)
class PathBasis:
    paths: dict  # (v, w) -> tuple[Path, ...]

    @property
    def dimension(self) -> int:
        return sum(len(ps) for ps in self.paths.values())

    def between(self, v: str, w: str) -> tuple[Path, ...]:
        return self.paths.get((v, w), ())

    def __iter__(self):
        for key in sorted(self.paths):
            yield from self.paths[key]


_basis_cache: dict = {}


def enumerate_path_basis(p: GentlePresentation) -> PathBasis:
    """All nonzero paths of a finite-dimensional gentle algebra.

    Raises ``InfiniteDimensional`` when a nonzero path longer than the number of
    arrows exists, i.e. when some cycle of allowed continuations can be pumped.
    """
    if p in _basis_cache:
        return _basis_cache[p]
    limit = len(p.arrows)
    found = defaultdict(list)
    for v in p.vertices:
        found[(v, v)].append(trivial(v))
    q = p.quiver.arrow
    stack = [(a.id,) for a in sorted(p.arrows)]
    while stack:
        arrows = stack.pop()
        if len(arrows) > limit:
            raise InfiniteDimensional(f"nonzero path {'.'.join(arrows)} runs through a cycle")
        path = Path(q[arrows[0]].source, q[arrows[-1]].target, arrows,
                    sum(q[x].degree for x in arrows))
        found[(path.start, path.end)].append(path)
        for b in p.continuations(arrows[-1]):
            stack.append(arrows + (b.id,))
    basis = PathBasis({k: tuple(sorted(v, key=_path_key)) for k, v in found.items()})
    _basis_cache[p] = basis
    return basis


def _path_key(path: Path):
    return (len(path.arrows), path.arrows)


def compose(p: GentlePresentation, x: Path, y: Path) -> Path | None:
    """``x`` then ``y``; ``None`` stands for zero."""
    if x.end != y.start:
        raise InputError(f"cannot compose {x} ending at {x.end} with {y} starting at {y.start}")
    if x.is_trivial:
        return y
    if y.is_trivial:
        return x
    if (x.last, y.first) in p.relations:
        return None
    return Path(x.start, y.end, x.arrows + y.arrows, x.degree + y.degree)


def naive_dimension(p: GentlePresentation, max_length: int) -> int:
    """Brute-force count of nonzero paths of length <= max_length.

    Grows arrow sequences one arbitrary arrow at a time and keeps those whose
    last pair is composable and not a relation (a sequence with a bad pair
    can never become good again, so dropping it loses nothing).  It reads the
    raw arrow and relation data only, so it can serve as an oracle for
    ``enumerate_path_basis``.
    """
    q = p.quiver.arrow
    ids = [a.id for a in p.arrows]
    count = len(p.vertices)
    level = [(x,) for x in ids] if max_length >= 1 else []
    for n in range(1, max_length + 1):
        count += len(level)
        if n == max_length:
            break
        level = [seq + (y,) for seq in level for y in ids
                 if q[seq[-1]].target == q[y].source and (seq[-1], y) not in p.relations]
    return count

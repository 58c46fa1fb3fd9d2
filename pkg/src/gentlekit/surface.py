"""Graded marked surfaces presented by full formal arc systems.

Model
-----
Marked points sit on the boundary.  At a marked point the arc ends are
linearly ordered (the boundary interrupts the cyclic order); consecutive ends
``x_i, x_{i+1}`` bound an oriented angle, which becomes an arrow from the arc
of ``x_i`` to the arc of ``x_{i+1}``.  Two consecutive angles at the *same*
arc end compose to a nonzero path (the longer angle); an angle entering an arc
at one end followed by an angle leaving it at the other end is a relation.
These are exactly the corners met when walking once around a polygon.

Faces are traced as in a ribbon graph whose rotation at a marked point is
``boundary-in, x_1, ..., x_m, boundary-out``.  A face entered from the
boundary at ``q`` must leave through the boundary at some ``q'``; the boundary
segment closing it runs from ``q'`` back to ``q``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Callable

from .core import Arrow, GentlePresentation, GradedQuiver, enumerate_path_basis
from .errors import ConstructionError, InputError

End = tuple  # (arc_id, 0 | 1)


@dataclass(frozen=True)
class AngleFan:
    """The arc ends at one marked point, in boundary order, with angle data."""

    point: str
    ends: tuple  # tuple[End, ...]
    degrees: tuple = ()
    names: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "ends", tuple((str(a), int(e)) for a, e in self.ends))
        degs = tuple(self.degrees) if self.degrees else (0,) * max(len(self.ends) - 1, 0)
        object.__setattr__(self, "degrees", degs)
        if len(degs) != max(len(self.ends) - 1, 0):
            raise InputError(f"fan at {self.point}: need {len(self.ends) - 1} angle degrees")
        if self.names is not None:
            names = tuple(str(n) for n in self.names)
            if len(names) != len(degs):
                raise InputError(f"fan at {self.point}: need one name per angle")
            object.__setattr__(self, "names", names)

    def angle_names(self) -> tuple:
        if self.names is not None:
            return self.names
        return tuple(f"{self.point}:{i}" for i in range(len(self.degrees)))


@dataclass(frozen=True)
class ArcSystemPresentation:
    marked_points: tuple  # ((point_id, boundary_id), ...) in boundary order
    arcs: tuple  # ((arc_id, point_of_end_0, point_of_end_1), ...)
    fans: tuple  # (AngleFan, ...)

    def __post_init__(self):
        object.__setattr__(self, "marked_points",
                           tuple((str(p), str(b)) for p, b in self.marked_points))
        object.__setattr__(self, "arcs", tuple((str(a), str(x), str(y)) for a, x, y in self.arcs))
        object.__setattr__(self, "fans", tuple(self.fans))
        points = [p for p, _ in self.marked_points]
        if len(set(points)) != len(points):
            raise InputError("duplicate marked point")
        arc_ids = [a for a, _, _ in self.arcs]
        if len(set(arc_ids)) != len(arc_ids):
            raise InputError("duplicate arc id")
        for a, x, y in self.arcs:
            if x not in points or y not in points:
                raise InputError(f"arc {a} ends at an undeclared marked point")
        fan_points = [f.point for f in self.fans]
        if sorted(fan_points) != sorted(points):
            raise InputError("need exactly one angle fan per marked point")
        seen = Counter()
        where = {(a, 0): x for a, x, _ in self.arcs} | {(a, 1): y for a, _, y in self.arcs}
        for f in self.fans:
            for end in f.ends:
                if end not in where:
                    raise InputError(f"fan at {f.point} lists unknown arc end {end}")
                if where[end] != f.point:
                    raise InputError(f"arc end {end} is not at marked point {f.point}")
                seen[end] += 1
        for end in where:
            if seen[end] != 1:
                raise InputError(f"arc end {end} must appear exactly once in the fans")
        names = [n for f in self.fans for n in f.angle_names()]
        if len(set(names)) != len(names):
            raise InputError("angle names must be unique")

    @property
    def boundary_components(self) -> dict:
        comps: dict = {}
        for p, b in self.marked_points:
            comps.setdefault(b, []).append(p)
        return comps


@dataclass(frozen=True)
class SurfaceInvariants:
    genus: int
    boundary_components: int
    marked_points_per_boundary: tuple
    euler_characteristic: int

    def __post_init__(self):
        assert self.euler_characteristic == 2 - 2 * self.genus - self.boundary_components


@dataclass
class FaceTrace:
    boundary_next: dict = field(default_factory=dict)  # q' -> q: segment q' -> q
    faces: list = field(default_factory=list)  # each face: list of corners (point, index)
    unvisited: list = field(default_factory=list)


def _trace_faces(fans: dict, other_end) -> FaceTrace:
    """Trace all faces that contain a boundary segment; report leftover corners."""
    pos = {}
    for q, ends in fans.items():
        for i, e in enumerate(ends):
            pos[e] = (q, i)
    trace = FaceTrace()
    visited = set()
    for q in sorted(fans):
        ends = fans[q]
        if not ends:
            raise ConstructionError(f"marked point {q} carries no arc ends")
        corners = []
        leave = ends[0]
        for _ in range(len(pos) + 1):
            pt, i = pos[other_end(leave)]
            if i + 1 < len(fans[pt]):
                corners.append((pt, i))
                leave = fans[pt][i + 1]
            else:
                trace.boundary_next[pt] = q
                break
        else:  # pragma: no cover - the dart permutation makes this impossible
            raise ConstructionError(f"face starting at {q} does not close")
        visited.update(corners)
        trace.faces.append(corners)
    for q, ends in sorted(fans.items()):
        for i in range(len(ends) - 1):
            if (q, i) not in visited:
                trace.unvisited.append((q, i))
    return trace


def _cycles(perm: dict) -> list:
    seen, out = set(), []
    for start in sorted(perm):
        if start in seen:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        out.append(cyc)
    return out


def _same_cycle(a: list, b: list) -> bool:
    if sorted(a) != sorted(b):
        return False
    if len(a) <= 2:
        return True
    i = b.index(a[0])
    rot = b[i:] + b[:i]
    rev = [rot[0]] + rot[1:][::-1]
    return a == rot or a == rev


def validate_arc_system(a: ArcSystemPresentation) -> FaceTrace:
    """Face-trace ``a``; raise ``ConstructionError`` unless it is full formal."""
    fans = {f.point: f.ends for f in a.fans}
    trace = _trace_faces(fans, lambda e: (e[0], 1 - e[1]))
    if trace.unvisited:
        q, i = trace.unvisited[0]
        raise ConstructionError(
            f"face through the angle {q}:{i} contains no boundary segment")
    derived = _cycles(trace.boundary_next)
    declared = list(a.boundary_components.values())
    if len(derived) != len(declared) or not all(
            any(_same_cycle(d, c) for c in declared) for d in derived):
        raise ConstructionError(
            f"traced boundary components {derived} do not match the declared {declared}")
    return trace


def _invariants(n_arcs: int, trace: FaceTrace) -> SurfaceInvariants:
    comps = _cycles(trace.boundary_next)
    m = len(trace.boundary_next)
    chi = m - (n_arcs + m) + len(trace.faces)
    b = len(comps)
    twice_g = 2 - chi - b
    if twice_g < 0 or twice_g % 2:
        raise ConstructionError(f"inconsistent face count (chi={chi}, b={b})")
    return SurfaceInvariants(twice_g // 2, b, tuple(sorted(len(c) for c in comps)), chi)


def arc_system_to_algebra(a: ArcSystemPresentation) -> GentlePresentation:
    validate_arc_system(a)
    arrows = []
    lands = {}  # arrow id -> end it arrives at
    leaves = {}  # arrow id -> end it departs from
    for f in sorted(a.fans, key=lambda f: f.point):
        for i, (name, deg) in enumerate(zip(f.angle_names(), f.degrees)):
            x, y = f.ends[i], f.ends[i + 1]
            arrows.append(Arrow(name, x[0], y[0], int(deg)))
            leaves[name] = x
            lands[name] = y
    rels = set()
    for f in arrows:
        for g in arrows:
            if f.target == g.source and lands[f.id] != leaves[g.id]:
                rels.add((f.id, g.id))
    quiver = GradedQuiver(tuple(arc for arc, _, _ in a.arcs), tuple(arrows))
    return GentlePresentation(quiver, frozenset(rels))


def arc_system_invariants(a: ArcSystemPresentation) -> SurfaceInvariants:
    return _invariants(len(a.arcs), validate_arc_system(a))


def algebra_ends(p: GentlePresentation) -> dict:
    """Split each vertex into two ends ``(in_arrow | None, out_arrow | None)``.

    An incoming arrow and its nonzero continuation share an end; arrows with
    no partner get an end of their own; vertices are padded with empty ends.
    """
    ends = {}
    for v in p.vertices:
        ins = sorted(a.id for a in p.quiver.incoming(v))
        outs = sorted(a.id for a in p.quiver.outgoing(v))
        pairs, used = [], set()
        for f in ins:
            g = next((g for g in outs if g not in used and not p.is_relation(f, g)), None)
            if g is not None:
                used.add(g)
            pairs.append((f, g))
        pairs += [(None, g) for g in outs if g not in used]
        if len(pairs) > 2:
            raise InputError(f"vertex {v} needs more than two ends; algebra is not gentle")
        while len(pairs) < 2:
            pairs.append((None, None))
        ends[v] = pairs
    return ends


def algebra_to_arc_fans(p: GentlePresentation) -> tuple:
    """Rebuild the marked points (as ordered end lists) from the permitted threads."""
    enumerate_path_basis(p)  # refuses infinite-dimensional input
    ends = algebra_ends(p)
    by_in, by_out = {}, {}
    for v, pair in ends.items():
        for k, (f, g) in enumerate(pair):
            if f is not None:
                by_in[f] = (v, k)
            if g is not None:
                by_out[g] = (v, k)
    fans = {}
    for v in p.vertices:
        for k, (f, g) in enumerate(ends[v]):
            if f is not None:
                continue
            chain, cur = [(v, k)], (v, k)
            while ends[cur[0]][cur[1]][1] is not None:
                cur = by_in[ends[cur[0]][cur[1]][1]]
                chain.append(cur)
            fans[f"m{len(fans)}"] = tuple(chain)
    return fans, ends


def algebra_to_surface_invariants(p: GentlePresentation) -> SurfaceInvariants:
    fans, _ = algebra_to_arc_fans(p)
    trace = _trace_faces(fans, lambda e: (e[0], 1 - e[1]))
    if trace.unvisited:
        raise ConstructionError("algebra has a face without boundary segment")
    return _invariants(len(p.vertices), trace)


# -- gradings ------------------------------------------------------------------

def _walk_letters(walk) -> list:
    letters = []
    for item in walk:
        if isinstance(item, str):
            name, sign = (item[1:], -1) if item.startswith("-") else (item, 1)
        else:
            name, sign = item
        letters.append((str(name), int(sign)))
    return letters


def cycle_twist(p: GentlePresentation, walk) -> int:
    """Grading mismatch accumulated once around a closed walk.

    ``walk`` is a cyclic sequence of ``(arrow, +1)`` / ``(arrow, -1)`` (or the
    strings ``"a"`` / ``"-a"``).  Direct arrows lower the running grading by
    their degree, inverse arrows raise it; each time the walk passes from one
    maximal nonzero direct path to the next (a relation between consecutive
    direct arrows) it crosses a marked point and gains 1, and loses 1 for the
    same event on inverse arrows.  A direct nonzero path ``p`` thus contributes
    ``1 - |p|``.
    """
    letters = _walk_letters(walk)
    if not letters:
        raise InputError("empty walk")
    q = p.quiver.arrow
    for name, sign in letters:
        if name not in q or sign not in (1, -1):
            raise InputError(f"bad walk letter {(name, sign)}")

    def ends(letter):
        a = q[letter[0]]
        return (a.source, a.target) if letter[1] > 0 else (a.target, a.source)

    n = len(letters)
    for i in range(n):
        if ends(letters[i])[1] != ends(letters[(i + 1) % n])[0]:
            raise InputError("walk is not closed")
    twist = 0
    for i in range(n):
        (f, s), (g, t) = letters[i], letters[(i + 1) % n]
        twist -= s * q[f].degree
        if s == t == 1 and p.is_relation(f, g):
            twist += 1
        elif s == t == -1 and p.is_relation(g, f):
            twist -= 1
    return twist


def grading_invariant(p: GentlePresentation, cycles) -> int:
    """gcd of the twists of ``cycles``; 0 is the standard grading."""
    cycles = list(cycles)
    if not cycles:
        raise InputError("need at least one cycle")
    n = 0
    for c in cycles:
        n = gcd(n, abs(cycle_twist(p, c)))
    return n


# -- built-in families ---------------------------------------------------------

def genus_family(g: int, marked: int = 2,
                 degrees: dict | Callable[[str], int] | None = None) -> ArcSystemPresentation:
    """Full formal arc system on a genus-g surface with one boundary component.

    ``marked=2``: arcs ``1..2g+1`` each join ``p`` to ``q``, met in the same
    order at both points; angles at ``p`` are ``a1..a2g``, at ``q`` ``b1..b2g``.
    ``marked=1``: ``2g`` loops at ``p`` met in the order
    ``1 2 1 2  3 4 3 4 ...``; for g = 1 the three angles are named a, b, c.
    ``degrees`` assigns a degree to each angle name (default 0).
    """
    if g < 1:
        raise InputError("genus must be at least 1 for these families")
    if marked not in (1, 2):
        raise InputError("marked must be 1 or 2")

    def deg(name):
        if degrees is None:
            return 0
        if callable(degrees):
            return int(degrees(name))
        return int(degrees.get(name, 0))

    if marked == 2:
        n = 2 * g + 1
        arcs = tuple((str(i), "p", "q") for i in range(1, n + 1))
        fans = []
        for pt, letter, e in (("p", "a", 0), ("q", "b", 1)):
            names = tuple(f"{letter}{i}" for i in range(1, n))
            fans.append(AngleFan(pt, tuple((str(i), e) for i in range(1, n + 1)),
                                 tuple(deg(x) for x in names), names))
        return ArcSystemPresentation((("p", "0"), ("q", "0")), arcs, tuple(fans))

    arcs = tuple((str(i), "p", "p") for i in range(1, 2 * g + 1))
    ends = []
    for h in range(g):
        x, y = str(2 * h + 1), str(2 * h + 2)
        ends += [(x, 0), (y, 0), (x, 1), (y, 1)]
    count = len(ends) - 1
    names = ("a", "b", "c") if count == 3 else tuple(f"x{i}" for i in range(1, count + 1))
    fan = AngleFan("p", tuple(ends), tuple(deg(x) for x in names), names)
    return ArcSystemPresentation((("p", "0"),), arcs, (fan,))


def family_cycles(g: int, marked: int) -> list:
    """Generating cycles documented for ``genus_family(g, marked)``.

    ``marked=2``: ``a_i b_i^{-1}`` for i = 1..2g.  ``marked=1``: for each handle
    the two loops ``x.y`` through consecutive angles (``a b`` and ``c b`` when
    g = 1).
    """
    if marked == 2:
        return [[(f"a{i}", 1), (f"b{i}", -1)] for i in range(1, 2 * g + 1)]
    if g == 1:
        return [[("a", 1), ("b", 1)], [("c", 1), ("b", 1)]]
    raise InputError("no documented cycle basis for marked=1 with g > 1")

"""Derived-category tests and bounded searches over string objects.

Block convention for semiorthogonal decompositions: blocks are stored left to
right as ``[B_1, ..., B_n]`` and the decomposition requires
``Hom(B_i, B_j[t]) = 0`` for every ``j < i`` and every ``t`` (nothing maps
from a later block back into an earlier one).  ``<P_1 | P_2 | P_3>`` over the
Kronecker chain is ``[[P_1], [P_2], [P_3]]``: paths only run from 1 towards 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd

from .core import GentlePresentation, enumerate_path_basis, trivial
from .fields import QQ, Field
from .homcalc import (HomProfile, Morphism, StringWord, TwistedComplex,
                      canonical_key, cohomology, compose_morphisms, cone,
                      direct_sum, enumerate_strings, hom_profile, minimize,
                      shift, string_hom_fast, string_to_twisted)

COMPLETENESS = "complete up to the stated bounds"


@dataclass(frozen=True)
class K0Class:
    vertices: tuple
    coords: tuple

    def __neg__(self):
        return K0Class(self.vertices, tuple(-c for c in self.coords))

    def __add__(self, other):
        return K0Class(self.vertices, tuple(a + b for a, b in zip(self.coords, other.coords)))


@dataclass(frozen=True)
class EulerForm:
    vertices: tuple
    matrix: tuple  # rows indexed by source vertex

    def pair(self, x: K0Class, y: K0Class) -> int:
        n = len(self.vertices)
        return sum(x.coords[i] * self.matrix[i][j] * y.coords[j]
                   for i in range(n) for j in range(n))


def k0_class(x: TwistedComplex) -> K0Class:
    verts = x.algebra.vertices
    coords = [0] * len(verts)
    for v, s in x.summands:
        coords[verts.index(v)] += -1 if s % 2 else 1
    return K0Class(verts, tuple(coords))


def euler_form(p: GentlePresentation) -> EulerForm:
    basis = enumerate_path_basis(p)
    rows = tuple(tuple(sum((-1) ** (q.degree % 2) for q in basis.between(v, w))
                       for w in p.vertices) for v in p.vertices)
    return EulerForm(p.vertices, rows)


def determinant(m) -> int:
    """Exact integer determinant (fraction-free elimination)."""
    from fractions import Fraction
    a = [[Fraction(x) for x in row] for row in m]
    n, det = len(a), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


def lattice_index(classes: list, rank: int) -> int:
    """gcd of all maximal minors: 1 iff the classes span the full lattice, 0 if rank-deficient."""
    g = 0
    for rows in combinations([c.coords for c in classes], rank):
        g = gcd(g, abs(determinant(rows)))
        if g == 1:
            return 1
    return g


@dataclass
class Certificate:
    ok: bool
    detail: str
    profile: HomProfile | None = None

    def __bool__(self):
        return self.ok


def is_exceptional(x: TwistedComplex, field: Field = QQ) -> Certificate:
    prof = hom_profile(x, x, field)
    return Certificate(dict(prof) == {0: 1}, f"End = {prof}", prof)


def in_right_orthogonal(e: TwistedComplex, x: TwistedComplex, field: Field = QQ) -> bool:
    """True iff ``Hom(e, x[t]) = 0`` for every ``t``."""
    return not hom_profile(e, x, field)


def is_semiorthogonal(blocks: list, field: Field = QQ, names: list | None = None) -> Certificate:
    names = names or [[f"B{i}.{k}" for k in range(len(b))] for i, b in enumerate(blocks)]
    for i, later in enumerate(blocks):
        for j in range(i):
            for a, x in enumerate(later):
                for b, y in enumerate(blocks[j]):
                    prof = hom_profile(x, y, field)
                    if prof:
                        d = min(prof)
                        return Certificate(False, f"Hom({names[i][a]}, {names[j][b]}) "
                                                  f"nonzero in degree {d}: {prof}", prof)
    return Certificate(True, "all back-to-front Hom profiles empty")


def is_full_exceptional_collection(objs: list, field: Field = QQ) -> Certificate:
    for k, x in enumerate(objs):
        c = is_exceptional(x, field)
        if not c:
            return Certificate(False, f"object {k} not exceptional: {c.detail}")
    c = is_semiorthogonal([[x] for x in objs], field)
    if not c:
        return c
    g = generates(objs[0].algebra, objs, 0, field=field)
    return Certificate(g.found, "exceptional, semiorthogonal; " + g.detail)


# -- generation ----------------------------------------------------------------------

@dataclass
class GenerationReport:
    found: bool
    depth: int
    detail: str
    steps: list = field(default_factory=list)

    def __bool__(self):
        return self.found


def _summand_shift(v: str, y: TwistedComplex, field: Field) -> int | None:
    """Some ``t`` such that ``P_v`` placed in degree ``t`` is a direct summand of ``y``.

    It splits off iff some ``f: P_v -> y`` of degree ``d`` and ``g: y -> P_v``
    of degree ``-d`` compose to an element with nonzero identity coefficient
    (the rest of ``End(P_v)`` in degree 0 is spanned by nilpotent loops);
    then ``t = d``.  Returns ``None`` when there is no such summand.
    """
    if not any(w == v for w, _ in y.summands):
        return None
    pv = TwistedComplex.projective(y.algebra, v)
    into = cohomology(pv, y, field)
    back = cohomology(y, pv, field)
    for d in sorted(into):
        for f in into[d]:
            for g in back.get(-d, ()):
                if field(compose_morphisms(f, g).as_vector().get((0, 0, trivial(v)), 0)):
                    return d
    return None


def _object_key(x: TwistedComplex):
    low = min((s for _, s in x.summands), default=0)
    return (tuple((v, s - low) for v, s in x.summands),
            tuple((i, j, tuple((q.arrows, c) for q, c in t)) for i, j, t in x.entries))


def generates(p: GentlePresentation, gens: list, depth: int, field: Field = QQ,
              max_summands: int | None = None) -> GenerationReport:
    """Bounded search for every projective inside the thick closure of ``gens``.

    Level 0 holds the minimized generators.  Level k+1 adds the minimized
    cones of cohomology-basis morphisms ``x -> y[t]`` between objects of
    level at most k, at least one of them from level k; pairs are tried
    smallest first.  Cones with more than ``max_summands`` summands (default:
    the largest generator plus one) are dropped.  A projective counts as
    reached once it is a direct summand of a pool object, and is then added
    to the pool itself.  The K0 lattice condition is tested first.  ``False``
    only means "not found within depth".
    """
    n = len(p.vertices)
    classes = [k0_class(g) for g in gens]
    if lattice_index(classes, n) != 1:
        return GenerationReport(False, 0, "K0 obstruction: generator classes do not span "
                                          f"the rank-{n} lattice")
    cap = max_summands or max(len(g) for g in gens) + 1
    pool, seen, steps = [], set(), []
    missing = set(p.vertices)
    homs = {}

    def admit(obj, label):
        key = _object_key(obj)
        if key in seen:
            return
        seen.add(key)
        pool.append((obj, label))
        for v in sorted(missing):
            t = _summand_shift(v, obj, field)
            if t is not None:
                missing.discard(v)
                steps.append(f"P{v}<{t}> is a summand of {label}")
                admit(TwistedComplex.projective(p, v, t), f"P{v}<{t}>")

    for k, g in enumerate(gens):
        admit(minimize(g, field), f"G{k}")
    fresh_from = 0
    for level in range(1, depth + 1):
        if not missing:
            break
        end = len(pool)
        pairs = sorted(((a, b) for a in range(end) for b in range(end)
                        if a >= fresh_from or b >= fresh_from),
                       key=lambda ab: (len(pool[ab[0]][0]) + len(pool[ab[1]][0]), ab))
        for a, b in pairs:
            if not missing:
                break
            (x, lx), (y, ly) = pool[a], pool[b]
            if (a, b) not in homs:
                homs[(a, b)] = cohomology(x, y, field)
            for d, reps in homs[(a, b)].items():
                for m, f in enumerate(reps):
                    # a degree-d map x -> y is a degree-0 map x -> y[d] = shift(y, -d)
                    c = minimize(cone(Morphism(x, shift(y, -d), 0, f.components), field), field)
                    if c.summands and len(c) <= cap:
                        admit(c, f"Cone({lx} -> {ly} deg {d} #{m})")
        fresh_from = end
        if not missing:
            return GenerationReport(True, level, f"all projectives reached at depth {level}", steps)
    if not missing:
        return GenerationReport(True, 0, "all projectives reached at depth 0", steps)
    return GenerationReport(False, depth, f"not found within depth {depth}: missing "
                                          + ", ".join(f"P{v}" for v in sorted(missing)), steps)


# -- searches ----------------------------------------------------------------------

@dataclass
class SearchReport:
    kind: str
    bounds: dict
    candidates: int
    witnesses: list
    statement: str = COMPLETENESS
    objects: list = field(default_factory=list, repr=False, compare=False)

    def lines(self) -> list:
        b = ", ".join(f"{k}={v}" for k, v in self.bounds.items())
        out = [f"search: {self.kind}", f"bounds: {b}", f"candidates: {self.candidates}",
               f"witnesses: {len(self.witnesses)}"]
        out += [f"  {w}" for w in self.witnesses]
        out.append(f"status: {self.statement}")
        return out

    def to_dict(self) -> dict:
        return {"kind": self.kind, "bounds": dict(self.bounds), "candidates": self.candidates,
                "witnesses": list(self.witnesses), "statement": self.statement}


def describe_word(w: StringWord) -> str:
    return f"[{w}]@{w.start}[{w.shift}]"


def exceptional_search(p: GentlePresentation, L: int, W: int,
                       constraint=None) -> SearchReport:
    """All exceptional string objects with at most ``L`` letters.

    Exceptionality does not depend on the overall shift, so one
    shift-normalized representative covers every shift in ``[-W, W]``.
    ``constraint`` is an optional predicate on ``StringWord``; the
    candidate count is taken after it.
    """
    if L < 0 or W < 1:
        raise ValueError("bounds must be L >= 0 and W >= 1")
    words = enumerate_strings(p, L)
    if constraint is not None:
        words = [w for w in words if constraint(w)]
    hits = sorted((w for w in words if dict(string_hom_fast(w, w)) == {0: 1}), key=describe_word)
    return SearchReport("exceptional", {"L": L, "W": W}, len(words),
                        [describe_word(w) for w in hits], objects=hits)


def orthogonal_constraint(obj: StringWord, side: str = "either"):
    """Predicate: a word lies in ``obj``'s right orthogonal, left orthogonal, or either."""
    def right(w):
        return not string_hom_fast(obj, w)

    def left(w):
        return not string_hom_fast(w, obj)

    return {"right": right, "left": left,
            "either": lambda w: right(w) or left(w)}[side]


def _positive_free_shifts(pxy: HomProfile, pyx: HomProfile, W: int) -> list:
    """Offsets ``s`` in ``[-W, W]`` leaving no positive-degree Homs between ``x`` and ``shift(y, s)``."""
    # Hom(x, shift(y, s)) in degree d is Hom(x, y) in degree d - s, and
    # Hom(shift(y, s), x) in degree d is Hom(y, x) in degree d + s.
    return [s for s in range(-W, W + 1)
            if all(d + s <= 0 for d in pxy) and all(d - s <= 0 for d in pyx)]


def silting_search(p: GentlePresentation, L: int, W: int, depth: int = 4,
                   field: Field = QQ, max_witnesses: int | None = None) -> SearchReport:
    """Bounded search for silting objects that are sums of ``#vertices`` string objects.

    The first summand is shift-normalized and the others range over relative
    shifts in ``[-W, W]``.  A candidate must (a) have no positive-degree
    self-Homs, (b) have K0 classes forming a basis, and (c) generate every
    projective within ``depth`` cones.  With ``max_witnesses`` the search
    stops early and the report says so instead of claiming completeness.
    """
    if L < 0 or W < 1:
        raise ValueError("bounds must be L >= 0 and W >= 1")
    r = len(p.vertices)
    words = [w for w in enumerate_strings(p, L) if all(d <= 0 for d in string_hom_fast(w, w))]
    prof = {}

    def hp(i, j):
        if (i, j) not in prof:
            prof[(i, j)] = string_hom_fast(words[i], words[j])
        return prof[(i, j)]

    candidates = 0
    hits = []

    class Enough(Exception):
        pass

    def extend(chosen):
        nonlocal candidates
        if max_witnesses is not None and len(hits) >= max_witnesses:
            raise Enough
        if len(chosen) == r:
            candidates += 1
            objs = [string_to_twisted(words[i].shifted(s)) for i, s in chosen]
            if lattice_index([k0_class(o) for o in objs], r) != 1:
                return
            if not generates(p, objs, depth, field=field):
                return
            hits.append(" (+) ".join(describe_word(words[i].shifted(s)) for i, s in chosen))
            return
        start = chosen[-1][0] + 1 if chosen else 0
        for j in range(start, len(words)):
            shifts = [0] if not chosen else range(-W, W + 1)
            for s in shifts:
                ok = True
                for i, t in chosen:
                    if s - t not in _positive_free_shifts(hp(i, j), hp(j, i), 2 * W):
                        ok = False
                        break
                if ok:
                    extend(chosen + [(j, s)])

    statement = COMPLETENESS
    try:
        extend([])
    except Enough:
        statement = f"stopped after {max_witnesses} witness(es); not exhaustive"
    return SearchReport("silting", {"L": L, "W": W, "depth": depth}, candidates,
                        sorted(hits), statement)

"""Twisted complexes over a graded gentle algebra and their morphism spaces.

Notation dictionary
-------------------
* ``P_v`` is the indecomposable projective attached to vertex ``v``.  A
  summand ``(v, s)`` is ``P_v`` placed in cohomological degree ``s`` (the
  object written ``P_v[-s]`` in shift notation); ``shift(x, n)`` moves every
  summand ``n`` places up.  A degree-``n`` morphism from ``(v, s)`` to
  ``(w, t)`` is a linear combination of paths ``v -> w`` of degree
  ``n - t + s``.  So ``Hom(P_1, P_3)`` over the Kronecker chain is spanned by
  ``a1.a2`` and ``b1.b2``, and ``Hom(shift(x, m), shift(y, n))`` in degree
  ``d`` is ``Hom(x, y)`` in degree ``d + m - n``.
* Morphisms compose left to right: ``phi`` then ``psi`` is the concatenation
  of their paths, matching the relation order of :mod:`gentlekit.core`.
* A twisted complex is a list of summands ``(v, s)`` and a differential of total degree +1 with ``delta.delta = 0`` and no
  oriented cycles among its nonzero entries.
* The differential of the morphism complex is
  ``D(phi) = delta_Y o phi - (-1)^|phi| phi o delta_X``; ``X[1]`` negates
  ``delta_X`` and the cone of ``f: X -> Y`` is ``X[1] (+) Y`` with ``f`` below
  the diagonal, where ``X[1] = shift(X, -1)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction

from .core import (GentlePresentation, Path, ValidationReport, compose,
                   enumerate_path_basis, make_path, trivial)
from .errors import InputError, StringError
from .fields import QQ, Field
from .linalg import Reducer, complement_basis, left_kernel


class HomProfile(dict):
    """Cohomological degree -> dimension; zero dimensions are never stored."""

    def __init__(self, data=None):
        super().__init__({int(d): int(n) for d, n in dict(data or {}).items() if n})

    @property
    def total(self) -> int:
        return sum(self.values())

    def euler(self) -> int:
        return sum((-1) ** (d % 2) * n for d, n in self.items())

    def shifted(self, k: int) -> "HomProfile":
        """Profile of ``d -> self[d + k]``."""
        return HomProfile({d - k: n for d, n in self.items()})

    def __str__(self):
        if not self:
            return "(empty)"
        return ", ".join(f"deg {d}: {n}" for d, n in sorted(self.items()))


@dataclass(frozen=True)
class TwistedComplex:
    algebra: GentlePresentation
    summands: tuple = ()  # ((vertex, cohomological degree), ...)
    entries: tuple = ()  # ((i, j, ((path, coeff), ...)), ...) sorted

    @classmethod
    def build(cls, algebra, summands, entries=None) -> "TwistedComplex":
        summands = tuple((str(v), int(s)) for v, s in summands)
        packed = []
        for (i, j), terms in sorted((entries or {}).items()):
            terms = {path: Fraction(c) for path, c in dict(terms).items() if c}
            if terms:
                packed.append((int(i), int(j), tuple(sorted(terms.items()))))
        return cls(algebra, summands, tuple(packed))

    @classmethod
    def projective(cls, algebra, v, shift=0) -> "TwistedComplex":
        if str(v) not in algebra.vertices:
            raise InputError(f"unknown vertex {v}")
        return cls.build(algebra, [(v, shift)])

    @classmethod
    def zero(cls, algebra) -> "TwistedComplex":
        return cls(algebra)

    @cached_property
    def differential(self) -> dict:
        return {(i, j): dict(terms) for i, j, terms in self.entries}

    def __len__(self):
        return len(self.summands)

    def describe(self) -> str:
        parts = [f"P{v}<{s}>" for v, s in self.summands]
        return " + ".join(parts) if parts else "0"


def validate_twisted(x: TwistedComplex) -> ValidationReport:
    bad = []
    p = x.algebra
    n = len(x.summands)
    for v, _ in x.summands:
        if v not in p.vertices:
            bad.append(f"summand at unknown vertex {v}")
    if bad:
        return ValidationReport(False, bad)
    delta = x.differential
    for (i, j), terms in delta.items():
        if not (0 <= i < n and 0 <= j < n):
            bad.append(f"entry ({i},{j}): index out of range")
            continue
        if i == j:
            bad.append(f"entry ({i},{j}): diagonal entries break triangularity")
        (v, s), (w, t) = x.summands[i], x.summands[j]
        for path in terms:
            if path.start != v or path.end != w:
                bad.append(f"entry ({i},{j}): path {path} does not run {v} -> {w}")
            elif path.degree != 1 + s - t:
                bad.append(f"entry ({i},{j}): degree {path.degree} != {1 + s - t}")
    if bad:
        return ValidationReport(False, bad)
    # triangularity: the entry graph must be acyclic
    succ = defaultdict(set)
    for i, j in delta:
        succ[i].add(j)
    state = {}

    def cyclic(u):
        state[u] = 1
        for w in succ[u]:
            if state.get(w) == 1 or (w not in state and cyclic(w)):
                return True
        state[u] = 2
        return False

    if any(u not in state and cyclic(u) for u in range(n)):
        bad.append("triangularity: entries form an oriented cycle")
        return ValidationReport(False, bad)
    # square zero
    sq = defaultdict(lambda: defaultdict(Fraction))
    for (i, j), t1 in delta.items():
        for (j2, k), t2 in delta.items():
            if j2 != j:
                continue
            for a, c1 in t1.items():
                for b, c2 in t2.items():
                    ab = compose(p, a, b)
                    if ab is not None:
                        sq[(i, k)][ab] += c1 * c2
    for (i, k), terms in sorted(sq.items()):
        if any(terms.values()):
            bad.append(f"square-zero: (delta.delta)({i},{k}) != 0")
    return ValidationReport(not bad, bad)


def require_valid(x: TwistedComplex):
    rep = validate_twisted(x)
    if not rep.ok:
        raise InputError("invalid twisted complex: " + "; ".join(rep.violations))


def shift(x: TwistedComplex, n: int) -> TwistedComplex:
    sign = -1 if n % 2 else 1
    return TwistedComplex(
        x.algebra,
        tuple((v, s + n) for v, s in x.summands),
        tuple((i, j, tuple((pth, sign * c) for pth, c in terms)) for i, j, terms in x.entries),
    )


def direct_sum(*xs: TwistedComplex) -> TwistedComplex:
    if not xs:
        raise InputError("direct_sum needs at least one object")
    algebra = xs[0].algebra
    summands, entries, off = [], {}, 0
    for x in xs:
        if x.algebra != algebra:
            raise InputError("objects live over different algebras")
        summands += x.summands
        for (i, j), terms in x.differential.items():
            entries[(i + off, j + off)] = terms
        off += len(x.summands)
    return TwistedComplex.build(algebra, summands, entries)


# -- morphism complexes -----------------------------------------------------------

@dataclass(frozen=True)
class Morphism:
    """A homogeneous element of the morphism complex ``Hom(source, target)``."""

    source: TwistedComplex
    target: TwistedComplex
    degree: int
    components: tuple  # ((i, j, ((path, coeff), ...)), ...)

    @classmethod
    def build(cls, source, target, degree, comps: dict) -> "Morphism":
        packed = []
        for (i, j), terms in sorted(comps.items()):
            terms = {pth: c for pth, c in dict(terms).items() if c}
            if terms:
                packed.append((i, j, tuple(sorted(terms.items()))))
        return cls(source, target, int(degree), tuple(packed))

    def as_vector(self) -> dict:
        return {(i, j, pth): c for i, j, terms in self.components for pth, c in terms}

    @classmethod
    def from_vector(cls, source, target, degree, vec: dict) -> "Morphism":
        comps = defaultdict(dict)
        for (i, j, pth), c in vec.items():
            comps[(i, j)][pth] = c
        return cls.build(source, target, degree, comps)


def _basis_by_degree(x: TwistedComplex, y: TwistedComplex) -> dict:
    paths = enumerate_path_basis(x.algebra)
    out = defaultdict(list)
    for i, (v, s) in enumerate(x.summands):
        for j, (w, t) in enumerate(y.summands):
            for pth in paths.between(v, w):
                out[pth.degree + t - s].append((i, j, pth))
    return out


def _differential(x: TwistedComplex, y: TwistedComplex, n: int, elem) -> dict:
    """D applied to the basis element ``elem = (i, j, path)`` of degree ``n``."""
    p = x.algebra
    i, j, pth = elem
    out = defaultdict(Fraction)
    for (j0, k), terms in y.differential.items():
        if j0 == j:
            for q, c in terms.items():
                r = compose(p, pth, q)
                if r is not None:
                    out[(i, k, r)] += c
    sign = -1 if n % 2 == 0 else 1
    for (h, i0), terms in x.differential.items():
        if i0 == i:
            for q, c in terms.items():
                r = compose(p, q, pth)
                if r is not None:
                    out[(h, j, r)] += sign * c
    return {k: v for k, v in out.items() if v}


def apply_differential(f: Morphism, field: Field = QQ) -> Morphism:
    vec = defaultdict(Fraction)
    for elem, c in f.as_vector().items():
        for k, v in _differential(f.source, f.target, f.degree, elem).items():
            vec[k] += c * v
    vec = {k: field(v) for k, v in vec.items()}
    return Morphism.from_vector(f.source, f.target, f.degree + 1,
                                {k: v for k, v in vec.items() if v})


def hom_profile(x: TwistedComplex, y: TwistedComplex, field: Field = QQ) -> HomProfile:
    """Cohomology dimensions of the morphism complex, degree by degree.

    Dimensions come from exact ranks: ``dim H^n = dim C^n - rk D^n - rk D^{n-1}``.
    """
    basis = _basis_by_degree(x, y)
    ranks = {}
    for n, elems in basis.items():
        target = {e: k for k, e in enumerate(basis.get(n + 1, ()))}
        rows = []
        for e in elems:
            img = _differential(x, y, n, e)
            rows.append({target[k]: v for k, v in img.items()})
        ranks[n] = field.rank(rows)
    return HomProfile({n: len(elems) - ranks[n] - ranks.get(n - 1, 0)
                       for n, elems in basis.items()})


def cohomology_basis(x: TwistedComplex, y: TwistedComplex, n: int,
                     field: Field = QQ) -> list:
    """Cocycles of degree ``n`` whose classes form a basis of ``H^n Hom(x, y)``."""
    return _cohomology_basis(x, y, n, field, _basis_by_degree(x, y), {})


def cohomology(x: TwistedComplex, y: TwistedComplex, field: Field = QQ) -> dict:
    """Degree -> cocycle basis of ``H^d Hom(x, y)``, for every nonzero degree."""
    basis = _basis_by_degree(x, y)
    out, memo = {}, {}
    for n in sorted(basis):
        reps = _cohomology_basis(x, y, n, field, basis, memo)
        if reps:
            out[n] = reps
    return out


def _cohomology_basis(x, y, n, field, basis, memo) -> list:
    def image(m, e):
        if (m, e) not in memo:
            memo[(m, e)] = _differential(x, y, m, e)
        return memo[(m, e)]

    here = basis.get(n, [])
    if not here:
        return []
    nxt = {e: k for k, e in enumerate(basis.get(n + 1, ()))}
    rows = [{nxt[k]: v for k, v in image(n, e).items()} for e in here]
    kernel = left_kernel(field, rows)
    cycles = [{here[k]: c for k, c in vec.items()} for vec in kernel]
    boundaries = [image(n - 1, e) for e in basis.get(n - 1, [])]
    keyed = [{_sort_key(k): v for k, v in vec.items()} for vec in cycles]
    span = [{_sort_key(k): v for k, v in vec.items()} for vec in boundaries]
    chosen = complement_basis(field, span, keyed)
    back = {_sort_key(k): k for vec in cycles for k in vec}
    return [Morphism.from_vector(x, y, n, {back[k]: v for k, v in vec.items()})
            for vec in chosen]


def _sort_key(elem):
    i, j, pth = elem
    return (i, j, pth.start, pth.end, pth.arrows)


def compose_morphisms(f: Morphism, g: Morphism) -> Morphism:
    """``f`` then ``g`` (that is, ``g o f``)."""
    if f.target != g.source:
        raise InputError("morphisms are not composable")
    p = f.source.algebra
    vec = defaultdict(Fraction)
    gv = defaultdict(list)
    for (j, k, q), c in g.as_vector().items():
        gv[j].append((k, q, c))
    for (i, j, pth), c in f.as_vector().items():
        for k, q, d in gv[j]:
            r = compose(p, pth, q)
            if r is not None:
                vec[(i, k, r)] += c * d
    return Morphism.from_vector(f.source, g.target, f.degree + g.degree,
                                {k: v for k, v in vec.items() if v})


def identity(x: TwistedComplex) -> Morphism:
    return Morphism.from_vector(x, x, 0, {(i, i, trivial(v)): 1
                                          for i, (v, _) in enumerate(x.summands)})


def is_cocycle(f: Morphism, field: Field = QQ) -> bool:
    return not apply_differential(f, field).components


def cone(f: Morphism, field: Field = QQ) -> TwistedComplex:
    """Mapping cone of a degree-0 cocycle ``f: X -> Y``.

    Over a prime field the coefficients are reduced mod ``p``.
    """
    if f.degree != 0:
        raise InputError("cone needs a degree-0 morphism")
    if not is_cocycle(f, field):
        raise InputError("cone needs a cocycle")
    x, y = f.source, f.target
    n = len(x.summands)
    summands = [(v, s - 1) for v, s in x.summands] + list(y.summands)
    entries = {}
    for (i, j), terms in x.differential.items():
        entries[(i, j)] = {pth: field(-c) for pth, c in terms.items()}
    for (i, j), terms in y.differential.items():
        entries[(i + n, j + n)] = {pth: field(c) for pth, c in terms.items()}
    for i, j, terms in f.components:
        entries[(i, j + n)] = {pth: field(c) for pth, c in dict(terms).items()}
    return TwistedComplex.build(x.algebra, summands, entries)


# -- string objects ----------------------------------------------------------------

@dataclass(frozen=True)
class StringWord:
    """A homotopy string: letters are nonzero paths, direct (+1) or inverse (-1).

    Node 0 sits at ``start`` in degree ``shift``; a direct letter ``p`` moves
    the degree by ``1 - |p|`` and an inverse letter by ``|p| - 1``.
    """

    algebra: GentlePresentation
    start: str
    letters: tuple = ()  # ((Path, +1 | -1), ...)
    shift: int = 0

    def nodes(self) -> list:
        out = [(self.start, self.shift)]
        v, s = self.start, self.shift
        for pth, d in self.letters:
            if d > 0:
                v, s = pth.end, s + 1 - pth.degree
            else:
                v, s = pth.start, s + pth.degree - 1
            out.append((v, s))
        return out

    def normalized(self) -> "StringWord":
        low = min(s for _, s in self.nodes())
        return StringWord(self.algebra, self.start, self.letters, self.shift - low)

    def shifted(self, n: int) -> "StringWord":
        return StringWord(self.algebra, self.start, self.letters, self.shift + n)

    def inverse(self) -> "StringWord":
        nodes = self.nodes()
        letters = tuple((pth, -d) for pth, d in reversed(self.letters))
        return StringWord(self.algebra, nodes[-1][0], letters, nodes[-1][1])

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return f"e{self.start}"
        return " ".join(("" if d > 0 else "-") + str(pth) for pth, d in self.letters)


def string_violation(w: StringWord) -> str | None:
    """First violated homotopy-string clause, or ``None``."""
    p = w.algebra
    if w.start not in p.vertices:
        return f"unknown start vertex {w.start}"
    v = w.start
    for k, (pth, d) in enumerate(w.letters):
        if d not in (1, -1):
            return f"letter {k}: direction must be +1 or -1"
        if pth.is_trivial:
            return f"letter {k}: letters must be paths of positive length"
        try:
            real = make_path(p, pth.arrows)
        except InputError as e:
            return f"letter {k}: {e}"
        if real != pth:
            return f"letter {k}: path data inconsistent with the algebra"
        here = pth.start if d > 0 else pth.end
        if here != v:
            return f"letter {k}: starts at {here}, expected {v}"
        v = pth.end if d > 0 else pth.start
    for k, ((x, d), (y, e)) in enumerate(zip(w.letters, w.letters[1:])):
        if d == e == 1 and not p.is_relation(x.last, y.first):
            return f"letters {k},{k + 1}: consecutive direct letters must compose to zero"
        if d == e == -1 and not p.is_relation(y.last, x.first):
            return f"letters {k},{k + 1}: consecutive inverse letters must compose to zero"
        if d == 1 and e == -1 and x.last == y.last:
            return f"letters {k},{k + 1}: direct then inverse letter end with the same arrow"
        if d == -1 and e == 1 and x.first == y.first:
            return f"letters {k},{k + 1}: inverse then direct letter begin with the same arrow"
    return None


def check_string(w: StringWord):
    why = string_violation(w)
    if why:
        raise StringError(why)


def word(algebra: GentlePresentation, text: str, start: str | None = None,
         shift: int = 0) -> StringWord:
    """Parse ``"a1 b2"`` / ``"a.b -c"``: letters are dot-joined arrows, ``-`` marks inverse.

    ``"e2"`` or ``start`` with empty text gives the trivial word.
    """
    text = text.strip()
    if not text or (text.startswith("e") and text[1:] in algebra.vertices and start is None):
        v = start if not text else text[1:]
        if v is None:
            raise InputError("trivial word needs a start vertex")
        return StringWord(algebra, str(v), (), shift)
    letters = []
    for tok in text.split():
        d = -1 if tok.startswith("-") else 1
        pth = make_path(algebra, tok.lstrip("-").split("."))
        letters.append((pth, d))
    first, d = letters[0]
    v0 = first.start if d > 0 else first.end
    if start is not None and str(start) != v0:
        raise InputError("start vertex does not match the first letter")
    w = StringWord(algebra, v0, tuple(letters), shift)
    check_string(w)
    return w


def string_to_twisted(w: StringWord) -> TwistedComplex:
    check_string(w)
    nodes = w.nodes()
    entries = {}
    for k, (pth, d) in enumerate(w.letters):
        key = (k, k + 1) if d > 0 else (k + 1, k)
        entries[key] = {pth: 1}
    return TwistedComplex.build(w.algebra, nodes, entries)


def string_hom_fast(w1: StringWord, w2: StringWord) -> HomProfile:
    """Hom profile between string objects without building twisted complexes.

    The morphism complex is read off the two words: a basis element is a path
    from a node of ``w1`` to a node of ``w2``; its differential only involves
    the at most two letters at each of the two nodes.  The complex is then
    collapsed by cancelling matched pairs (each cancellation removes one
    element in adjacent degrees and keeps the cohomology); once no arrow of
    the differential is left, the surviving elements are a basis of Hom.
    """
    check_string(w1)
    check_string(w2)
    p = w1.algebra
    paths = enumerate_path_basis(p)
    n1, n2 = w1.nodes(), w2.nodes()

    def outgoing(w):
        # node -> [(neighbour, path, coeff)] for differential entries leaving the node
        out = defaultdict(list)
        for k, (pth, d) in enumerate(w.letters):
            if d > 0:
                out[k].append((k + 1, pth))
            else:
                out[k + 1].append((k, pth))
        return out

    def incoming(w):
        inc = defaultdict(list)
        for k, (pth, d) in enumerate(w.letters):
            if d > 0:
                inc[k + 1].append((k, pth))
            else:
                inc[k].append((k + 1, pth))
        return inc

    out2, in1 = outgoing(w2), incoming(w1)
    degree = {}
    for i, (v, s) in enumerate(n1):
        for j, (u, t) in enumerate(n2):
            for pth in paths.between(v, u):
                degree[(i, j, pth)] = pth.degree + t - s
    fwd = {}
    for (i, j, pth), n in degree.items():
        img = defaultdict(int)
        for k, q in out2.get(j, ()):
            r = compose(p, pth, q)
            if r is not None:
                img[(i, k, r)] += 1
        sign = -1 if n % 2 == 0 else 1
        for h, q in in1.get(i, ()):
            r = compose(p, q, pth)
            if r is not None:
                img[(h, j, r)] += sign
        fwd[(i, j, pth)] = {k: Fraction(c) for k, c in img.items() if c}
    alive = _cancel_pairs(fwd)
    counts = defaultdict(int)
    for e in alive:
        counts[degree[e]] += 1
    return HomProfile(counts)


def _cancel_pairs(fwd: dict) -> set:
    """Reduce a based complex by repeated elementary cancellations."""
    bwd = defaultdict(dict)
    for x, img in fwd.items():
        for y, c in img.items():
            bwd[y][x] = c
    alive = set(fwd)
    order = sorted(fwd, key=_sort_key)
    for x in order:
        while x in alive and fwd[x]:
            y = min(fwd[x], key=_sort_key)
            c = fwd[x][y]
            dx = dict(fwd[x])
            for z, a in list(bwd[y].items()):
                if z == x:
                    continue
                f = a / c
                img = fwd[z]
                for w, v in dx.items():
                    nv = img.get(w, 0) - f * v
                    if nv:
                        img[w] = nv
                        bwd[w][z] = nv
                    else:
                        img.pop(w, None)
                        bwd[w].pop(z, None)
            for dead in (x, y):
                for w in list(fwd[dead]):
                    bwd[w].pop(dead, None)
                for z in list(bwd[dead]):
                    fwd[z].pop(dead, None)
                fwd[dead] = {}
                bwd[dead] = {}
                alive.discard(dead)
    return alive


def minimize(x: TwistedComplex, field: Field = QQ) -> TwistedComplex:
    """Homotopy-equivalent complex with no invertible (trivial-path) entries.

    Each cancellation removes a pair ``(v, s) -> (v, s + 1)`` joined by a
    nonzero multiple ``c`` of the identity and corrects the remaining entries
    by ``-alpha c^{-1} beta`` (Gaussian elimination for complexes).
    """
    p = x.algebra
    summands = list(x.summands)
    delta = {k: {q: field(c) for q, c in v.items()} for k, v in x.differential.items()}
    while True:
        hit = next(((i, j) for (i, j), terms in sorted(delta.items())
                    for pth, c in terms.items() if pth.is_trivial and c), None)
        if hit is None:
            break
        i, j = hit
        c_inv = field.inv(delta[(i, j)][trivial(summands[i][0])])
        into_j = {h: t for (h, jj), t in delta.items() if jj == j and h != i}
        from_i = {k: t for (ii, k), t in delta.items() if ii == i and k != j}
        for h, alpha in into_j.items():
            for k, beta in from_i.items():
                acc = delta.setdefault((h, k), {})
                for a, ca in alpha.items():
                    for b, cb in beta.items():
                        ab = compose(p, a, b)
                        if ab is not None:
                            acc[ab] = field.normalize(acc.get(ab, 0) - ca * cb * c_inv)
        keep = [m for m in range(len(summands)) if m not in (i, j)]
        index = {m: n for n, m in enumerate(keep)}
        delta = {(index[a], index[b]): {q: v for q, v in t.items() if v}
                 for (a, b), t in delta.items() if a in index and b in index}
        delta = {k: t for k, t in delta.items() if t}
        summands = [summands[m] for m in keep]
    return TwistedComplex.build(p, summands, delta)


def enumerate_strings(p: GentlePresentation, max_letters: int) -> list:
    """Every homotopy string with at most ``max_letters`` letters, up to inversion.

    Words are shift-normalized (minimal node shift 0); of a word and its
    inverse only the one with the smaller canonical key is kept.  The order
    is deterministic.
    """
    letters = [pth for pth in enumerate_path_basis(p) if not pth.is_trivial]
    frontier = [StringWord(p, v, (), 0) for v in p.vertices]
    found = {}
    for n in range(max_letters + 1):
        new = []
        for w in frontier:
            key = canonical_key(w)
            found.setdefault(key, w if key == _word_key(w.normalized()) else w.inverse().normalized())
            if n == max_letters:
                continue
            end = w.nodes()[-1][0]
            for pth in letters:
                for d in (1, -1):
                    if (pth.start if d > 0 else pth.end) != end:
                        continue
                    w2 = StringWord(p, w.start, w.letters + ((pth, d),), 0)
                    if string_violation(w2) is None:
                        new.append(w2)
        frontier = new
    return [found[k] for k in sorted(found)]


def _word_key(w: StringWord):
    return (len(w.letters), w.start, w.shift,
            tuple((pth.arrows, d) for pth, d in w.letters))


def canonical_key(w: StringWord):
    """Key shared by a word and its inverse, after shift normalization."""
    return min(_word_key(w.normalized()), _word_key(w.inverse().normalized()))

"""Incremental exact elimination over a ``Field``.

Vectors are sparse dicts ``{key: value}``; keys only need to be orderable.
"""

from __future__ import annotations

from .fields import Field


class Reducer:
    """Keeps a row-echelon basis; ``add`` reports whether a vector was new."""

    def __init__(self, field: Field, track: bool = False):
        self.field = field
        self.track = track
        self.pivots: dict = {}  # pivot key -> (row with leading 1, combination)

    def reduce(self, vec: dict, combo: dict | None = None):
        F = self.field
        p = F.p
        r = {k: F(v) for k, v in vec.items()}
        r = {k: v for k, v in r.items() if v}
        c = dict(combo or {})
        while r:
            key = min(r)
            if key not in self.pivots:
                return r, c
            row, rc = self.pivots[key]
            f = r[key]
            _axpy(r, row, -f, p)
            if self.track:
                _axpy(c, rc, -f, p)
        return r, c

    def add(self, vec: dict, combo: dict | None = None):
        """Insert ``vec``; returns ``(True, None)`` if independent, else ``(False, combo)``.

        With ``track=True`` the returned combo expresses a dependency among the
        tagged inputs (the left kernel element).
        """
        r, c = self.reduce(vec, combo)
        if not r:
            return False, c
        F = self.field
        key = min(r)
        inv = F.inv(r[key])
        r = {k: F.normalize(v * inv) for k, v in r.items()}
        if self.track:
            c = {k: F.normalize(v * inv) for k, v in c.items()}
        self.pivots[key] = (r, c)
        return True, None

    def __len__(self):
        return len(self.pivots)


def _axpy(target: dict, src: dict, f, p):
    for k, v in src.items():
        nv = target.get(k, 0) + f * v
        if p is not None:
            nv %= p
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def left_kernel(field: Field, rows: list) -> list:
    """Basis of ``{c : sum_i c_i rows[i] = 0}`` as sparse dicts over row indices."""
    red = Reducer(field, track=True)
    out = []
    for i, row in enumerate(rows):
        ok, combo = red.add(row, {i: field(1)})
        if not ok:
            out.append({k: v for k, v in combo.items() if v})
    return out


def complement_basis(field: Field, span: list, candidates: list) -> list:
    """Subset of ``candidates`` extending ``span`` to a basis of span + candidates."""
    red = Reducer(field)
    for v in span:
        red.add(v)
    return [v for v in candidates if red.add(v)[0]]

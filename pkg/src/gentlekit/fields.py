"""Exact coefficient fields and the rank computations built on them.

Two fields are supported: the rationals (``Fraction``) and prime fields
``F_p`` (plain ints reduced mod ``p``).  All linear algebra in the toolkit is
exact; nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Field:
    """An exact field.  ``Field()`` is the rationals, ``Field(p)`` is F_p."""

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise InputError(f"{p} is not prime")
        self.p = p

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    @property
    def name(self) -> str:
        return "rationals" if self.p is None else f"prime:{self.p}"

    def __call__(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def normalize(self, x):
        return x if self.p is None else x % self.p

    def rank(self, rows) -> int:
        """Rank of a matrix given as a list of sparse rows ``{col: value}``.

        Rows are consumed (copied first); zero entries may be present.
        """
        p = self.p
        pivots: dict = {}  # pivot column -> reduced row with leading 1
        rank = 0
        for row in rows:
            r = {c: self(v) for c, v in row.items()}
            r = {c: v for c, v in r.items() if v}
            while r:
                col = min(r)
                if col in pivots:
                    piv = pivots[col]
                    f = r[col]
                    for c, v in piv.items():
                        nv = r.get(c, 0) - f * v
                        if p is not None:
                            nv %= p
                        if nv:
                            r[c] = nv
                        else:
                            r.pop(c, None)
                    continue
                inv = self.inv(r[col])
                if p is None:
                    r = {c: v * inv for c, v in r.items()}
                else:
                    r = {c: (v * inv) % p for c, v in r.items()}
                pivots[col] = r
                rank += 1
                break
        return rank


QQ = Field()


def parse_field(text: str) -> Field:
    """``"rationals"``/``"QQ"`` or ``"prime:7"``/``"GF(7)"``/``"7"``."""
    t = text.strip()
    if t.lower() in ("rationals", "qq", "q"):
        return QQ
    for prefix in ("prime:", "gf(", "f"):
        if t.lower().startswith(prefix):
            t = t[len(prefix):].rstrip(")")
            break
    try:
        return Field(int(t))
    except ValueError:
        raise InputError(f"unknown field {text!r}") from None

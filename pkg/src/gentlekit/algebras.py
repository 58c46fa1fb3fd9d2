"""The concrete gentle algebras that the toolkit knows by name."""

from __future__ import annotations

from .core import Arrow, GentlePresentation, GradedQuiver


def kronecker_chain(degrees: dict | None = None) -> GentlePresentation:
    """Three vertices joined by double arrows, a2 b1 = b2 a1 = 0.

    Arrows ``a1, b1: 1 -> 2`` and ``a2, b2: 2 -> 3``.  The two relations kill
    exactly the length-two paths b1.a2 and a1.b2 through vertex 2, leaving
    the nonzero paths a1.a2 and b1.b2.
    """
    d = {"a1": 0, "b1": 0, "a2": 0, "b2": 0}
    d.update(degrees or {})
    q = GradedQuiver(
        ("1", "2", "3"),
        (
            Arrow("a1", "1", "2", d["a1"]),
            Arrow("b1", "1", "2", d["b1"]),
            Arrow("a2", "2", "3", d["a2"]),
            Arrow("b2", "2", "3", d["b2"]),
        ),
    )
    return GentlePresentation(q, frozenset({("b1", "a2"), ("a1", "b2")}))


def torus_one_point(degrees: dict | None = None) -> GentlePresentation:
    """``a, c: 1 -> 2``, ``b: 2 -> 1`` with ab = bc = 0 (right-to-left).

    Default degrees are the standard grading |a| = |c| = 0, |b| = 1.
    """
    d = {"a": 0, "b": 1, "c": 0}
    d.update(degrees or {})
    q = GradedQuiver(
        ("1", "2"),
        (
            Arrow("a", "1", "2", d["a"]),
            Arrow("b", "2", "1", d["b"]),
            Arrow("c", "1", "2", d["c"]),
        ),
    )
    return GentlePresentation(q, frozenset({("b", "a"), ("c", "b")}))


def linear_a2() -> GentlePresentation:
    return GentlePresentation(GradedQuiver(("1", "2"), (Arrow("x", "1", "2", 0),)), frozenset())


def single_vertex() -> GentlePresentation:
    return GentlePresentation(GradedQuiver(("1",), ()), frozenset())

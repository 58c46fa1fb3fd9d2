import itertools

import pytest

from gentlekit.algebras import kronecker_chain, linear_a2, torus_one_point
from gentlekit.core import validate_gentle
from gentlekit.errors import ConstructionError, InputError
from gentlekit.surface import (AngleFan, ArcSystemPresentation, algebra_to_surface_invariants,
                               arc_system_invariants, arc_system_to_algebra, cycle_twist,
                               family_cycles, genus_family, grading_invariant,
                               validate_arc_system)

CYCLES_QP = family_cycles(1, 1)


def same_algebra(p, q):
    return (set(p.arrows) == set(q.arrows) and p.relations == q.relations
            and set(p.vertices) == set(q.vertices))


def test_two_point_torus_gives_q():
    assert same_algebra(arc_system_to_algebra(genus_family(1, 2)), kronecker_chain())


def test_one_point_torus_gives_q_prime():
    a = genus_family(1, 1, {"a": 0, "b": 1, "c": 0})
    assert same_algebra(arc_system_to_algebra(a), torus_one_point())


def test_disk_with_one_arc():
    a = ArcSystemPresentation((("p", "0"), ("q", "0")), (("1", "p", "q"),),
                              (AngleFan("p", (("1", 0),)), AngleFan("q", (("1", 1),))))
    p = arc_system_to_algebra(a)
    assert p.vertices == ("1",) and p.arrows == ()
    inv = arc_system_invariants(a)
    assert (inv.genus, inv.boundary_components, inv.marked_points_per_boundary) == (0, 1, (2,))


def test_invariants_of_q_and_q_prime():
    inv = algebra_to_surface_invariants(kronecker_chain())
    assert (inv.genus, inv.boundary_components, inv.marked_points_per_boundary) == (1, 1, (2,))
    inv = algebra_to_surface_invariants(torus_one_point())
    assert (inv.genus, inv.boundary_components, inv.marked_points_per_boundary) == (1, 1, (1,))


def test_linear_a2_is_a_disk():
    inv = algebra_to_surface_invariants(linear_a2())
    assert (inv.genus, inv.boundary_components, inv.marked_points_per_boundary) == (0, 1, (3,))
    assert inv.euler_characteristic == 1


@pytest.mark.parametrize("g,marked", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_family_round_trip(g, marked):
    a = genus_family(g, marked)
    validate_arc_system(a)
    p = arc_system_to_algebra(a)
    assert validate_gentle(p).ok
    inv = algebra_to_surface_invariants(p)
    assert inv == arc_system_invariants(a)
    assert (inv.genus, inv.boundary_components, inv.marked_points_per_boundary) == (g, 1, (marked,))
    assert len(a.arcs) == (2 * g + 1 if marked == 2 else 2 * g)


def test_genus_zero_family_rejected():
    with pytest.raises(InputError):
        genus_family(0, 1)


def test_face_without_boundary_segment_is_rejected():
    # two arcs between the same points in the same order at both ends bound a
    # bigon with no boundary segment
    a = ArcSystemPresentation(
        (("p", "0"), ("q", "0")), (("1", "p", "q"), ("2", "p", "q")),
        (AngleFan("p", (("1", 0), ("2", 0))), AngleFan("q", (("2", 1), ("1", 1)))))
    with pytest.raises(ConstructionError):
        validate_arc_system(a)


def test_bad_arc_system_input():
    with pytest.raises(InputError):
        ArcSystemPresentation((("p", "0"),), (("1", "p", "x"),), (AngleFan("p", ()),))
    with pytest.raises(InputError):
        ArcSystemPresentation((("p", "0"), ("q", "0")), (("1", "p", "q"),),
                              (AngleFan("p", (("1", 0),)), AngleFan("q", ())))


def test_cycle_twist_examples():
    assert cycle_twist(torus_one_point(), ["a", "b"]) == 0
    assert cycle_twist(torus_one_point({"a": 0, "b": 0, "c": 0}), ["a", "b"]) == 1
    assert cycle_twist(torus_one_point({"a": 0, "b": 0, "c": 2}), ["c", "b"]) == -1


def test_cycle_twist_grid_matches_formula():
    for a, b, c in itertools.product(range(-2, 3), repeat=3):
        p = torus_one_point({"a": a, "b": b, "c": c})
        assert cycle_twist(p, ["a", "b"]) == 1 - a - b
        assert cycle_twist(p, ["c", "b"]) == 1 - b - c


def test_grading_invariant_examples():
    assert grading_invariant(torus_one_point(), CYCLES_QP) == 0
    assert grading_invariant(torus_one_point({"a": 0, "b": 0, "c": 0}), CYCLES_QP) == 1
    assert grading_invariant(torus_one_point({"a": 0, "b": -1, "c": 0}), CYCLES_QP) == 2
    with pytest.raises(InputError):
        grading_invariant(torus_one_point(), [])


def test_open_walk_rejected():
    with pytest.raises(InputError):
        cycle_twist(torus_one_point(), ["a"])


def test_twist_additive_and_odd():
    for a, b, c in itertools.product(range(-2, 3), repeat=3):
        p = torus_one_point({"a": a, "b": b, "c": c})
        ab, cb = cycle_twist(p, ["a", "b"]), cycle_twist(p, ["c", "b"])
        # a b then c b, concatenated at vertex 1
        assert cycle_twist(p, ["a", "b", "c", "b"]) == ab + cb
        assert cycle_twist(p, ["-b", "-a"]) == -ab


def test_invariant_stable_under_unimodular_change():
    from math import gcd
    for a, b, c in itertools.product(range(-2, 3), repeat=3):
        p = torus_one_point({"a": a, "b": b, "c": c})
        t = [cycle_twist(p, w) for w in CYCLES_QP]
        n = grading_invariant(p, CYCLES_QP)
        for m in ([[1, 1], [0, 1]], [[2, 1], [1, 1]], [[0, 1], [1, 0]], [[1, -3], [0, 1]]):
            u = [m[0][0] * t[0] + m[0][1] * t[1], m[1][0] * t[0] + m[1][1] * t[1]]
            assert gcd(abs(u[0]), abs(u[1])) == n


def test_q_gradings_through_family_cycles():
    cycles = family_cycles(1, 2)
    assert grading_invariant(kronecker_chain(), cycles) == 0
    assert grading_invariant(kronecker_chain({"a1": 1, "a2": 1}), cycles) == 1
    assert grading_invariant(kronecker_chain({"a1": 2}), cycles) == 2

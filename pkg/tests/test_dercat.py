import pytest

from gentlekit import algebras
from gentlekit.dercat import (EulerForm, _positive_free_shifts, determinant, euler_form,
                              exceptional_search, generates, is_exceptional,
                              is_full_exceptional_collection, is_semiorthogonal, k0_class,
                              lattice_index, orthogonal_constraint, silting_search)
from gentlekit.homcalc import (HomProfile, StringWord, TwistedComplex, canonical_key,
                               hom_profile, shift, string_to_twisted, word)

from conftest import GRADED, x_p


def P(q, v, s=0):
    return TwistedComplex.projective(q, v, s)


def test_k0_class_alternates_with_position(Q):
    assert k0_class(P(Q, "1")).coords == (1, 0, 0)
    assert k0_class(P(Q, "1", 1)).coords == (-1, 0, 0)
    assert k0_class(string_to_twisted(x_p(Q))).coords == (1, -1, 1)


@pytest.mark.parametrize("name,matrix", [
    ("Q-standard", ((1, 2, 2), (0, 1, 2), (0, 0, 1))),
    ("Q-nonstandard", ((1, 0, 2), (0, 1, 0), (0, 0, 1))),
    ("Q'-standard", ((0, 1), (-1, 0))),
    ("Q'-allzero", ((2, 3), (1, 2))),
])
def test_euler_forms(name, matrix):
    assert euler_form(GRADED[name]()).matrix == matrix


def test_euler_form_on_projectives_matches_hom():
    for name, make in GRADED.items():
        p = make()
        e = euler_form(p)
        for v in p.vertices:
            for w in p.vertices:
                x, y = P(p, v), P(p, w)
                assert hom_profile(x, y).euler() == e.pair(k0_class(x), k0_class(y))


def test_determinant_and_index():
    assert determinant([[2, 1], [1, 1]]) == 1
    assert determinant([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == -3
    assert determinant([]) == 1
    assert lattice_index([], 0) == 1


def test_lattice_index(Q):
    ks = [k0_class(P(Q, v)) for v in Q.vertices]
    assert lattice_index(ks, 3) == 1
    assert lattice_index(ks[:2], 3) == 0
    assert lattice_index([ks[0] + ks[0], ks[1], ks[2]], 3) == 2


def test_projectives_form_full_exceptional_collection():
    for name in ("Q-standard", "Q-nonstandard"):
        q = GRADED[name]()
        objs = [P(q, v) for v in q.vertices]
        assert is_full_exceptional_collection(objs)
        # the reversed order fails semiorthogonality with a named witness
        c = is_semiorthogonal([[x] for x in reversed(objs)], names=[["P3"], ["P2"], ["P1"]])
        assert not c and "Hom(P2, P3)" in c.detail


def test_x_p_and_its_perp(Q):
    xp = string_to_twisted(x_p(Q))
    gs = [string_to_twisted(word(Q, g)) for g in ("a1", "a2")]
    assert is_exceptional(xp)
    assert is_semiorthogonal([gs, [xp]])
    # the other order fails: Hom(gamma_i, X_P) lives in degrees 1 and 2
    assert not is_semiorthogonal([[xp], gs])
    assert dict(hom_profile(gs[0], xp)) == {1: 1, 2: 1}
    rep = generates(Q, [xp] + gs, 4)
    assert rep.found and rep.depth <= 4
    assert any(step.startswith("P") for step in rep.steps)


def test_generates_k0_obstruction(Q):
    rep = generates(Q, [P(Q, "1"), P(Q, "2")], 4)
    assert not rep.found and "K0 obstruction" in rep.detail


def test_generates_depth_zero(Q):
    assert generates(Q, [P(Q, v, 2) for v in Q.vertices], 0).found


def test_generation_detects_summands_up_to_shift(Q):
    gens = [shift(P(Q, "1"), 3), P(Q, "2", -1), P(Q, "3", 5)]
    assert generates(Q, gens, 0).found


def test_exceptional_is_shift_invariant():
    for name, make in GRADED.items():
        p = make()
        for w in exceptional_search(p, 3, 1).objects:
            assert is_exceptional(string_to_twisted(w.shifted(2)))


def test_exceptional_search_on_q(Q):
    rep = exceptional_search(Q, 2, 3)
    keys = {canonical_key(w) for w in rep.objects}
    for v in Q.vertices:
        assert canonical_key(StringWord(Q, v)) in keys
    assert canonical_key(x_p(Q).normalized()) in keys
    assert rep.statement == "complete up to the stated bounds"
    assert rep.candidates >= len(rep.witnesses)


def test_exceptional_search_q_prime_small_bound(Qp, Qp0):
    for p in (Qp, Qp0):
        assert exceptional_search(p, 4, 3).witnesses == []


def test_orthogonal_constraint_sides(Q):
    xp = x_p(Q)
    g1 = word(Q, "a1")
    assert orthogonal_constraint(xp, "right")(g1)
    assert not orthogonal_constraint(xp, "either")(xp)
    with pytest.raises(KeyError):
        orthogonal_constraint(xp, "middle")


def test_bad_bounds(Q):
    with pytest.raises(ValueError):
        exceptional_search(Q, -1, 3)
    with pytest.raises(ValueError):
        silting_search(Q, 1, 0)


def test_positive_free_shifts():
    # Hom(x, y) only in degree 1, nothing back: shift y down by at least one
    assert _positive_free_shifts(HomProfile({1: 1}), HomProfile(), 2) == [-2, -1]
    assert _positive_free_shifts(HomProfile(), HomProfile({0: 1}), 1) == [0, 1]


def test_silting_on_q_contains_free_module(Q):
    rep = silting_search(Q, 1, 1)
    assert "[e1]@1[0] (+) [e2]@2[0] (+) [e3]@3[0]" in rep.witnesses


def test_silting_q_prime_standard_small_bound(Qp):
    rep = silting_search(Qp, 3, 2)
    assert rep.witnesses == [] and rep.statement == "complete up to the stated bounds"


def test_silting_early_stop_is_flagged(Qp0):
    rep = silting_search(Qp0, 2, 1, max_witnesses=1)
    assert len(rep.witnesses) == 1
    assert rep.statement != "complete up to the stated bounds"


def test_euler_form_pairing_dataclass():
    e = EulerForm(("1",), ((3,),))
    assert e.pair(k0_class(P(algebras.single_vertex(), "1")),
                  k0_class(P(algebras.single_vertex(), "1"))) == 3

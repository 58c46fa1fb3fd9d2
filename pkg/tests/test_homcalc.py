import random
from fractions import Fraction

import pytest

from gentlekit.core import enumerate_path_basis, make_path, trivial
from gentlekit.dercat import euler_form, k0_class
from gentlekit.errors import InputError, StringError
from gentlekit.fields import Field
from gentlekit.homcalc import (HomProfile, Morphism, StringWord, TwistedComplex,
                               apply_differential, cohomology_basis, compose_morphisms,
                               cone, direct_sum, enumerate_strings, hom_profile, identity,
                               is_cocycle, minimize, shift, string_hom_fast,
                               string_to_twisted, validate_twisted, word)
from gentlekit.homcalc import _basis_by_degree

from conftest import GRADED, random_pairs, random_word, x_p


def P(q, v, s=0):
    return TwistedComplex.projective(q, v, s)


def test_projective_is_valid(Q):
    assert validate_twisted(P(Q, "1")).ok


def test_degree_mismatch_reported(Q):
    x = TwistedComplex.build(Q, [("1", 0), ("2", 0)], {(0, 1): {make_path(Q, ["a1"]): 1}})
    rep = validate_twisted(x)
    assert not rep.ok and "degree" in rep.violations[0]


def test_square_zero_and_cycles_reported(Q):
    a1, a2 = make_path(Q, ["a1"]), make_path(Q, ["a2"])
    x = TwistedComplex.build(Q, [("1", 0), ("2", 1), ("3", 2)], {(0, 1): {a1: 1}, (1, 2): {a2: 1}})
    assert any("square-zero" in v for v in validate_twisted(x).violations)
    e = trivial("1")
    y = TwistedComplex.build(Q, [("1", 0), ("1", 1)], {(0, 1): {e: 1}, (1, 0): {e: 1}})
    assert not validate_twisted(y).ok


def test_x_p_complex(Q):
    x = string_to_twisted(x_p(Q))
    assert validate_twisted(x).ok
    assert x.summands == (("1", 0), ("2", 1), ("3", 2))
    assert dict(hom_profile(x, x)) == {0: 1}


def test_basic_profiles(Q):
    assert dict(hom_profile(P(Q, "2"), P(Q, "2"))) == {0: 1}
    assert dict(hom_profile(P(Q, "1"), P(Q, "3"))) == {0: 2}
    assert dict(hom_profile(P(Q, "3"), P(Q, "1"))) == {}


def test_x_p_right_orthogonal_to_gammas(Q):
    x = string_to_twisted(x_p(Q))
    for g in ("a1", "a2"):
        assert not hom_profile(x, string_to_twisted(word(Q, g)))
    assert dict(string_hom_fast(x_p(Q), x_p(Q))) == {0: 1}


def test_trivial_words(Q):
    w = word(Q, "e2")
    assert string_to_twisted(w) == P(Q, "2")
    assert dict(string_hom_fast(w, w)) == {0: 1}


def test_invalid_words(Q, Qp):
    with pytest.raises(StringError):
        word(Q, "a1 a2")  # a1 then a2 is nonzero, so not a string
    with pytest.raises(StringError):
        word(Q, "a1 -a1")
    with pytest.raises(InputError):
        word(Q, "b1.a2")
    with pytest.raises(StringError, match="start"):
        word(Qp, "a a")


def test_shift_basics(Q):
    x = string_to_twisted(x_p(Q))
    assert shift(x, 0) == x
    assert shift(shift(x, 2), -2) == x
    y = string_to_twisted(word(Q, "a1"))
    base = hom_profile(x, y)
    # Hom(shift(x, 1), y) in degree d is Hom(x, y) in degree d + 1
    assert hom_profile(shift(x, 1), y) == base.shifted(1)
    assert hom_profile(shift(x, 1), y) == HomProfile({d - 1: n for d, n in base.items()})


def test_cone_of_identity_is_contractible(Q):
    for v in Q.vertices:
        c = cone(identity(P(Q, v)))
        assert validate_twisted(c).ok
        for probe in (P(Q, "1"), P(Q, "2"), P(Q, "3"), string_to_twisted(x_p(Q))):
            assert not hom_profile(probe, c) and not hom_profile(c, probe)
        assert minimize(c).summands == ()


def test_cone_of_zero_is_sum(Q):
    x, y = string_to_twisted(word(Q, "a1")), P(Q, "3")
    zero = Morphism.build(x, y, 0, {})
    c = cone(zero)
    # positions of x drop by one inside the cone
    s = direct_sum(shift(x, -1), y)
    for probe in (P(Q, "1"), P(Q, "2"), string_to_twisted(x_p(Q))):
        assert hom_profile(probe, c) == hom_profile(probe, s)


def test_cone_of_arrow_matches_string(Q):
    """The cone of a1: P_1 -> P_2 is the length-one string [a1]."""
    p1, p2 = P(Q, "1"), P(Q, "2")
    f = Morphism.build(p1, p2, 0, {(0, 0): {make_path(Q, ["a1"]): 1}})
    c = cone(f)
    assert validate_twisted(c).ok
    w = word(Q, "a1", shift=-1)
    for probe in enumerate_strings(Q, 2):
        assert hom_profile(string_to_twisted(probe), c) == string_hom_fast(probe, w)


def test_cone_rejects_non_cocycle(Q):
    x = string_to_twisted(word(Q, "a1"))
    bad = Morphism.build(x, x, 0, {(0, 0): {trivial("1"): 1}})
    assert not is_cocycle(bad)
    with pytest.raises(InputError):
        cone(bad)


def test_morphism_complex_squares_to_zero():
    rng = random.Random(7)
    for name, make in sorted(GRADED.items()):
        p = make()
        for _ in range(10):
            x = string_to_twisted(random_word(p, rng, 4))
            y = string_to_twisted(random_word(p, rng, 4))
            for d, elems in _basis_by_degree(x, y).items():
                for e in elems:
                    f = Morphism.from_vector(x, y, d, {e: Fraction(1)})
                    assert not apply_differential(apply_differential(f)).components


def test_cohomology_basis_size_and_composition(Q):
    x = string_to_twisted(x_p(Q))
    reps = cohomology_basis(x, x, 0)
    assert len(reps) == 1 and is_cocycle(reps[0])
    assert compose_morphisms(identity(x), reps[0]).as_vector() == reps[0].as_vector()


def test_prime_field_agrees(Q):
    f7 = Field(7)
    x = string_to_twisted(word(Q, "a1 -b1 a1"))
    assert hom_profile(x, x, f7) == hom_profile(x, x)


def test_zero_object(Q):
    z = TwistedComplex.zero(Q)
    assert validate_twisted(z).ok
    assert not hom_profile(z, P(Q, "1")) and not hom_profile(P(Q, "1"), z)


def test_word_inverse_same_object(Qp):
    w = word(Qp, "a -c a")
    a, b = string_to_twisted(w), string_to_twisted(w.inverse())
    for probe in enumerate_strings(Qp, 2):
        t = string_to_twisted(probe)
        assert hom_profile(t, a) == hom_profile(t, b)


def test_support_width_bound():
    for p, a, b in random_pairs(60, seed=3, max_letters=5):
        prof = string_hom_fast(a, b)
        if not prof:
            continue
        spread = lambda w: max(s for _, s in w.nodes()) - min(s for _, s in w.nodes())
        width = max(prof) - min(prof)
        top = max(abs(q.degree) for q in enumerate_path_basis(p))
        assert width <= spread(a) + spread(b) + 1 + top


def test_oracle_equivalence_sample():
    for p, a, b in random_pairs(60, seed=11, max_letters=6):
        assert string_hom_fast(a, b) == hom_profile(string_to_twisted(a), string_to_twisted(b))


def test_shift_bilinearity_sample():
    for p, a, b in random_pairs(20, seed=5, max_letters=4):
        base = string_hom_fast(a, b)
        for m in range(-3, 4):
            for n in range(-3, 4):
                got = string_hom_fast(a.shifted(m), b.shifted(n))
                assert got == HomProfile({d - m + n: k for d, k in base.items()})


def test_euler_pairing_sample():
    for p, a, b in random_pairs(60, seed=9, max_letters=6):
        x, y = string_to_twisted(a), string_to_twisted(b)
        assert hom_profile(x, y).euler() == euler_form(p).pair(k0_class(x), k0_class(y))

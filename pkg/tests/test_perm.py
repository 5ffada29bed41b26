from itertools import permutations

import pytest

from positroidlab.perm import (
    AffinePerm,
    IncomparableError,
    Perm,
    associated_reflections,
    e_k,
    epsilon,
    identity,
    is_length_additive,
    length,
    leq_R,
    leq_circ,
    lift,
    lower_ideal,
    reduce,
    type_of,
)

P = Perm.parse


def brute_length(f: AffinePerm) -> int:
    # inversions (i, j) with i in [n], i < j, f(i) > f(j); j is bounded by the window spread
    n = f.n
    return sum(1 for i in range(1, n + 1) for j in range(i + 1, i + 10 * n) if f(i) > f(j))


def test_type_examples():
    assert type_of(P("465213")) == (3, 6)
    assert type_of(identity(5)) == (5, 5)
    assert type_of(P("651324")) == (4, 6)


def test_lift_and_reduce():
    assert lift(P("465213")).window == (4, 6, 5, 8, 7, 9)
    assert lift(P("564123")).window == (5, 6, 4, 7, 8, 9)
    assert lift(epsilon(3, 6)) == e_k(3, 6)
    assert reduce(AffinePerm((4, 6, 5, 8, 7, 9))) == P("465213")
    assert reduce(e_k(3, 6)) == P("456123")


def test_lengths():
    assert length(AffinePerm((4, 6, 5, 8, 7, 9))) == 2
    assert length(AffinePerm((5, 6, 4, 7, 8, 9))) == 2
    assert length(e_k(2, 5)) == 0


def test_length_matches_brute_force_n5():
    for imgs in permutations(range(1, 6)):
        f = lift(Perm(imgs))
        assert length(f) == brute_length(f)


def test_associated_reflections():
    f = AffinePerm((4, 6, 5, 8, 7, 9))
    assert associated_reflections(f) == {(2, 3), (4, 5)}
    assert associated_reflections(e_k(3, 6), "left") == set()
    assert len(associated_reflections(f, "left")) == length(f)


def test_length_additive_and_weak_order():
    f, i = lift(P("465213")), lift(P("456213"))
    assert is_length_additive(i, i.inverse() * f)
    assert is_length_additive(e_k(3, 6), f)
    assert not is_length_additive(f, f.inverse())
    assert leq_R(i, f) and leq_R(f, f) and leq_R(e_k(3, 6), f)
    assert leq_circ(epsilon(3, 6), P("465213"))
    assert leq_circ(P("456213"), P("465213"))


def test_incomparable_types():
    with pytest.raises(IncomparableError):
        leq_circ(P("2341"), P("3412"))


def test_lower_ideal():
    f = AffinePerm((4, 6, 5, 8, 7, 9))
    assert lower_ideal(f) == {f, AffinePerm((4, 5, 6, 8, 7, 9)), AffinePerm((4, 6, 5, 7, 8, 9)), e_k(3, 6)}
    assert lower_ideal(e_k(2, 4)) == {e_k(2, 4)}
    assert len(lower_ideal(lift(P("5761432")))) == 12


def test_lower_ideal_matches_leq_R_brute_force():
    # every bounded affine permutation of the same type, tested against leq_R
    for imgs in permutations(range(1, 6)):
        pi = Perm(imgs)
        if type_of(pi)[0] != 2:
            continue
        f = lift(pi)
        down = {lift(Perm(q)) for q in permutations(range(1, 6))
                if type_of(Perm(q))[0] == 2 and leq_R(lift(Perm(q)), f)}
        assert lower_ideal(f) == down


def test_parse_and_json():
    assert P("4,6,5,2,1,3") == P("465213")
    assert Perm.from_json(P("465213").to_json()) == P("465213")
    f = lift(P("465213"))
    assert AffinePerm.from_json(f.to_json()) == f
    with pytest.raises(ValueError):
        P("1123")
    with pytest.raises(ValueError):
        P("1234567890")

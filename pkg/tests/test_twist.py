from fractions import Fraction

import pytest

from positroidlab.linalg import QMatrix, pluecker
from positroidlab.necklace import forward_necklace, grassmannlike, necklace_of
from positroidlab.perm import Perm, epsilon, identity, lift, lower_ideal, reduce, simple
from positroidlab.plabic import WHITE, example_graphs, from_drawing, generate_graph, relabel
from positroidlab.rng import SplitMix64
from positroidlab.twist import (
    HypothesisError,
    all_pluecker,
    apply_signs,
    boundary_measurement,
    diagram_check,
    double_twist_check,
    in_open_positroid,
    is_positive_point,
    left_twist,
    positivity_check,
    random_point,
    random_weights,
    reverse_positivity_check,
    right_twist,
    same_point,
    sample_point,
    sign_automorphism,
    signs_satisfy,
    twist_forward,
    twist_reverse,
    twist_roundtrip_check,
)

P = Perm.parse
PI = P("465213")
N2 = grassmannlike(P("123546"), P("465123"))


def S(text):
    return frozenset(int(c) for c in text)


def cross(u, v):
    return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]


def test_k1_boundary_measurement():
    coords = {"b1": (-1, 0), "b2": (1, 0), "w": (0, 0)}
    G = from_drawing(coords, {"w": WHITE}, [("b1", "w"), ("w", "b2")], {"b1": 1, "b2": 2})
    a, b = Fraction(3), Fraction(5)
    w = {0: a, 1: b}
    M = boundary_measurement(G, w)
    P1, P2 = pluecker(M, [1]), pluecker(M, [2])
    assert P1 * b == P2 * a


def test_unit_weights_on_left_graph():
    G = example_graphs()["123456"]
    M = boundary_measurement(G, {e: Fraction(1) for e in range(len(G.edges))})
    Pl = all_pluecker(M)
    assert Pl[S("345")] == 0 and Pl[S("156")] == 0
    assert is_positive_point(M, PI)


def test_gauge_invariance():
    G = generate_graph(PI)
    rng = SplitMix64(5)
    w = random_weights(G, rng)
    v = next(x for x, c in G.colors.items() if c is not None)
    w2 = dict(w)
    for e in G.rotation[v]:
        w2[e] = w2[e] * 7
    assert same_point(boundary_measurement(G, w), boundary_measurement(G, w2))


def test_sample_points():
    rng = SplitMix64(0)
    M = sample_point(PI, rng)
    Pl = all_pluecker(M)
    assert Pl[S("345")] == 0 and Pl[S("156")] == 0
    assert all(Pl[I] != 0 for I in forward_necklace(PI).subsets)
    assert in_open_positroid(M, PI)
    T = sample_point(epsilon(3, 6), rng)
    assert all(v > 0 for v in all_pluecker(T).values()) or all(v < 0 for v in all_pluecker(T).values())


def test_k1_right_twist():
    pi = P("2341")
    rho = forward_necklace(pi).removal
    m = [Fraction(2), Fraction(3), Fraction(5), Fraction(7)]
    X = right_twist(forward_necklace(pi), QMatrix([m]))
    assert [X.col(a)[0] for a in range(1, 5)] == [1 / m[rho(a) - 1] for a in range(1, 5)]


def _defining_equations_hold(N, M, X, side):
    n = N.n
    for a in range(1, n + 1):
        t = X.col(a)
        if side == "right":
            sub, target = N[a], N.removal(a)
        else:
            sub, target = N[a + 1], N.insertion(a)
        for b in sub:
            val = sum(x * y for x, y in zip(t, M.col(b)))
            if val != (1 if b == target else 0):
                return False
    return True


def test_twist_defining_equations():
    rng = SplitMix64(2)
    for pi in [PI, P("564123"), P("5761432"), P("3412")]:
        G = generate_graph(pi)
        for u in sorted(lower_ideal(lift(pi)), key=lambda u: u.window)[:4]:
            N = necklace_of(reduce(u), pi)
            M = sample_point(pi, rng, G)
            assert _defining_equations_hold(N, M, right_twist(N, M), "right")
            assert _defining_equations_hold(N, M, left_twist(N, M), "left")


def test_cross_product_columns_of_N2():
    M = sample_point(PI, SplitMix64(1))
    X = right_twist(N2, M)
    c = cross(M.col(4), M.col(6))
    d346, d456 = pluecker(M, [3, 4, 6]), pluecker(M, [4, 5, 6])
    assert [x * d346 for x in X.col(3)] in (c, [-y for y in c])
    assert [x * d456 for x in X.col(4)] in (c, [-y for y in c])


def test_roundtrip_N2_exact():
    rng = SplitMix64(0)
    G = generate_graph(PI)
    for _ in range(5):
        M = sample_point(PI, rng, G)
        r = twist_roundtrip_check(N2, M)
        assert r.ok and r.witness["exact_left_after_right"] and r.witness["exact_right_after_left"]
    M = sample_point(PI, rng, G)
    assert same_point(twist_reverse(PI, twist_forward(PI, M)), M)


def test_sign_automorphism():
    G = example_graphs()["123456"]
    s = sign_automorphism(identity(6), PI, G.labels().values())
    assert list(s) == [1] * 6
    # the bottom-center example is G^rho with rho = s_4 and trip permutation 465213
    H = example_graphs()["123546"]
    assert H.rho == simple(4, 6) and H.trip_perm == PI
    labels = list(relabel(H, H.rho.inverse()).labels().values())
    s = sign_automorphism(H.rho, PI, labels)
    assert signs_satisfy(H.rho, list(s), labels)
    M = sample_point(PI, SplitMix64(4))
    assert apply_signs(apply_signs(M, list(s)), list(s)) == M


def test_sign_hypotheses_enforced():
    with pytest.raises(HypothesisError):
        sign_automorphism(P("213"), P("231"))


def test_examples_diagram_and_positivity():
    rng = SplitMix64(9)
    for key, G in example_graphs().items():
        base = relabel(G, G.rho.inverse())
        w = random_weights(base, rng)
        r = diagram_check(G, w)
        assert r.ok and r.witness["exact_on_face_labels"]
        if key == "123456":
            assert r.witness["differing_pluecker"] == []
        else:
            assert r.witness["differing_pluecker"]
            assert not set(r.witness["differing_pluecker"]) & set(r.witness["face_labels"])
        x = boundary_measurement(generate_graph(PI), random_weights(generate_graph(PI), rng))
        assert positivity_check(G, x).ok
        y = boundary_measurement(base, w)
        assert reverse_positivity_check(G, y).ok
        assert double_twist_check(G, x).ok


def test_random_point_shape():
    M = random_point(2, 5, SplitMix64(1))
    assert (M.k, M.n) == (2, 5)

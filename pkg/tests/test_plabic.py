import json
from itertools import permutations

import pytest

from positroidlab.necklace import fmt_subset, forward_necklace
from positroidlab.perm import Perm, epsilon, identity, simple
from positroidlab.plabic import (
    BLACK,
    WHITE,
    FaceLabelError,
    NotMovable,
    PlabicGraph,
    dual_quiver,
    example_graphs,
    face_labels,
    from_drawing,
    generate_graph,
    graph_to_dot,
    is_reduced,
    normalize,
    quiver_to_dot,
    relabel,
    square_move,
    trips,
)
from positroidlab.positroid import dimension
from positroidlab.rng import SplitMix64
from positroidlab.wsc import is_ws_collection

P = Perm.parse
PI = P("465213")


def S(text):
    return frozenset(int(c) for c in text)


def labelset(G, mode="target"):
    return sorted(fmt_subset(v) for v in G.labels(mode).values())


@pytest.fixture(scope="module")
def ex():
    return example_graphs()


def test_examples_have_trip_465213(ex):
    assert sorted(ex) == ["123456", "123546", "132456", "132546"]
    for G in ex.values():
        assert G.trip_perm == PI
        assert is_reduced(G)


def test_underlying_trip_permutations(ex):
    under = {k: str(relabel(G, G.rho.inverse()).trip_perm) for k, G in ex.items()}
    assert under == {"123456": "465213", "132456": "456312", "123546": "564123", "132546": "546132"}


def test_face_labels_left_and_bottom(ex):
    assert labelset(ex["123456"]) == ["123", "126", "234", "236", "246", "256", "346", "456"]
    G = ex["123546"]
    lab = G.labels()
    boundary = [fmt_subset(lab[G.boundary_face(a).id]) for a in range(1, 7)]
    assert boundary == ["123", "234", "346", "456", "146", "126"]
    assert set(labelset(G)) - set(boundary) == {"124", "246"}


def test_target_labels_form_boundary_necklace(ex):
    for G in ex.values():
        N = G.boundary_necklace()
        assert N.trip == PI


def test_source_labels_are_target_labels_of_inverse_relabel(ex):
    G = ex["123456"]
    assert labelset(relabel(G, G.trip_perm.inverse())) == labelset(G, "source")


def test_second_example_graph():
    G = generate_graph(P("651324"))
    assert trips(G)[0] == P("651324")
    H = relabel(G, simple(3, 6))
    assert H.trip_perm == P("654123")
    with pytest.raises(FaceLabelError):
        H.labels()
    lab = face_labels(H, strict=False)
    assert [fmt_subset(lab[H.boundary_face(a).id]) for a in range(1, 7)] == \
        ["1234", "2346", "3456", "1356", "1456", "1246"]
    assert is_reduced(G) and is_reduced(H)


def test_relabel_identity(ex):
    G = ex["123456"]
    assert relabel(G, identity(6)) == G


def test_quiver_of_left_graph(ex):
    G = ex["123456"]
    Q = dual_quiver(G)
    lab = G.labels()
    assert len(Q.nodes) == 8
    assert sorted(fmt_subset(lab[f]) for f in Q.mutable()) == ["236", "246"]
    a, b = Q.mutable()
    assert abs(Q.count(a, b)) == 1 and Q.count(a, b) == -Q.count(b, a)
    assert "digraph" in quiver_to_dot(Q) and "graph plabic" in graph_to_dot(G)


def test_square_move_on_left_graph(ex):
    G = ex["123456"]
    H = square_move(G, S("236"))
    assert H.trip_perm == PI and is_reduced(H)
    new = set(labelset(H)) - set(labelset(G))
    assert new == {"124"}
    back = square_move(H, S("124"))
    assert labelset(back) == labelset(G)


def test_square_move_quiver_is_local_four_cycle(ex):
    G = ex["123546"]
    Q = dual_quiver(G)
    lab = G.labels()
    f = next(f for f in Q.mutable() if lab[f] == S("124"))
    ins = [p for p in Q.nodes if Q.count(p, f) > 0]
    outs = [q for q in Q.nodes if Q.count(f, q) > 0]
    assert len(ins) == 2 and len(outs) == 2


def _graphs(n):
    for imgs in permutations(range(1, n + 1)):
        yield Perm(imgs)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_generate_graph_is_reduced(n):
    for pi in _graphs(n):
        G = generate_graph(pi)
        assert G.trip_perm == pi
        assert is_reduced(G)
        assert len(G.faces) == dimension(pi)
        lab = G.labels()
        assert len(set(lab.values())) == len(lab)
        assert is_ws_collection(lab.values())[0]
        assert [lab[G.boundary_face(a).id] for a in range(1, n + 1)] == list(forward_necklace(pi).subsets)


def test_generate_graph_random_n7():
    rng = SplitMix64(3)
    for _ in range(25):
        imgs = list(range(1, 8))
        for i in range(6, 0, -1):
            j = rng.randint(0, i)
            imgs[i], imgs[j] = imgs[j], imgs[i]
        pi = Perm(tuple(imgs))
        G = generate_graph(pi)
        assert G.trip_perm == pi and is_reduced(G)


def test_top_cell_faces():
    G = generate_graph(epsilon(2, 5))
    assert len(G.faces) == 2 * 3 + 1


def _try_move(G, label):
    try:
        return square_move(G, label)
    except NotMovable:
        return None


def test_square_moves_preserve_trip_permutation():
    rng = SplitMix64(11)
    done = 0
    for pi in [P("465213"), P("456123"), P("564123"), P("5761432"), P("3412"), P("4567123")]:
        G = generate_graph(pi)
        for _ in range(6):
            lab = G.labels()
            moves = [(I, H) for I in sorted(set(lab.values()), key=sorted)
                     if (H := _try_move(G, I)) is not None]
            if not moves:
                break
            I, H = rng.choice(moves)
            assert H.trip_perm == G.trip_perm and is_reduced(H)
            assert len(set(labelset(H)) ^ set(labelset(G))) == 2
            G = H
            done += 1
    assert done > 10


def test_not_reduced_with_double_edge():
    # two parallel edges between a white and a black vertex on a k=1, n=2 strip
    coords = {"b1": (-2, 0), "b2": (2, 0), "w": (-1, 0), "k": (1, 0), "m": (0, 1), "m2": (0, -1)}
    colors = {"w": WHITE, "k": BLACK, "m": BLACK, "m2": WHITE}
    edges = [("b1", "w"), ("w", "m"), ("m", "k"), ("w", "m2"), ("m2", "k"), ("k", "b2")]
    G = from_drawing(coords, colors, edges, {"b1": 1, "b2": 2})
    assert not is_reduced(G)


def test_json_roundtrip(ex):
    G = ex["132546"]
    H = PlabicGraph.from_json(json.loads(json.dumps(G.to_json())))
    assert H == G
    assert normalize(G).trip_perm == G.trip_perm

import json
from itertools import permutations

from positroidlab.analysis import (
    is_schubert,
    is_toggle_connected,
    sep_set,
    sweep,
    toggle_graph,
    toggle_graph_dot,
)
from positroidlab.necklace import ToggleClass, classify_toggle, necklace_of, toggle
from positroidlab.perm import Perm, e_k, epsilon, length, lift, lower_ideal, reduce, type_of
from positroidlab.wsc import is_ws_collection

P = Perm.parse


def test_465213():
    pi = P("465213")
    assert sep_set(pi) == {reduce(u) for u in lower_ideal(lift(pi))}
    TG = toggle_graph(pi)
    assert len(TG.vertices) == 4 and len(TG.edges) == 4
    degrees = {v: sum(v in (a, b) for a, b, _ in TG.edges) for v in TG.vertices}
    assert set(degrees.values()) == {2} and TG.is_connected()
    assert is_toggle_connected(pi)


def test_5761432():
    pi = P("5761432")
    TG = toggle_graph(pi)
    assert len(TG.ideal) == 12 and len(TG.vertices) == 6
    comps = TG.components()
    assert [len(c) for c in comps] == [3, 3]
    assert not TG.same_component(TG.top, TG.bottom)
    assert not is_toggle_connected(pi)
    assert len(sep_set(pi)) == 6
    assert is_schubert(pi) == "neither"
    dot = toggle_graph_dot(TG)
    assert dot.count("color=black") == 6 and dot.count(" -- ") == 4


def test_top_cell():
    for k, n in ((2, 4), (3, 6)):
        pi = epsilon(k, n)
        assert sep_set(pi) == {pi}
        TG = toggle_graph(pi)
        assert TG.vertices == {e_k(k, n)} and not TG.edges
        assert is_toggle_connected(pi)
    assert is_schubert(epsilon(3, 6)) == "schubert"


def test_constructed_schubert():
    # type (2,4): descent forced at n - k = 2, with pi(3), pi(4) anti-excedances
    found = [Perm(p) for p in permutations(range(1, 5)) if type_of(Perm(p))[0] == 2
             and is_schubert(Perm(p)) == "schubert"]
    assert found
    for pi in found:
        d = [a for a in range(1, 4) if pi(a) > pi(a + 1)]
        assert d == [2]
        assert all(pi(b) <= b for b in (3, 4))
        assert sep_set(pi) == {reduce(u) for u in lower_ideal(lift(pi))}


def test_opposite_schubert_examples():
    assert is_schubert(P("3142")) == "opposite-schubert"
    assert is_schubert(P("3412")) == "schubert"


def test_sep_iff_weakly_separated_n5():
    for n in range(2, 6):
        for imgs in permutations(range(1, n + 1)):
            pi = Perm(imgs)
            f = lift(pi)
            sep = sep_set(pi)
            for u in lower_ideal(f):
                ws = is_ws_collection(necklace_of(reduce(u), pi).subsets)[0]
                assert ws == (reduce(u) in sep)


def test_edges_are_aligned_toggles():
    for s in ("465213", "5761432", "564123", "6745123"):
        pi = P(s)
        TG = toggle_graph(pi)
        for lo, hi, a in TG.edges:
            assert length(lo) + 1 == length(hi)
            N = necklace_of(reduce(hi), pi)
            pos = a % pi.n + 1
            assert classify_toggle(N, pos) is ToggleClass.ALIGNED
            assert toggle(N, pos) == necklace_of(reduce(lo), pi)


def test_sweeps():
    assert sweep("main-2-iff-3", 1, n_min=2)["records"] == []
    r = sweep("main-2-iff-3", 5)
    assert r["status"] == "pass" and r["instances"] == sum(1 for n in range(2, 6) for _ in permutations(range(n)))
    one = sweep("toggle-components", 5, jobs=1)
    two = sweep("toggle-components", 5, jobs=2)
    assert json.dumps(one) == json.dumps(two)
    r = sweep("schubert", 5)
    assert r["status"] == "pass" and r["instances"] > 0


def test_unit_necklace_sweep_small():
    r = sweep("unit-necklace", 4)
    assert r["status"] == "pass"


def test_toggle_witness_sweep_small():
    r = sweep("toggle-witness", 4)
    assert r["status"] == "pass"

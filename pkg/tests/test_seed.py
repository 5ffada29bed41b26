from fractions import Fraction

import pytest
import sympy as sp

from positroidlab.necklace import fmt_subset, forward_necklace, grassmannlike, reverse_necklace
from positroidlab.analysis import is_schubert, sep_set
from positroidlab.perm import Perm, lift, lower_ideal
from positroidlab.plabic import example_graphs, generate_graph, relabel
from positroidlab.seed import (
    Sampler,
    cluster_variables,
    exchange_ratio,
    frozen_groups_equal,
    is_laurent,
    mutate,
    mutation_closure,
    quasi_equivalent,
    quasi_transformation_search,
    seed_from_collection,
    seed_from_graph,
    symbol,
    toggle_quasi_witness,
    _eval,
)

P = Perm.parse
PI = P("465213")


def S(text):
    return frozenset(int(c) for c in text)


@pytest.fixture(scope="module")
def sampler():
    return Sampler(PI, count=20, seed=0)


@pytest.fixture(scope="module")
def left():
    return seed_from_graph(example_graphs()["123456"])


def names(seed, which):
    return sorted(seed.name(v) for v in which)


def test_left_seed(left):
    assert names(left, [v for v in left.nodes if v in left.frozen]) == sorted(
        fmt_subset(I) for I in forward_necklace(PI).subsets)
    assert names(left, left.mutable) == ["236", "246"]


def test_source_seed_frozens_are_reverse_necklace():
    src = seed_from_graph(example_graphs()["123456"], "source")
    assert set(src.frozen) == set(reverse_necklace(PI).subsets)


def test_bottom_center_seed():
    B = seed_from_graph(example_graphs()["123546"])
    N2 = grassmannlike(P("123546"), P("465123"))
    assert set(B.frozen) == set(N2.subsets)
    assert names(B, B.mutable) == ["124", "246"]


def test_mutation_involution(left):
    for seed in mutation_closure(left):
        for p in seed.mutable:
            twice = mutate(mutate(seed, p), p)
            assert twice.key() == seed.key()
            assert twice.b == {k: v for k, v in seed.b.items() if v}


def test_finite_type_a2(left, sampler):
    seeds = mutation_closure(left)
    assert len(seeds) == 5
    cvars = cluster_variables(seeds)
    assert len(cvars) == 5
    assert all(is_laurent(x) for x in cvars)
    targets = [[S("124")], [S("246")], [S("236")], [S("356")], [S("346"), S("125")]]
    for t in range(len(sampler)):
        plk = sampler.values(t)
        vals = sorted(_eval(x, plk) for x in cvars)
        want = []
        for prod in targets:
            v = Fraction(1)
            for I in prod:
                v *= plk[I]
            want.append(v)
        assert vals == sorted(want)


def test_exchange_ratio(left, sampler):
    p = next(v for v in left.mutable if v == S("236"))
    y = exchange_ratio(left, p)
    assert y.exponents == {v: left.count(v, p) for v in left.nodes if left.count(v, p)}
    assert y.exponents
    # homogeneous of degree zero in the Z^n grading
    deg = [0] * 7
    for v, e in y.exponents.items():
        for x in v:
            deg[x] += e
    assert deg == [0] * 7
    flipped = type(left)(left.n, left.nodes, left.frozen, {(q, r): -m for (q, r), m in left.b.items()},
                         left.exprs, left.labels)
    y2 = exchange_ratio(flipped, p)
    assert y2.exponents == {v: -e for v, e in y.exponents.items()}


def test_quasi_equivalence_basics(left, sampler):
    cert = quasi_equivalent(left, left, sampler)
    assert cert and all(not mono for mono, _ in cert.monomials.values())
    p = left.mutable[0]
    seq, cert = quasi_transformation_search(left, mutate(left, p), 1, sampler)
    assert seq == [left.name(p)] and cert


def test_frozen_groups_forward_and_reverse(left, sampler):
    src = seed_from_graph(example_graphs()["123456"], "source")
    ok, A, d = frozen_groups_equal(left, src, sampler)
    assert ok and d in (1, -1)


def test_example_seeds_pairwise(sampler):
    seeds = {k: seed_from_graph(G) for k, G in example_graphs().items()}
    keys = sorted(seeds)
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            found = quasi_transformation_search(seeds[a], seeds[b], 3, sampler)
            assert found is not None, (a, b)
            assert found[1].frozen_change_det in (1, -1)


def test_left_vs_source_seed(left, sampler):
    src = seed_from_graph(example_graphs()["123456"], "source")
    assert quasi_transformation_search(left, src, 4, sampler) is not None


def test_collection_seed_matches_graph_seed(left):
    G = example_graphs()["123456"]
    C = set(G.labels().values())
    T = seed_from_collection(C, 6, forward_necklace(PI).subsets)
    assert T.b == {k: v for k, v in left.b.items() if v}


def test_toggle_witnesses():
    N = forward_necklace(PI)
    for a, bnd in ((3, "123 234 245 456 256 126"), (5, "123 234 346 456 146 126")):
        W = toggle_quasi_witness(N, a)
        assert W.ok, W.checks
        assert " ".join(fmt_subset(I) for I in W.toggled.subsets) == bnd


def test_toggle_witness_lollipop():
    # 1 is a fixed point, so I_1 = I_2 and the toggle at 2 only reorders the necklace
    N = forward_necklace(P("132"))
    W = toggle_quasi_witness(N, 2)
    assert W.degenerate and W.ok


def test_schubert_instance_all_relabelings():
    # a type (2,4) Schubert permutation: single descent at n - k = 2
    pi = P("2413")
    assert is_schubert(pi) == "schubert"
    sampler = Sampler(pi, count=10)
    seeds = []
    for iota in sorted(sep_set(pi), key=lambda p: p.images):
        rho = pi.inverse() * iota
        mu = rho.inverse() * pi * rho
        G = relabel(generate_graph(mu), rho)
        assert G.trip_perm == pi
        seeds.append(seed_from_graph(G))
    assert len(seeds) == len(lower_ideal(lift(pi)))
    for other in seeds[1:]:
        assert quasi_transformation_search(seeds[0], other, 4, sampler) is not None


def test_isolated_vertex_has_trivial_ratio(left):
    lonely = type(left)(left.n, left.nodes, left.frozen, {}, left.exprs, left.labels)
    assert exchange_ratio(lonely, lonely.mutable[0]).exponents == {}


def test_symbols():
    assert symbol(S("124"), 6) == sp.Symbol("D124")

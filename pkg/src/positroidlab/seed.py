"""Cluster seeds built from plabic graphs and weakly separated collections,
mutation, exchange ratios and quasi-equivalence certificates.

Cluster variables are sympy expressions in symbols ``D<label>`` standing for
Plücker coordinates.  Identities are decided by exact evaluation at sampled
points of the open positroid variety.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Sequence

import sympy as sp

from .linalg import pluecker
from .necklace import (
    Necklace,
    ToggleClass,
    classify_toggle,
    fmt_subset,
    toggle,
)
from .perm import Perm
from .plabic import PlabicGraph, dual_quiver
from .positroid import Positroid, all_subsets, dimension, positroid_of
from .rng import SplitMix64
from .twist import sample_point
from .wsc import (
    colex_key,
    complete_to_maximal,
    is_ws_collection,
    necklace_interior,
    tiling,
    weakly_separated,
)

__all__ = [
    "Seed",
    "ExchangeRatio",
    "QuasiCertificate",
    "QuasiFailure",
    "Sampler",
    "symbol",
    "seed_from_graph",
    "seed_from_collection",
    "tiling_quiver",
    "mutate",
    "exchange_ratio",
    "mutation_closure",
    "cluster_variables",
    "quasi_equivalent",
    "quasi_transformation_search",
    "frozen_groups_equal",
    "monomial_in",
    "toggle_quasi_witness",
    "ToggleWitness",
]


def symbol(I, n: int) -> sp.Symbol:
    return sp.Symbol("D" + fmt_subset(I, n))


@dataclass(frozen=True, eq=False)
class Seed:
    """Nodes are keyed by their initial labels.  ``exprs`` holds the current
    cluster variable at each node; ``b`` is the skew-symmetric exchange matrix
    (arrows among frozen nodes are dropped)."""

    n: int
    nodes: tuple
    frozen: frozenset
    b: dict
    exprs: dict
    labels: dict  # symbol -> subset, for every symbol that can appear

    def __post_init__(self):
        clean = {}
        for (p, q), m in self.b.items():
            if m and not (p in self.frozen and q in self.frozen):
                clean[(p, q)] = m
        object.__setattr__(self, "b", clean)

    @property
    def mutable(self) -> list:
        return [v for v in self.nodes if v not in self.frozen]

    def count(self, p, q) -> int:
        return self.b.get((p, q), 0)

    def cluster(self) -> frozenset:
        return frozenset(self.exprs[v] for v in self.mutable)

    def key(self) -> tuple:
        return tuple(sorted(map(sp.srepr, self.cluster())))

    def arrows(self) -> list[tuple]:
        return sorted(((p, q, m) for (p, q), m in self.b.items() if m > 0), key=lambda t: (colex_key(t[0]), colex_key(t[1])))

    def name(self, v) -> str:
        return fmt_subset(v, self.n) if isinstance(v, frozenset) else str(v)

    def to_json(self) -> dict:
        idx = {v: i for i, v in enumerate(self.nodes)}
        return {
            "frozen": [str(self.exprs[v]) for v in self.nodes if v in self.frozen],
            "mutable": [str(self.exprs[v]) for v in self.mutable],
            "nodes": [self.name(v) for v in self.nodes],
            "arrows": [[idx[p], idx[q], m] for p, q, m in self.arrows()],
        }


@dataclass(frozen=True)
class ExchangeRatio:
    exponents: dict  # node -> integer

    def evaluate(self, seed: Seed, values: dict) -> Fraction:
        out = Fraction(1)
        for v, e in self.exponents.items():
            out *= _eval(seed.exprs[v], values) ** e
        return out


# -- construction ------------------------------------------------------------

def _seed(n: int, labels: dict, frozen: Iterable, b: dict) -> Seed:
    """labels: node -> subset.  Nodes are the subsets themselves."""
    nodes = tuple(sorted(set(labels.values()), key=colex_key))
    syms = {symbol(I, n): I for I in nodes}
    exprs = {I: symbol(I, n) for I in nodes}
    return Seed(n, nodes, frozenset(frozen), b, exprs, syms)


def seed_from_graph(G: PlabicGraph, mode: str = "target") -> Seed:
    lab = G.labels(mode)
    Q = dual_quiver(G)
    frozen = {lab[f] for f in Q.frozen}
    b: dict = {}
    for (p, q), m in Q.b.items():
        key = (lab[p], lab[q])
        if key[0] == key[1]:
            continue
        b[key] = b.get(key, 0) + m
    return _seed(G.n, lab, frozen, b)


def tiling_quiver(C: Iterable, n: int, frozen: Iterable = ()) -> dict:
    """Skew-symmetric arrow counts read off the plabic tiling.

    Clique members are listed clockwise; arrows run counterclockwise around
    white cliques and clockwise around black ones.  An arrow is kept when the
    tiling edge borders one clique of each colour."""
    T = tiling(C, n)
    frozen = set(frozen)
    votes: dict = {}
    for cliques, sign in ((T.white, -1), (T.black, 1)):
        for members in cliques.values():
            r = len(members)
            for t in range(r):
                p, q = members[t], members[(t + 1) % r]
                e = frozenset((p, q))
                votes.setdefault(e, []).append((p, q) if sign > 0 else (q, p))
    b: dict = {}
    for e, vs in votes.items():
        if len(vs) != 2 or vs[0] != vs[1]:
            continue
        p, q = vs[0]
        if p in frozen and q in frozen:
            continue
        b[(p, q)] = b.get((p, q), 0) + 1
        b[(q, p)] = b.get((q, p), 0) - 1
    return b


def seed_from_collection(C: Iterable, n: int, frozen: Iterable) -> Seed:
    C = [frozenset(I) for I in C]
    fr = {frozenset(I) for I in frozen}
    return _seed(n, {I: I for I in C}, fr, tiling_quiver(C, n, fr))


# -- mutation ----------------------------------------------------------------

def mutate(S: Seed, p) -> Seed:
    if p in S.frozen or p not in S.nodes:
        raise ValueError(f"{S.name(p)} is not a mutable vertex")
    plus, minus = sp.Integer(1), sp.Integer(1)
    for v in S.nodes:
        m = S.count(v, p)
        if m > 0:
            plus *= S.exprs[v] ** m
        elif m < 0:
            minus *= S.exprs[v] ** (-m)
    new = sp.cancel((plus + minus) / S.exprs[p])
    b: dict = {}
    for i in S.nodes:
        for j in S.nodes:
            bij = S.count(i, j)
            if i == p or j == p:
                val = -bij
            else:
                bip, bpj = S.count(i, p), S.count(p, j)
                val = bij + (abs(bip) * bpj + bip * abs(bpj)) // 2
            if val:
                b[(i, j)] = val
    exprs = dict(S.exprs)
    exprs[p] = new
    return Seed(S.n, S.nodes, S.frozen, b, exprs, S.labels)


def exchange_ratio(S: Seed, p) -> ExchangeRatio:
    if p in S.frozen:
        raise ValueError(f"{S.name(p)} is frozen")
    ex = {v: S.count(v, p) for v in S.nodes if S.count(v, p)}
    return ExchangeRatio(ex)


def mutation_closure(S: Seed, limit: int = 10_000) -> list[Seed]:
    """All seeds reachable by mutation, deduplicated by cluster."""
    seen = {S.key(): S}
    queue = deque([S])
    while queue:
        cur = queue.popleft()
        for p in cur.mutable:
            nxt = mutate(cur, p)
            k = nxt.key()
            if k not in seen:
                if len(seen) >= limit:
                    raise RuntimeError(f"mutation class exceeds {limit} seeds")
                seen[k] = nxt
                queue.append(nxt)
    return list(seen.values())


def cluster_variables(seeds: Iterable[Seed]) -> list:
    out = {}
    for S in seeds:
        for e in S.cluster():
            out.setdefault(sp.srepr(e), e)
    return list(out.values())


def is_laurent(expr) -> bool:
    num, den = sp.fraction(sp.cancel(expr))
    return len(sp.Add.make_args(sp.expand(den))) == 1


__all__.append("is_laurent")


# -- evaluation ----------------------------------------------------------------

class Sampler:
    """Sampled points of the open positroid variety with cached Plückers."""

    def __init__(self, pi: Perm, count: int = 20, seed: int = 0):
        from .plabic import generate_graph

        self.pi = pi
        self.count = count
        rng = SplitMix64(seed)
        G = generate_graph(pi)
        self.points = [sample_point(pi, rng, G) for _ in range(count)]
        self._values = [None] * count

    def values(self, t: int) -> dict:
        if self._values[t] is None:
            M = self.points[t]
            self._values[t] = {I: pluecker(M, I) for I in all_subsets(M.n, M.k)}
        return self._values[t]

    def __len__(self) -> int:
        return self.count


def _eval(expr, plk: dict, n: int | None = None) -> Fraction:
    if isinstance(expr, sp.Symbol):
        return plk[_label_of(expr)]
    subs = {s: sp.Rational(plk[_label_of(s)].numerator, plk[_label_of(s)].denominator) for s in expr.free_symbols}
    val = expr.xreplace(subs)
    val = sp.nsimplify(val) if not val.is_Rational else val
    return Fraction(int(val.p), int(val.q))


def _label_of(sym: sp.Symbol) -> frozenset:
    name = sym.name[1:]
    if name.startswith("{"):
        return frozenset(int(t) for t in name.strip("{}").split(","))
    return frozenset(int(c) for c in name)


def evaluate(S: Seed, v, plk: dict) -> Fraction:
    return _eval(S.exprs[v], plk)


__all__.append("evaluate")


# -- gradings and monomials ---------------------------------------------------------

def _grading(expr, n: int) -> tuple:
    num, den = sp.fraction(sp.cancel(expr))
    vec = [0] * n
    for part, sgn in ((num, 1), (den, -1)):
        part = sp.expand(part)
        term = sp.Add.make_args(part)[0]
        for base, e in term.as_powers_dict().items():
            if isinstance(base, sp.Symbol):
                for x in _label_of(base):
                    vec[x - 1] += sgn * int(e)
    return tuple(vec)


def _integer_solutions(A: list[list[int]], t: Sequence[int], box: int = 2):
    """Integer c with A c = t; particular solution plus small nullspace
    combinations, in a deterministic order."""
    M = sp.Matrix(A)
    rhs = sp.Matrix(list(t))
    try:
        sol, params = M.gauss_jordan_solve(rhs)
    except ValueError:
        return
    params = list(params)
    if not params:
        if all(x.is_integer for x in sol):
            yield [int(x) for x in sol]
        return
    ranges = sorted(product(range(-box, box + 1), repeat=len(params)), key=lambda c: (sum(map(abs, c)), c))
    for combo in ranges:
        cand = sol.subs(dict(zip(params, combo)))
        if all(x.is_integer for x in cand):
            yield [int(x) for x in cand]


def monomial_in(target: Callable[[dict], Fraction], grading: Sequence[int], basis: Sequence, basis_vals, sampler: Sampler, n: int):
    """Find integer exponents c and a sign with target = sign * prod basis^c at
    every sampled point.  ``basis`` items come with gradings; returns
    (exponents, sign) or None."""
    A = [[g[i] for _, g in basis] for i in range(n)]
    for c in _integer_solutions(A, grading):
        sign = None
        ok = True
        for t in range(len(sampler)):
            plk = sampler.values(t)
            val = target(plk)
            mono = Fraction(1)
            for (item, _), e in zip(basis, c):
                if e:
                    mono *= basis_vals(item, plk) ** e
            if mono == 0 or val == 0:
                ok = False
                break
            r = val / mono
            if r not in (1, -1) or (sign is not None and r != sign):
                ok = False
                break
            sign = r
        if ok:
            return c, int(sign)
    return None


@dataclass
class QuasiCertificate:
    pairing: dict  # mutable node of S2 -> mutable node of S1
    monomials: dict  # mutable node of S2 -> ({frozen node of S1: exponent}, sign)
    frozen_change: list  # rows: frozen of S2 in terms of frozens of S1
    frozen_change_det: int
    points: int

    def to_json(self, S1: Seed, S2: Seed) -> dict:
        return {
            "pairing": {S2.name(q): S1.name(p) for q, p in self.pairing.items()},
            "monomials": {
                S2.name(q): {"exponents": {S1.name(f): e for f, e in mono.items()}, "sign": sgn}
                for q, (mono, sgn) in self.monomials.items()
            },
            "frozen_change": self.frozen_change,
            "frozen_change_det": self.frozen_change_det,
            "certified_at_points": self.points,
        }


@dataclass
class QuasiFailure:
    reason: str
    item: str = ""

    def __bool__(self) -> bool:
        return False


def _frozen_matrix(S1: Seed, S2: Seed, sampler: Sampler):
    n = S1.n
    basis = [(f, _grading(S1.exprs[f], n)) for f in S1.nodes if f in S1.frozen]
    rows = []
    for f in (v for v in S2.nodes if v in S2.frozen):
        g = _grading(S2.exprs[f], n)
        res = monomial_in(lambda plk, f=f: evaluate(S2, f, plk), g, basis, lambda v, plk: evaluate(S1, v, plk), sampler, n)
        if res is None:
            return None, S2.name(f)
        rows.append(res[0])
    return rows, None


def frozen_groups_equal(S1: Seed, S2: Seed, sampler: Sampler):
    """(True, matrix, det) when each frozen set is a Laurent monomial basis
    of the other's group."""
    A, bad = _frozen_matrix(S1, S2, sampler)
    if A is None:
        return False, None, bad
    B, bad = _frozen_matrix(S2, S1, sampler)
    if B is None:
        return False, None, bad
    if len(A) != len(B) or any(len(r) != len(A) for r in A):
        return False, A, "frozen counts differ"
    d = int(sp.Matrix(A).det())
    return d in (1, -1), A, d


def quasi_equivalent(S1: Seed, S2: Seed, sampler: Sampler):
    """A QuasiCertificate, or a QuasiFailure naming the first unmatched item."""
    n = S1.n
    if len(S1.mutable) != len(S2.mutable):
        return QuasiFailure("mutable counts differ")
    ok, A, d = frozen_groups_equal(S1, S2, sampler)
    if not ok:
        return QuasiFailure("frozen groups differ", str(d))
    basis = [(f, _grading(S1.exprs[f], n)) for f in S1.nodes if f in S1.frozen]
    val1 = lambda v, plk: evaluate(S1, v, plk)
    pairing, monos = {}, {}
    used = set()
    for q in S2.mutable:
        gq = _grading(S2.exprs[q], n)
        found = None
        for p in S1.mutable:
            if p in used:
                continue
            gp = _grading(S1.exprs[p], n)
            diff = [a - b for a, b in zip(gq, gp)]
            res = monomial_in(
                lambda plk, p=p, q=q: evaluate(S2, q, plk) / evaluate(S1, p, plk),
                diff, basis, val1, sampler, n,
            )
            if res is not None:
                found = (p, res)
                break
        if found is None:
            return QuasiFailure("no matching mutable variable", S2.name(q))
        p, (c, sgn) = found
        used.add(p)
        pairing[q] = p
        monos[q] = ({f: e for (f, _), e in zip(basis, c) if e}, sgn)
    for q, p in pairing.items():
        y1, y2 = exchange_ratio(S1, p), exchange_ratio(S2, q)
        for t in range(len(sampler)):
            plk = sampler.values(t)
            if y1.evaluate(S1, plk) != y2.evaluate(S2, plk):
                return QuasiFailure("exchange ratios differ", S2.name(q))
    return QuasiCertificate(pairing, monos, A, d, len(sampler))


def quasi_transformation_search(S1: Seed, S2: Seed, depth: int, sampler: Sampler):
    """BFS over mutation sequences of S1 (deterministic vertex order).
    Returns (sequence, certificate) or None."""
    start = (S1, ())
    seen = {S1.key()}
    queue = deque([start])
    while queue:
        cur, seq = queue.popleft()
        cert = quasi_equivalent(cur, S2, sampler)
        if cert:
            return [S1.name(p) for p in seq], cert
        if len(seq) >= depth:
            continue
        for p in cur.mutable:
            nxt = mutate(cur, p)
            k = nxt.key()
            if k in seen:
                continue
            seen.add(k)
            queue.append((nxt, seq + (p,)))
    return None


# -- toggles as quasi-cluster transformations ----------------------------------------

@dataclass
class ToggleWitness:
    necklace: Necklace
    toggled: Necklace
    position: int
    collection: frozenset
    inner: frozenset
    inner_after: frozenset
    extra: frozenset  # whichever of the two extra subsets lies inside
    outside: frozenset
    seed_before: Seed | None
    seed_after: Seed | None
    certificate: object = None
    degenerate: bool = False
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        n = self.necklace.n
        f = lambda S: sorted((fmt_subset(I, n) for I in S), key=lambda s: s)
        return {
            "necklace": [fmt_subset(I, n) for I in self.necklace.subsets],
            "toggled": [fmt_subset(I, n) for I in self.toggled.subsets],
            "position": self.position,
            "collection": f(self.collection),
            "inside": f(self.inner),
            "extra_inside": fmt_subset(self.extra, n) if self.extra else None,
            "degenerate": self.degenerate,
            "checks": self.checks,
        }


def toggle_quasi_witness(N: Necklace, a: int, M: Positroid | None = None, sampler: Sampler | None = None) -> ToggleWitness:
    """Realize the aligned toggle at position a by a square move inside a
    maximal weakly separated collection, and certify the two restricted seeds
    are quasi-equivalent."""
    n, k = N.n, N.k
    if classify_toggle(N, a) != ToggleClass.ALIGNED:
        raise ValueError(f"toggle at {a} is {classify_toggle(N, a).value}, not aligned")
    pi = N.trip
    M = M or positroid_of(pi)
    Np = toggle(N, a)
    for X in (N, Np):
        ok, pair = is_ws_collection(X.subsets)
        if not ok:
            raise ValueError("both necklaces must be weakly separated")
    prev, nxt = N[a - 1], N[a + 1]
    Ij, Ijp = N[a], Np[a]
    if len({prev, Ij, nxt}) < 3:
        # a lollipop chord next to a: the toggle only reorders the necklace
        dummy = frozenset(N.subsets)
        return ToggleWitness(N, Np, a, dummy, dummy, dummy, frozenset(), frozenset(), None, None,
                             degenerate=True, checks={"same_subsets": set(N.subsets) == set(Np.subsets)})
    S = prev & nxt
    # I_{j-1} = Suv, I_j = Svx, I_{j+1} = Swx, I'_j = Suw
    u = next(iter(prev - Ij))
    w = next(iter(nxt - Ij))
    vx = Ij - S
    v = next(iter(vx & prev))
    x = next(iter(vx & nxt))
    Sux, Svw = S | {u, x}, S | {v, w}
    base = set(N.subsets) | {Sux, Svw}
    C = complete_to_maximal(base, n, k).subsets
    inner = necklace_interior(N)
    inner_np = necklace_interior(Np)
    Cin = frozenset(C & inner)
    Cp = (C - {Ij}) | {Ijp}
    Cpin = frozenset(Cp & inner_np)
    inside = [T for T in (Sux, Svw) if T in inner]
    checks = {
        "extras_weakly_separated": all(weakly_separated(T, I) for T in (Sux, Svw) for I in N.subsets),
        "exactly_one_extra_inside": len(inside) == 1,
        "size_is_dimension": len(Cin) == dimension(pi) and len(Cpin) == dimension(pi),
        "inside_in_positroid": all(I in M.bases for I in Cin | Cpin),
        "other_extra_not_in_positroid": len(inside) == 1 and ({Sux, Svw} - set(inside)).pop() not in M.bases,
        "boundary_becomes_toggled": set(Np.subsets) <= Cpin,
    }
    S1 = seed_from_collection(Cin, n, N.subsets)
    S2 = seed_from_collection(Cpin, n, Np.subsets)
    sampler = sampler or Sampler(pi, count=20)
    cert = quasi_equivalent(S1, S2, sampler)
    checks["quasi_equivalent"] = bool(cert)
    return ToggleWitness(N, Np, a, frozenset(C), Cin, Cpin, inside[0] if len(inside) == 1 else frozenset(),
                         ({Sux, Svw} - set(inside)).pop() if len(inside) == 1 else frozenset(),
                         S1, S2, cert, False, checks)

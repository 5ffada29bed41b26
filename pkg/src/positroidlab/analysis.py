"""Toggle graphs, Sep sets, Schubert detection and exhaustive sweeps.

>>> from .perm import Perm
>>> TG = toggle_graph(Perm.parse("465213"))
>>> len(TG.vertices), len(TG.edges), TG.is_connected()
(4, 4, True)
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .necklace import (
    NecklaceError,
    aligned_path,
    fmt_subset,
    necklace_of,
    unit_monomial_path,
)
from .perm import AffinePerm, Perm, e_k, length, lift, lower_ideal, reduce, type_of
from .wsc import is_ws_collection

__all__ = [
    "ToggleGraph",
    "sep_set",
    "is_sep",
    "toggle_graph",
    "is_toggle_connected",
    "is_schubert",
    "sweep",
    "SWEEPS",
    "toggle_graph_dot",
]


def _conj_length(u: AffinePerm, f: AffinePerm) -> int:
    return length(u.inverse() * f * u)


def is_sep(u: AffinePerm, f: AffinePerm) -> bool:
    """The length condition for a member u of the lower ideal of f."""
    return _conj_length(u, f) == length(f)


def sep_set(pi: Perm) -> set[Perm]:
    f = lift(pi)
    return {reduce(u) for u in lower_ideal(f) if is_sep(u, f)}


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry, key=_wkey)] = min(rx, ry, key=_wkey)


def _wkey(u: AffinePerm) -> tuple:
    return u.window


@dataclass
class ToggleGraph:
    """Graph on Sep_f.  ``ideal`` keeps the whole lower ideal so that the
    non-Sep elements can be drawn too."""

    pi: Perm
    vertices: set
    edges: set
    ideal: set
    _uf: _UnionFind = field(repr=False, default_factory=_UnionFind)

    @property
    def top(self) -> AffinePerm:
        return lift(self.pi)

    @property
    def bottom(self) -> AffinePerm:
        k, n = type_of(self.pi)
        return e_k(k, n)

    def components(self) -> list[list[AffinePerm]]:
        groups: dict = {}
        for v in self.vertices:
            groups.setdefault(self._uf.find(v), []).append(v)
        comps = [sorted(g, key=_wkey) for g in groups.values()]
        return sorted(comps, key=lambda c: _wkey(c[0]))

    def same_component(self, u: AffinePerm, v: AffinePerm) -> bool:
        if u not in self.vertices or v not in self.vertices:
            return False
        return self._uf.find(u) == self._uf.find(v)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def to_json(self) -> dict:
        comp_of = {}
        for c, members in enumerate(self.components()):
            for v in members:
                comp_of[v] = c
        return {
            "pi": str(self.pi),
            "vertices": [{"window": list(v.window), "perm": str(reduce(v)), "component": comp_of[v]}
                         for v in sorted(self.vertices, key=_wkey)],
            "non_sep": [list(v.window) for v in sorted(self.ideal - self.vertices, key=_wkey)],
            "edges": [[list(u.window), list(v.window), a] for u, v, a in
                      sorted(self.edges, key=lambda e: (_wkey(e[0]), _wkey(e[1]), e[2]))],
            "components": len(self.components()),
            "toggle_connected": self.same_component(self.top, self.bottom),
        }


def toggle_graph(pi: Perm) -> ToggleGraph:
    f = lift(pi)
    ideal = lower_ideal(f)
    verts = {u for u in ideal if is_sep(u, f)}
    uf = _UnionFind()
    for u in verts:
        uf.add(u)
    edges = set()
    for u in verts:
        for a in range(f.n):
            # only record each edge from its longer endpoint
            if u(a) > u(a + 1):
                w = u.right_simple(a)
                if w in verts:
                    edges.add((w, u, a if a else f.n))
                    uf.union(u, w)
    return ToggleGraph(pi, verts, edges, ideal, uf)


def is_toggle_connected(pi: Perm) -> bool:
    TG = toggle_graph(pi)
    return TG.same_component(TG.top, TG.bottom)


def _single_descent(pi: Perm) -> int | None:
    d = [a for a in range(1, pi.n) if pi(a) > pi(a + 1)]
    return d[0] if len(d) == 1 else None


def is_schubert(pi: Perm) -> str:
    k, n = type_of(pi)
    a = _single_descent(pi)
    if a is not None and all(pi(b) != b for b in range(1, a + 1)):
        return "schubert"
    imgs = pi.images
    low = [x for x in imgs if x <= k]
    high = [x for x in imgs if x > k]
    if low == sorted(low) and high == sorted(high) and all(pi(b) != b for b in high):
        return "opposite-schubert"
    return "neither"


def toggle_graph_dot(TG: ToggleGraph) -> str:
    name = lambda u: '"' + ",".join(map(str, u.window)) + '"'
    comps = TG.components()
    lines = [f'graph "TG_{TG.pi}" {{', "  node [shape=box];"]
    for c, members in enumerate(comps):
        for v in members:
            lines.append(f"  {name(v)} [color=black, label=\"{reduce(v)}\", comment=\"component {c}\"];")
    for v in sorted(TG.ideal - TG.vertices, key=_wkey):
        lines.append(f"  {name(v)} [color=red, style=dashed, label=\"{reduce(v)}\"];")
    for u, v, a in sorted(TG.edges, key=lambda e: (_wkey(e[0]), _wkey(e[1]), e[2])):
        lines.append(f"  {name(u)} -- {name(v)} [label=\"s{a}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- sweeps

def _all_perms(n_min: int, n_max: int):
    for n in range(max(n_min, 1), n_max + 1):
        for imgs in permutations(range(1, n + 1)):
            yield Perm(imgs)


def _record(kind: str, pi: Perm, ok: bool, witness=None) -> dict:
    k, n = type_of(pi)
    return {"theorem": kind, "n": n, "k": k, "pi": str(pi),
            "status": "pass" if ok else "fail", "witness": witness}


def _check_main(pi: Perm) -> dict:
    f = lift(pi)
    bad = []
    for u in sorted(lower_ideal(f), key=_wkey):
        lhs = is_sep(u, f)
        iota = reduce(u)
        try:
            N = necklace_of(iota, pi)
            rhs, _ = is_ws_collection(N.subsets)
        except NecklaceError as exc:
            bad.append({"iota": str(iota), "error": str(exc)})
            continue
        if lhs != rhs:
            bad.append({"iota": str(iota), "length_condition": lhs, "weakly_separated": rhs})
    return _record("main-2-iff-3", pi, not bad, bad or None)


def _check_unit(pi: Perm, points: int = 20, seed: int = 0) -> dict:
    """Every necklace reachable from the forward necklace by aligned toggles
    is N_{., iota, pi} for some iota in the ideal, so checking each iota once
    covers every path."""
    from .seed import Sampler

    sampler = Sampler(pi, points, seed)
    checked = 0
    for u in sorted(lower_ideal(lift(pi)), key=_wkey):
        iota = reduce(u)
        steps = aligned_path(iota, pi)
        N, expo = unit_monomial_path(pi, iota, steps)
        for t in range(len(sampler)):
            plk = sampler.values(t)
            for a, S in enumerate(N.subsets):
                pred = Fraction(1)
                for T, c in expo[a].items():
                    pred *= plk[T] ** c
                checked += 1
                if pred != plk[S]:
                    return _record("unit-necklace", pi, False, {
                        "iota": str(iota), "steps": steps, "position": a + 1,
                        "subset": fmt_subset(S, pi.n), "point": t,
                        "expected": str(pred), "actual": str(plk[S]),
                    })
    return _record("unit-necklace", pi, True, {"identities": checked})


def _check_schubert(pi: Perm) -> dict | None:
    kind = is_schubert(pi)
    if kind == "neither":
        return None
    TG = toggle_graph(pi)
    ok = TG.vertices == TG.ideal and TG.is_connected()
    wit = None if ok else {"class": kind, "ideal": len(TG.ideal), "sep": len(TG.vertices),
                           "components": len(TG.components())}
    rec = _record("schubert", pi, ok, wit)
    rec["class"] = kind
    return rec


def _check_components(pi: Perm) -> dict:
    TG = toggle_graph(pi)
    comps = TG.components()
    rec = _record("toggle-components", pi, True, {
        "sep": len(TG.vertices),
        "ideal": len(TG.ideal),
        "component_sizes": [len(c) for c in comps],
        "toggle_connected": TG.same_component(TG.top, TG.bottom),
    })
    return rec


def _check_toggle_witness(pi: Perm) -> dict:
    from .necklace import ToggleClass, classify_toggle, toggle
    from .seed import Sampler, toggle_quasi_witness

    f = lift(pi)
    sampler = None
    bad = []
    for u in sorted(lower_ideal(f), key=_wkey):
        if not is_sep(u, f):
            continue
        N = necklace_of(reduce(u), pi)
        for a in range(1, pi.n + 1):
            if classify_toggle(N, a) is not ToggleClass.ALIGNED:
                continue
            M = toggle(N, a)
            w = reduce(lift(M.insertion))
            if lift(w) not in lower_ideal(f) or not is_sep(lift(w), f):
                continue
            if sampler is None:
                sampler = Sampler(pi, 20, 0)
            W = toggle_quasi_witness(N, a, sampler=sampler)
            if not W.ok:
                bad.append({"iota": str(reduce(u)), "a": a})
    return _record("toggle-witness", pi, not bad, bad or None)


SWEEPS = {
    "main-2-iff-3": _check_main,
    "unit-necklace": _check_unit,
    "schubert": _check_schubert,
    "toggle-components": _check_components,
    "toggle-witness": _check_toggle_witness,
}


def sweep(kind: str, n_max: int, jobs: int = 1, n_min: int = 2) -> dict:
    """Run one family of checks over every permutation with n_min <= n <= n_max.

    Records are sorted by (n, pi) so that the output does not depend on
    ``jobs``."""
    if kind not in SWEEPS:
        raise ValueError(f"unknown sweep {kind!r}; choose from {sorted(SWEEPS)}")
    check = SWEEPS[kind]
    perms = list(_all_perms(n_min, n_max))
    if jobs > 1 and len(perms) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(check, perms, chunksize=16))
    else:
        results = [check(p) for p in perms]
    records = [r for r in results if r is not None]
    records.sort(key=lambda r: (r["n"], r["pi"]))
    failed = sum(1 for r in records if r["status"] != "pass")
    return {
        "kind": kind,
        "n_max": n_max,
        "instances": len(records),
        "failed": failed,
        "status": "pass" if not failed else "fail",
        "records": records,
    }

"""Weak separation, maximal collections, square moves and plabic tilings."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .necklace import Necklace, fmt_subset
from .positroid import Positroid, all_subsets

__all__ = [
    "WSCollection",
    "PlabicTiling",
    "NotWeaklySeparated",
    "weakly_separated",
    "is_ws_collection",
    "complete_to_maximal",
    "square_moves_available",
    "apply_square_move",
    "polygon_points",
    "point_of",
    "tiling",
    "necklace_interior",
    "curve_crossings",
    "tiling_svg",
    "colex_key",
]

Point = tuple[Fraction, Fraction]


class NotWeaklySeparated(ValueError):
    def __init__(self, pair):
        self.pair = pair
        a, b = pair
        super().__init__(f"{fmt_subset(a)} and {fmt_subset(b)} are not weakly separated")


def weakly_separated(I: Iterable[int], J: Iterable[int], n: int | None = None) -> bool:
    I, J = frozenset(I), frozenset(J)
    if len(I) != len(J):
        raise ValueError("weak separation is only defined for subsets of equal size")
    marks = [(x, x in I) for x in sorted(I ^ J)]
    if not marks:
        return True
    changes = sum(1 for t in range(len(marks)) if marks[t][1] != marks[t - 1][1])
    return changes <= 2


def is_ws_collection(C: Iterable) -> tuple[bool, tuple | None]:
    items = sorted({frozenset(x) for x in C}, key=colex_key)
    for a, b in combinations(items, 2):
        if not weakly_separated(a, b):
            return False, (a, b)
    return True, None


def colex_key(S) -> tuple:
    return tuple(sorted(S, reverse=True))


@dataclass(frozen=True)
class WSCollection:
    n: int
    k: int
    subsets: frozenset

    def __post_init__(self):
        ok, pair = is_ws_collection(self.subsets)
        if not ok:
            raise NotWeaklySeparated(pair)

    @classmethod
    def of(cls, n: int, subsets: Iterable) -> "WSCollection":
        subs = frozenset(frozenset(s) for s in subsets)
        k = len(next(iter(subs))) if subs else 0
        return cls(n, k, subs)

    def __len__(self) -> int:
        return len(self.subsets)

    def sorted(self) -> list[frozenset]:
        return sorted(self.subsets, key=colex_key)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "subsets": [sorted(s) for s in self.sorted()]}


def complete_to_maximal(C: Iterable, n: int, k: int, M: Positroid | None = None) -> WSCollection:
    """Greedy completion inside M (or all k-subsets), colex candidate order."""
    coll = {frozenset(s) for s in C}
    if M is not None:
        outside = [s for s in coll if s not in M.bases]
        if outside:
            raise ValueError(f"{fmt_subset(outside[0])} is not a basis of the positroid")
        pool = M.bases
    else:
        pool = all_subsets(n, k)
    ok, pair = is_ws_collection(coll)
    if not ok:
        raise NotWeaklySeparated(pair)
    for S in sorted(pool, key=colex_key):
        if S not in coll and all(weakly_separated(S, T) for T in coll):
            coll.add(S)
    return WSCollection(n, k, frozenset(coll))


def _cyc_ordered(xs: Sequence[int], n: int) -> bool:
    """xs strictly increasing in some cyclic order."""
    a = xs[0]
    offs = [(x - a) % n for x in xs]
    return all(p < q for p, q in zip(offs, offs[1:]))


def square_moves_available(C: Iterable, n: int) -> list[tuple[frozenset, frozenset]]:
    coll = {frozenset(s) for s in C}
    moves = []
    for I in sorted(coll, key=colex_key):
        outside = [x for x in range(1, n + 1) if x not in I]
        for a, c in combinations(sorted(I), 2):
            S = I - {a, c}
            for b, d in combinations(outside, 2):
                for (p, q, r, s) in ((a, b, c, d), (a, d, c, b)):
                    if not _cyc_ordered((p, q, r, s), n):
                        continue
                    need = [S | {p, q}, S | {q, r}, S | {r, s}, S | {p, s}]
                    if all(x in coll for x in need):
                        moves.append((I, S | {b, d}))
    return sorted(set(moves), key=lambda m: (colex_key(m[0]), colex_key(m[1])))


def apply_square_move(C: Iterable, I, J) -> frozenset:
    coll = {frozenset(s) for s in C}
    coll.discard(frozenset(I))
    coll.add(frozenset(J))
    return frozenset(coll)


def _rational_circle_point(theta: float) -> Point:
    t = Fraction(math.tan(theta / 2)).limit_denominator(10**6)
    d = 1 + t * t
    return (1 - t * t) / d, 2 * t / d


def polygon_points(n: int) -> list[Point]:
    """Exact rational points on the unit circle, clockwise, starting near the top."""
    pts = []
    for i in range(n):
        theta = math.pi / 2 - 2 * math.pi * (i + 0.25) / n
        theta = (theta + math.pi) % (2 * math.pi) - math.pi
        pts.append(_rational_circle_point(theta))
    return pts


def point_of(I: Iterable[int], pts: Sequence[Point]) -> Point:
    x = sum((pts[i - 1][0] for i in I), Fraction(0))
    y = sum((pts[i - 1][1] for i in I), Fraction(0))
    return x, y


@dataclass(frozen=True)
class PlabicTiling:
    n: int
    vertices: dict
    white: dict
    black: dict
    edges: frozenset

    def to_json(self) -> dict:
        pt = lambda p: [str(p[0]), str(p[1])]
        return {
            "n": self.n,
            "vertices": {fmt_subset(I, self.n): pt(p) for I, p in sorted(self.vertices.items(), key=lambda t: colex_key(t[0]))},
            "white": {fmt_subset(X, self.n): [fmt_subset(I, self.n) for I in v] for X, v in self.white.items()},
            "black": {fmt_subset(X, self.n): [fmt_subset(I, self.n) for I in v] for X, v in self.black.items()},
            "edges": sorted(sorted(fmt_subset(I, self.n) for I in e) for e in self.edges),
        }


def tiling(C: Iterable, n: int) -> PlabicTiling:
    coll = sorted({frozenset(s) for s in C}, key=colex_key)
    ok, pair = is_ws_collection(coll)
    if not ok:
        raise NotWeaklySeparated(pair)
    pts = polygon_points(n)
    verts = {I: point_of(I, pts) for I in coll}
    white: dict = {}
    black: dict = {}
    for I in coll:
        for a in I:
            white.setdefault(I - {a}, []).append(I)
        for b in range(1, n + 1):
            if b not in I:
                black.setdefault(I | {b}, []).append(I)
    white = {X: sorted(v, key=lambda I: min(I - X)) for X, v in white.items() if len(v) > 2}
    black = {X: sorted(v, key=lambda I: min(X - I)) for X, v in black.items() if len(v) > 2}
    edges = set()
    for cl in list(white.values()) + list(black.values()):
        for t in range(len(cl)):
            edges.add(frozenset((cl[t], cl[(t + 1) % len(cl)])))
    return PlabicTiling(n, verts, white, black, frozenset(edges))


def _orient(p: Point, q: Point, r: Point) -> Fraction:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    if _orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _winding(p: Point, poly: Sequence[Point]) -> int:
    w = 0
    m = len(poly)
    for t in range(m):
        a, b = poly[t], poly[(t + 1) % m]
        if a[1] <= p[1]:
            if b[1] > p[1] and _orient(a, b, p) > 0:
                w += 1
        elif b[1] <= p[1] and _orient(a, b, p) < 0:
            w -= 1
    return w


def weakly_inside(p: Point, poly: Sequence[Point]) -> bool:
    m = len(poly)
    if any(_on_segment(p, poly[t], poly[(t + 1) % m]) for t in range(m)):
        return True
    return _winding(p, poly) != 0


def necklace_interior(N: Necklace) -> frozenset:
    ok, pair = is_ws_collection(N.subsets)
    if not ok:
        raise NotWeaklySeparated(pair)
    pts = polygon_points(N.n)
    poly = [point_of(I, pts) for I in N.subsets]
    members = set(N.subsets)
    out = set()
    for S in all_subsets(N.n, N.k):
        if S in members:
            out.add(S)
            continue
        if all(weakly_separated(S, T) for T in members) and weakly_inside(point_of(S, pts), poly):
            out.add(S)
    return frozenset(out)


def curve_crossings(N: Necklace) -> list[tuple[int, int]]:
    """Pairs of edges of the necklace curve that cross at interior points."""
    pts = polygon_points(N.n)
    poly = [point_of(I, pts) for I in N.subsets]
    m = len(poly)
    bad = []
    for s in range(m):
        for t in range(s + 1, m):
            a, b = poly[s], poly[(s + 1) % m]
            c, d = poly[t], poly[(t + 1) % m]
            if a == b or c == d or len({a, b, c, d}) < 4:
                continue
            o1, o2 = _orient(a, b, c), _orient(a, b, d)
            o3, o4 = _orient(c, d, a), _orient(c, d, b)
            if o1 * o2 < 0 and o3 * o4 < 0:
                bad.append((s + 1, t + 1))
    return bad


def tiling_svg(C: Iterable, n: int, curve: Necklace | None = None, size: int = 480) -> str:
    T = tiling(C, n)
    pts = list(T.vertices.values())
    if curve is not None:
        ppts = polygon_points(n)
        pts += [point_of(I, ppts) for I in curve.subsets]
    xs = [float(p[0]) for p in pts] or [0.0]
    ys = [float(p[1]) for p in pts] or [0.0]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    pad = 40

    def tr(p):
        x = pad + (float(p[0]) - lo_x) / span * (size - 2 * pad)
        y = pad + (hi_y - float(p[1])) / span * (size - 2 * pad)
        return f"{x:.2f},{y:.2f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    for fill, cliques in (("#ffffff", T.white), ("#444444", T.black)):
        for X, members in sorted(cliques.items(), key=lambda t: colex_key(t[0])):
            poly = " ".join(tr(T.vertices[I]) for I in members)
            out.append(f'<polygon points="{poly}" fill="{fill}" fill-opacity="0.5" stroke="black"/>')
    for e in sorted(T.edges, key=lambda e: sorted(map(colex_key, e))):
        a, b = sorted(e, key=colex_key)
        (x1, y1), (x2, y2) = tr(T.vertices[a]).split(","), tr(T.vertices[b]).split(",")
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"/>')
    if curve is not None:
        ppts = polygon_points(n)
        poly = " ".join(tr(point_of(I, ppts)) for I in curve.subsets)
        out.append(f'<polygon points="{poly}" fill="none" stroke="red" stroke-width="2"/>')
    for I, p in sorted(T.vertices.items(), key=lambda t: colex_key(t[0])):
        x, y = tr(p).split(",")
        out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="blue"/>')
        out.append(f'<text x="{x}" y="{y}" font-size="11" dx="4" dy="-4">{fmt_subset(I, n)}</text>')
    out.append("</svg>")
    return "\n".join(out)

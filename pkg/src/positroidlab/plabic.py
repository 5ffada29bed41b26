"""Plabic graphs in a disk, stored as rotation systems.

Vertices are integers.  Boundary vertices have colour ``None`` and exactly
one incident edge; ``boundary[i - 1]`` is the boundary vertex at clockwise
position ``i``, and it carries the label ``rho(i)``.  Rotations list edge ids
counterclockwise.  The boundary circle itself is implicit: arcs between
consecutive boundary vertices are added internally when tracing faces.
"""
from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .necklace import Necklace, fmt_subset, grassmannlike
from .perm import AffinePerm, Perm, identity, length, lift, type_of
from .positroid import dimension

__all__ = [
    "WHITE",
    "BLACK",
    "PlabicGraph",
    "Face",
    "Trip",
    "Quiver",
    "PlabicError",
    "FaceLabelError",
    "NotMovable",
    "from_drawing",
    "generate_graph",
    "relabel",
    "normalize",
    "square_move",
    "dual_quiver",
    "face_labels",
    "trips",
    "is_reduced",
    "reducedness_report",
    "example_graphs",
    "graph_to_dot",
    "quiver_to_dot",
]

WHITE, BLACK = "white", "black"


class PlabicError(ValueError):
    pass


class FaceLabelError(PlabicError):
    """Face labels do not all have the size dictated by the trip permutation."""

    def __init__(self, label_sizes: set, trip_k: int):
        self.label_sizes = sorted(label_sizes)
        self.trip_k = trip_k
        super().__init__(f"face labels have sizes {self.label_sizes} but the trip permutation has k = {trip_k}")


class NotMovable(PlabicError):
    pass


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple
    positions: tuple  # boundary positions a such that this face sits between a-1 and a

    @property
    def is_boundary(self) -> bool:
        return bool(self.positions)


@dataclass(frozen=True)
class Trip:
    start: int  # boundary position
    end: int
    darts: tuple


@dataclass
class Quiver:
    """Arrows stored as a skew-symmetric count b[(p, q)] = #(p->q) - #(q->p)."""

    nodes: list
    frozen: set
    b: dict = field(default_factory=dict)

    def arrows(self) -> list[tuple]:
        return sorted((p, q, m) for (p, q), m in self.b.items() if m > 0)

    def count(self, p, q) -> int:
        return self.b.get((p, q), 0)

    def mutable(self) -> list:
        return [v for v in self.nodes if v not in self.frozen]


@dataclass(frozen=True, eq=False)
class PlabicGraph:
    n: int
    colors: dict
    edges: tuple
    rotation: dict
    boundary: tuple
    rho: Perm

    def __post_init__(self):
        if self.n < 2:
            raise PlabicError("plabic graphs need n >= 2")
        if len(self.boundary) != self.n or self.rho.n != self.n:
            raise PlabicError("boundary and rho must have length n")
        inc = Counter()
        for e, (u, v) in enumerate(self.edges):
            if u == v:
                raise PlabicError(f"edge {e} is a loop")
            inc[(u, e)] += 1
            inc[(v, e)] += 1
        seen = Counter()
        for v, rot in self.rotation.items():
            for e in rot:
                seen[(v, e)] += 1
        if inc != seen:
            raise PlabicError("malformed rotation system: rotations disagree with the edge list")
        for b in self.boundary:
            if self.colors.get(b) is not None or len(self.rotation.get(b, ())) != 1:
                raise PlabicError(f"boundary vertex {b} must be uncoloured with degree 1")
        for v, c in self.colors.items():
            if v not in self.boundary and c not in (WHITE, BLACK):
                raise PlabicError(f"interior vertex {v} has no colour")
        _ = self.faces  # validates planarity

    def _fields(self) -> tuple:
        return (self.n, self.colors, self.edges, self.rotation, self.boundary, self.rho)

    def __eq__(self, other) -> bool:
        return isinstance(other, PlabicGraph) and self._fields() == other._fields()

    def __hash__(self) -> int:
        return hash((self.n, self.edges, self.boundary, self.rho))

    # -- derived structure -------------------------------------------------
    @cached_property
    def _pos(self) -> dict:
        return {i + 1: b for i, b in enumerate(self.boundary)}

    @cached_property
    def _position_of(self) -> dict:
        return {b: i + 1 for i, b in enumerate(self.boundary)}

    def interior(self) -> list:
        return sorted(v for v in self.colors if v not in self._position_of)

    def leg(self, position: int) -> int:
        return self.rotation[self.boundary[position - 1]][0]

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if v == a else a

    @cached_property
    def _ext(self):
        """Edge list and rotations with the boundary arcs added."""
        E = len(self.edges)
        edges = list(self.edges)
        rot = {v: list(r) for v, r in self.rotation.items()}
        for i in range(1, self.n + 1):
            edges.append((self.boundary[i - 1], self.boundary[i % self.n]))
        for i in range(1, self.n + 1):
            b = self.boundary[i - 1]
            prev_arc = E + (i - 2) % self.n
            next_arc = E + i - 1
            rot[b] = [prev_arc, self.rotation[b][0], next_arc]
        pos = {}
        for v, r in rot.items():
            for idx, e in enumerate(r):
                pos[(v, e)] = idx
        return edges, rot, pos

    def _arc(self, a: int) -> int:
        """Arc id between positions a and a+1."""
        return len(self.edges) + a - 1

    def _head(self, dart) -> int:
        e, tail = dart
        edges = self._ext[0]
        u, v = edges[e]
        return v if tail == u else u

    @cached_property
    def faces(self) -> list[Face]:
        edges, rot, pos = self._ext
        E = len(self.edges)
        outer = set()
        for a in range(1, self.n + 1):
            outer.add((self._arc(a), self.boundary[a - 1]))
        darts = []
        for e in range(len(edges)):
            u, v = edges[e]
            for d in ((e, u), (e, v)):
                if d not in outer:
                    darts.append(d)
        seen = set()
        faces = []
        for d0 in darts:
            if d0 in seen:
                continue
            cyc = []
            d = d0
            while d not in seen:
                if d in outer:
                    raise PlabicError("malformed rotation system: interior face reaches the outside")
                seen.add(d)
                cyc.append(d)
                e, tail = d
                h = self._head(d)
                r = rot[h]
                e2 = r[pos[(h, e)] - 1]
                d = (e2, h)
            if d != d0:
                raise PlabicError("malformed rotation system: face walk is not a cycle")
            positions = []
            for (e, tail) in cyc:
                if e >= E:
                    a = e - E + 1  # arc between a and a+1, traversed a+1 -> a
                    positions.append(a % self.n + 1)
            faces.append(Face(len(faces), tuple(cyc), tuple(sorted(positions))))
        V = len(self.colors)
        if len(faces) != E + self.n - V + 1:
            raise PlabicError("malformed rotation system: Euler characteristic is not that of a disk")
        return faces

    @cached_property
    def face_of(self) -> dict:
        return {d: F.id for F in self.faces for d in F.darts}

    def boundary_face(self, a: int) -> Face:
        """Face between positions a-1 and a."""
        arc = self._arc((a - 2) % self.n + 1)
        return self.faces[self.face_of[(arc, self.boundary[a - 1])]]

    # -- trips ---------------------------------------------------------------
    def _step(self, dart):
        e, tail = dart
        h = self._head(dart)
        if h in self._position_of:
            return None
        r = self.rotation[h]
        idx = r.index(e)
        e2 = r[idx - 1] if self.colors[h] == WHITE else r[(idx + 1) % len(r)]
        return (e2, h)

    @cached_property
    def trips(self) -> list[Trip]:
        out = []
        for s in range(1, self.n + 1):
            b = self.boundary[s - 1]
            d = (self.leg(s), b)
            path = [d]
            limit = 4 * len(self.edges) + 4
            while True:
                nd = self._step(d)
                if nd is None:
                    break
                path.append(nd)
                d = nd
                if len(path) > limit:
                    raise PlabicError("trip does not terminate")
            t = self._position_of[self._head(d)]
            out.append(Trip(s, t, tuple(path)))
        return out

    @cached_property
    def round_trips(self) -> list[tuple]:
        used = {d for T in self.trips for d in T.darts}
        cycles = []
        for e, (u, v) in enumerate(self.edges):
            for d in ((e, u), (e, v)):
                if d in used or u in self._position_of or v in self._position_of:
                    continue
                cyc = [d]
                used.add(d)
                x = self._step(d)
                while x is not None and x != d:
                    used.add(x)
                    cyc.append(x)
                    x = self._step(x)
                cycles.append(tuple(cyc))
        return cycles

    @cached_property
    def trip_perm(self) -> Perm:
        img = [0] * self.n
        for T in self.trips:
            img[self.rho(T.start) - 1] = self.rho(T.end)
        return Perm(tuple(img))

    @cached_property
    def underlying_perm(self) -> Perm:
        img = [0] * self.n
        for T in self.trips:
            img[T.start - 1] = T.end
        return Perm(tuple(img))

    @cached_property
    def left_faces(self) -> dict:
        """Trip start position -> set of face ids to the left of the trip."""
        out = {}
        nf = len(self.faces)
        for T in self.trips:
            parity = Counter(e for e, _ in T.darts)
            ref = self.boundary_face(T.start % self.n + 1).id
            side = {ref: True}
            queue = deque([ref])
            adj = self._dual_adjacency
            while queue:
                f = queue.popleft()
                for g, e in adj[f]:
                    s = side[f] ^ (parity[e] % 2 == 1)
                    if g in side:
                        if side[g] != s:
                            raise PlabicError("trip does not separate the disk consistently")
                    else:
                        side[g] = s
                        queue.append(g)
            if len(side) != nf:
                raise PlabicError("dual graph is disconnected")
            for a in range(1, self.n + 1):
                expect = T.start == T.end or 0 < (a - T.start) % self.n <= (T.end - T.start) % self.n
                if side[self.boundary_face(a).id] != expect:
                    raise PlabicError(f"trip from {T.start} disagrees with boundary face {a}")
            out[T.start] = frozenset(f for f, s in side.items() if s)
        return out

    @cached_property
    def _dual_adjacency(self) -> dict:
        adj = {F.id: [] for F in self.faces}
        for e, (u, v) in enumerate(self.edges):
            f, g = self.face_of[(e, u)], self.face_of[(e, v)]
            adj[f].append((g, e))
            adj[g].append((f, e))
        return adj

    def labels(self, mode: str = "target", strict: bool = True) -> dict:
        if mode not in ("target", "source"):
            raise ValueError("mode must be 'target' or 'source'")
        lab = {F.id: set() for F in self.faces}
        for T in self.trips:
            val = self.rho(T.end if mode == "target" else T.start)
            for f in self.left_faces[T.start]:
                lab[f].add(val)
        lab = {f: frozenset(s) for f, s in lab.items()}
        sizes = {len(s) for s in lab.values()}
        k = type_of(self.trip_perm)[0]
        if strict and sizes != {k}:
            raise FaceLabelError(sizes, k)
        return lab

    def boundary_necklace(self) -> Necklace:
        lab = self.labels("target", strict=False)
        subs = [lab[self.boundary_face(a).id] for a in range(1, self.n + 1)]
        iota = self.trip_perm * self.rho
        N = grassmannlike(self.rho, iota)
        if list(N.subsets) != subs:
            raise PlabicError("boundary labels are not the Grassmannlike necklace of the graph")
        return N

    # -- serialisation -----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rho": list(self.rho.images),
            "vertices": [{"id": v, "color": self.colors[v] or "boundary"} for v in sorted(self.colors)],
            "edges": [list(e) for e in self.edges],
            "rotation": {str(v): list(r) for v, r in sorted(self.rotation.items())},
            "boundary": list(self.boundary),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PlabicGraph":
        colors = {int(v["id"]): (None if v["color"] == "boundary" else v["color"]) for v in data["vertices"]}
        return cls(
            int(data["n"]),
            colors,
            tuple(tuple(e) for e in data["edges"]),
            {int(v): tuple(r) for v, r in data["rotation"].items()},
            tuple(data["boundary"]),
            Perm(tuple(data["rho"])),
        )


# -- construction helpers ----------------------------------------------------

class _Builder:
    def __init__(self):
        self.colors: dict = {}
        self.edges: dict = {}
        self.rotation: dict = {}
        self._next_v = 0
        self._next_e = 0

    def vertex(self, color) -> int:
        v = self._next_v
        self._next_v += 1
        self.colors[v] = color
        self.rotation[v] = []
        return v

    def edge(self, u: int, v: int) -> int:
        e = self._next_e
        self._next_e += 1
        self.edges[e] = (u, v)
        return e

    def freeze(self, boundary, rho, n) -> PlabicGraph:
        # compact ids so JSON stays tidy
        vmap = {v: i for i, v in enumerate(sorted(self.colors))}
        emap = {e: i for i, e in enumerate(sorted(self.edges))}
        colors = {vmap[v]: c for v, c in self.colors.items()}
        edges = tuple((vmap[self.edges[e][0]], vmap[self.edges[e][1]]) for e in sorted(self.edges))
        rotation = {vmap[v]: tuple(emap[e] for e in r) for v, r in self.rotation.items()}
        return PlabicGraph(n, colors, edges, rotation, tuple(vmap[b] for b in boundary), rho)

    @classmethod
    def of(cls, G: PlabicGraph) -> "_Builder":
        B = cls()
        B.colors = dict(G.colors)
        B.edges = dict(enumerate(G.edges))
        B.rotation = {v: list(r) for v, r in G.rotation.items()}
        B._next_v = max(G.colors) + 1
        B._next_e = len(G.edges)
        return B

    def other(self, e, v):
        a, b = self.edges[e]
        return b if v == a else a

    def replace_endpoint(self, e, old, new):
        a, b = self.edges[e]
        self.edges[e] = (new, b) if a == old else (a, new)


def from_drawing(coords: dict, colors: dict, edges: Iterable, boundary_labels: dict) -> PlabicGraph:
    """Build a graph from a straight-line drawing.

    ``boundary_labels`` maps boundary node names to their labels; positions
    are read clockwise around the centroid starting from the label 1.
    """
    B = _Builder()
    ids = {}
    for name in coords:
        ids[name] = B.vertex(None if name in boundary_labels else colors[name])
    for u, v in edges:
        e = B.edge(ids[u], ids[v])
        B.rotation[ids[u]].append(e)
        B.rotation[ids[v]].append(e)
    for name, v in ids.items():
        x0, y0 = coords[name]

        def ang(e, v=v, x0=x0, y0=y0):
            w = B.other(e, v)
            name_w = next(k for k, i in ids.items() if i == w)
            x1, y1 = coords[name_w]
            return math.atan2(y1 - y0, x1 - x0)

        B.rotation[v] = sorted(B.rotation[v], key=ang)
    bnames = list(boundary_labels)
    cx = sum(coords[b][0] for b in bnames) / len(bnames)
    cy = sum(coords[b][1] for b in bnames) / len(bnames)
    start = next(b for b in bnames if boundary_labels[b] == 1)
    a0 = math.atan2(coords[start][1] - cy, coords[start][0] - cx)

    def cw(b):
        a = math.atan2(coords[b][1] - cy, coords[b][0] - cx)
        return (a0 - a) % (2 * math.pi)

    order = sorted(bnames, key=cw)
    rho = Perm(tuple(boundary_labels[b] for b in order))
    return B.freeze([ids[b] for b in order], rho, len(order))


# -- moves -------------------------------------------------------------------

def relabel(G: PlabicGraph, sigma: Perm) -> PlabicGraph:
    """Rename boundary label x to sigma(x)."""
    return PlabicGraph(G.n, G.colors, G.edges, G.rotation, G.boundary, sigma * G.rho)


def _contract(B: _Builder, e: int) -> None:
    u, v = B.edges[e]
    ru, rv = B.rotation[u], B.rotation[v]
    i, j = ru.index(e), rv.index(e)
    insert = rv[j + 1:] + rv[:j]
    B.rotation[u] = ru[:i] + insert + ru[i + 1:]
    for f in insert:
        B.replace_endpoint(f, v, u)
    del B.edges[e], B.rotation[v], B.colors[v]


def normalize(G: PlabicGraph) -> PlabicGraph:
    """Contract unicoloured interior edges and drop interior degree-2 vertices
    where this creates no loops or boundary-to-boundary edges."""
    B = _Builder.of(G)
    bset = set(G.boundary)
    changed = True
    while changed:
        changed = False
        for e in sorted(B.edges):
            u, v = B.edges[e]
            if u in bset or v in bset or B.colors[u] != B.colors[v]:
                continue
            parallel = sum(1 for f in B.rotation[u] if B.other(f, u) == v)
            if parallel > 1:
                continue
            _contract(B, e)
            changed = True
            break
        if changed:
            continue
        for x in sorted(B.colors):
            if x in bset or len(B.rotation[x]) != 2:
                continue
            e1, e2 = B.rotation[x]
            a, b = B.other(e1, x), B.other(e2, x)
            if a == b or (a in bset and b in bset):
                continue
            B.replace_endpoint(e1, x, b)
            B.rotation[b] = [e1 if f == e2 else f for f in B.rotation[b]]
            del B.edges[e2], B.rotation[x], B.colors[x]
            changed = True
            break
    return B.freeze(G.boundary, G.rho, G.n)


def _find_face(G: PlabicGraph, face) -> Face:
    if isinstance(face, Face):
        return G.faces[face.id]
    if isinstance(face, int):
        return G.faces[face]
    target = frozenset(face)
    lab = G.labels("target", strict=False)
    hits = [f for f, s in lab.items() if s == target]
    if len(hits) != 1:
        raise NotMovable(f"no unique face labelled {fmt_subset(target, G.n)}")
    return G.faces[hits[0]]


def square_move(G: PlabicGraph, face) -> PlabicGraph:
    """Square move at an interior quadrilateral face (given by id or by its
    target label).  High-degree corners are split first and the result is
    normalized."""
    G = normalize(G)
    F = _find_face(G, face)
    if F.is_boundary:
        raise NotMovable("boundary faces cannot be moved")
    verts = [G._head(d) for d in F.darts]
    if len(verts) != 4 or len(set(verts)) != 4:
        raise NotMovable("face is not a quadrilateral")
    cols = [G.colors[v] for v in verts]
    if any(c is None for c in cols) or any(cols[i] == cols[(i + 1) % 4] for i in range(4)):
        raise NotMovable("face vertices do not alternate in colour")
    B = _Builder.of(G)
    darts = list(F.darts)
    for idx, v in enumerate(verts):
        e_in = darts[idx][0]
        e_out = darts[(idx + 1) % 4][0]
        rot = B.rotation[v]
        if len(rot) <= 3:
            continue
        i = rot.index(e_in)
        rot = rot[i:] + rot[:i]  # e_in first; e_out is last
        assert rot[-1] == e_out
        extra = rot[1:-1]
        w = B.vertex(B.colors[v])
        g = B.edge(v, w)
        B.rotation[v] = [e_in, g, e_out]
        for f in extra:
            B.replace_endpoint(f, v, w)
        B.rotation[w] = extra + [g]
    for v in verts:
        B.colors[v] = WHITE if B.colors[v] == BLACK else BLACK
    out = normalize(B.freeze(G.boundary, G.rho, G.n))
    if out.trip_perm != G.trip_perm:  # pragma: no cover - sanity net
        raise PlabicError("square move changed the trip permutation")
    return out


# -- quiver ------------------------------------------------------------------

def dual_quiver(G: PlabicGraph) -> Quiver:
    frozen = {F.id for F in G.faces if F.is_boundary}
    b = Counter()
    for e, (u, v) in enumerate(G.edges):
        cu, cv = G.colors[u], G.colors[v]
        if cu is None or cv is None or cu == cv:
            continue
        f, g = G.face_of[(e, u)], G.face_of[(e, v)]
        if f == g:
            continue
        # dart u->v has f on its left
        src, dst = (f, g) if cv == WHITE else (g, f)
        b[(src, dst)] += 1
        b[(dst, src)] -= 1
    return Quiver([F.id for F in G.faces], frozen, {k: m for k, m in b.items() if m})


def face_labels(G: PlabicGraph, mode: str = "target", strict: bool = True) -> dict:
    return G.labels(mode, strict)


def trips(G: PlabicGraph) -> tuple[Perm, dict]:
    lf = G.left_faces
    return G.trip_perm, {(G.rho(T.start), G.rho(T.end)): lf[T.start] for T in G.trips}


# -- synthesis ---------------------------------------------------------------

def _is_loop(f: AffinePerm, a: int) -> bool:
    return f(a) in (a, a + f.n)


def _swap(f: AffinePerm, i: int, j: int) -> AffinePerm:
    """f composed with the affine transposition exchanging i and j (i < j < i + n)."""
    n = f.n
    w = list(f.window)
    fi, fj = f(i), f(j)
    for pos, val in ((i, fj), (j, fi)):
        q, r = divmod(pos - 1, n)
        w[r] = val - q * n
    return AffinePerm(tuple(w))


def _bridge_sequence(pi: Perm) -> tuple[list[tuple[int, int]], AffinePerm]:
    """Peel bridges (i, j) off lift(pi); j is the next non-loop after i and
    any loops strictly between them stay untouched."""
    f = lift(pi)
    n = pi.n
    bridges = []
    while True:
        live = [a for a in range(1, n + 1) if not _is_loop(f, a)]
        if not live:
            return bridges, f
        options = []
        for t, i in enumerate(live):
            j = live[(t + 1) % len(live)]
            if j <= i:
                j += n
            if f(i) < f(j):
                g = _swap(f, i, j)
                if length(g) != length(f) + 1 or not all(a <= g(a) <= a + n for a in range(1, n + 1)):
                    continue
                black = any(g(a) == a for a in range(1, n + 1))
                options.append((black, i, j, g))
        if not options:  # pragma: no cover - excluded by the bounded-permutation theory
            raise PlabicError(f"no bridge available for {f}")
        options.sort(key=lambda o: (o[0], o[1]))
        _, i, j, f = options[0]
        bridges.append((i, j))


def generate_graph(pi: Perm, simplify: bool = True) -> PlabicGraph:
    """A reduced plabic graph with trip permutation pi, built from bridges."""
    n = pi.n
    bridges, base = _bridge_sequence(pi)
    B = _Builder()
    boundary = [B.vertex(None) for _ in range(n)]
    legs = {}
    for a in range(1, n + 1):
        color = WHITE if base(a) == a + n else BLACK
        L = B.vertex(color)
        e = B.edge(boundary[a - 1], L)
        B.rotation[boundary[a - 1]] = [e]
        B.rotation[L] = [e]
        legs[a] = e
    for i, j in reversed(bridges):
        j = (j - 1) % n + 1
        xs = []
        for a, color in ((i, WHITE), (j, BLACK)):
            b = boundary[a - 1]
            e = legs[a]
            x = B.vertex(color)
            B.replace_endpoint(e, b, x)
            e1 = B.edge(b, x)
            B.rotation[b] = [e1]
            legs[a] = e1
            xs.append((x, e1, e))
        (x, x_up, x_down), (y, y_up, y_down) = xs
        g = B.edge(x, y)
        B.rotation[x] = [x_up, x_down, g]
        B.rotation[y] = [y_up, g, y_down]
    G = B.freeze(boundary, identity(n), n)
    if simplify:
        G = normalize(G)
    if G.trip_perm != pi:  # pragma: no cover - sanity net
        raise PlabicError(f"bridge construction produced {G.trip_perm}, expected {pi}")
    return G


# -- reducedness ---------------------------------------------------------------

def reducedness_report(G: PlabicGraph) -> dict:
    H = normalize(G)
    leaves = {v for v, r in H.rotation.items() if len(r) == 1 and H.colors[v] is not None}
    all_trips = [T.darts for T in H.trips] + list(H.round_trips)
    self_int = False
    for darts in all_trips:
        es = Counter(e for e, _ in darts)
        for e, c in es.items():
            if c > 1 and not any(x in leaves for x in H.edges[e]):
                self_int = True
    where = {}
    for t, darts in enumerate(all_trips):
        for idx, (e, _) in enumerate(darts):
            where.setdefault(e, []).append((t, idx))
    bad = False
    pairs = {}
    for e, occ in where.items():
        ts = {t for t, _ in occ}
        if len(occ) == 2 and len(ts) == 2:
            (t1, i1), (t2, i2) = sorted(occ)
            pairs.setdefault((t1, t2), []).append((i1, i2))
    for key, lst in pairs.items():
        for p in range(len(lst)):
            for q in range(p + 1, len(lst)):
                (a1, a2), (b1, b2) = lst[p], lst[q]
                if (a1 < b1) == (a2 < b2):
                    bad = True
    try:
        expected = dimension(H.trip_perm)
        faces_ok = len(H.faces) == expected
    except Exception:
        faces_ok = False
    rep = {
        "no_round_trips": not H.round_trips,
        "no_self_intersections": not self_int,
        "no_bad_double_crossings": not bad,
        "face_count_matches_dimension": faces_ok,
    }
    rep["reduced"] = all(rep.values())
    return rep


def is_reduced(G: PlabicGraph) -> bool:
    return reducedness_report(G)["reduced"]


# -- examples ------------------------------------------------------------------

_CORE_EDGES = [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1"), ("v2", "v5"), ("v5", "v6"), ("v6", "v3")]
_CORE = {"v1": (-1.5, 0.5), "v2": (0, 1), "v5": (1.5, 1.5), "v4": (-1, -1), "v3": (0.5, -0.5), "v6": (2.5, 0)}


def _example(boundary: dict, legs: list, whites: set) -> PlabicGraph:
    coords = dict(_CORE)
    labels = {}
    for name, (label, xy) in boundary.items():
        coords[name] = xy
        labels[name] = label
    colors = {v: (WHITE if v in whites else BLACK) for v in _CORE}
    return from_drawing(coords, colors, _CORE_EDGES + legs, labels)


def example_graphs() -> dict[str, PlabicGraph]:
    """Four relabelled graphs with trip permutation 465213, keyed by rho."""
    plain = _example(
        {"b2": (2, (-0.4, 3.15)), "b5": (5, (1, -2.5)), "b1": (1, (-3.2, 1.75)),
         "b3": (3, (3, 2.5)), "b6": (6, (-2.4, -2.3)), "b4": (4, (3.5, -1))},
        [("v2", "b2"), ("v1", "b1"), ("v4", "b6"), ("v3", "b5"), ("v6", "b4"), ("v5", "b3")],
        {"v1", "v3", "v5"},
    )
    top = _example(
        {"b5": (5, (1.1, -2.3)), "b1": (1, (-2.5, 2.25)), "b3": (3, (3, 2.5)),
         "b6": (6, (-2, -2)), "b4": (4, (3.5, -1.5)), "b2": (2, (4.5, 0.5))},
        [("v1", "b1"), ("v4", "b6"), ("v3", "b5"), ("v6", "b4"), ("v5", "b3"), ("v6", "b2")],
        {"v1", "v3", "v5"},
    )
    bottom = _example(
        {"b4": (4, (1.2, -2.5)), "b1": (1, (-2.5, 2.25)), "b2": (2, (3, 2.5)),
         "b6": (6, (-2, -2)), "b5": (5, (3.5, -1.75)), "b3": (3, (4.5, 0.5))},
        [("v1", "b1"), ("v4", "b6"), ("v3", "b4"), ("v6", "b5"), ("v5", "b2"), ("v6", "b3")],
        {"v2", "v4", "v6"},
    )
    right = _example(
        {"b3": (3, (-0.25, 3.35)), "b4": (4, (1.1, -2.75)), "b1": (1, (-3.2, 1.75)),
         "b2": (2, (3, 2.5)), "b6": (6, (-2.3, -2.3)), "b5": (5, (3.5, -1.3))},
        [("v2", "b3"), ("v1", "b1"), ("v4", "b6"), ("v3", "b4"), ("v6", "b5"), ("v5", "b2")],
        {"v2", "v4", "v6"},
    )
    return {str(g.rho): g for g in (plain, top, bottom, right)}


# -- DOT export ------------------------------------------------------------------

def graph_to_dot(G: PlabicGraph) -> str:
    lines = ["graph plabic {"]
    for v in sorted(G.colors):
        c = G.colors[v]
        if c is None:
            p = G._position_of[v]
            lines.append(f'  v{v} [shape=plaintext, label="{G.rho(p)}"];')
        else:
            fill = "white" if c == WHITE else "black"
            lines.append(f'  v{v} [shape=circle, style=filled, fillcolor={fill}, label=""];')
    for e, (u, v) in enumerate(G.edges):
        lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines)


def quiver_to_dot(Q: Quiver, names: dict | None = None) -> str:
    names = names or {}
    lines = ["digraph quiver {"]
    for v in Q.nodes:
        shape = "box" if v in Q.frozen else "ellipse"
        lines.append(f'  q{v} [shape={shape}, label="{names.get(v, v)}"];')
    for p, q, m in Q.arrows():
        for _ in range(m):
            lines.append(f"  q{p} -> q{q};")
    lines.append("}")
    return "\n".join(lines)

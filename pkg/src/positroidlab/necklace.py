"""Grassmannlike necklaces, toggles and unit-necklace monomials.

A necklace is stored 0-based internally (``subsets[0]`` is I_1) but every
public accessor takes 1-based cyclic positions.

>>> from positroidlab.perm import Perm
>>> N = forward_necklace(Perm.parse("465213"))
>>> fmt_subsets(N)
'123 234 346 456 256 126'
>>> classify_toggle(N, 3).value
'aligned'
>>> fmt_subsets(toggle(N, 5))
'123 234 346 456 146 126'
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .perm import (
    IncomparableError,
    Perm,
    epsilon,
    identity,
    length,
    leq_R,
    lift,
)

__all__ = [
    "Necklace",
    "ToggleClass",
    "ForbiddenToggle",
    "NecklaceError",
    "fmt_subset",
    "fmt_subsets",
    "parse_subset",
    "forward_necklace",
    "reverse_necklace",
    "grassmannlike",
    "necklace_of",
    "toggle",
    "classify_toggle",
    "cyclic_less",
    "dual",
    "rotate",
    "unit_monomial_path",
    "aligned_path",
]

Subset = frozenset


class NecklaceError(ValueError):
    pass


class ForbiddenToggle(NecklaceError):
    pass


class ToggleClass(str, Enum):
    ALIGNED = "aligned"
    NONCROSSING = "noncrossing-nonaligned"
    CROSSING = "crossing"
    FORBIDDEN = "forbidden"


def fmt_subset(s: Iterable[int], n: int | None = None) -> str:
    items = sorted(s)
    if (n is not None and n <= 9) or (n is None and all(x <= 9 for x in items)):
        return "".join(map(str, items))
    return "{" + ",".join(map(str, items)) + "}"


def parse_subset(text: str | Iterable[int]) -> frozenset[int]:
    if not isinstance(text, str):
        return frozenset(int(x) for x in text)
    s = text.strip().strip("{}")
    if "," in s or " " in s:
        return frozenset(int(t) for t in s.replace(",", " ").split())
    return frozenset(int(c) for c in s)


@dataclass(frozen=True)
class Necklace:
    n: int
    k: int
    subsets: tuple[frozenset, ...]
    removal: Perm
    insertion: Perm

    def __post_init__(self):
        if len(self.subsets) != self.n:
            raise NecklaceError("need exactly n subsets")
        for a in range(1, self.n + 1):
            cur, nxt = self[a], self[a + 1]
            r, i = self.removal(a), self.insertion(a)
            if r not in cur or len(cur) != self.k:
                raise NecklaceError(f"I_{a} does not contain rho({a})={r}")
            if (cur - {r}) | {i} != nxt:
                raise NecklaceError(f"recurrence fails between I_{a} and I_{a + 1}")

    def __getitem__(self, a: int) -> frozenset:
        return self.subsets[(a - 1) % self.n]

    @property
    def trip(self) -> Perm:
        return self.insertion * self.removal.inverse()

    @property
    def underlying(self) -> Perm:
        return self.removal.inverse() * self.insertion

    def __str__(self) -> str:
        return fmt_subsets(self)

    def arrows(self) -> str:
        """Two-line arrow notation: insertions above, removals below."""
        cells = [fmt_subset(s, self.n) for s in self.subsets]
        top, mid, bot = [], [], []
        for a, c in enumerate(cells, start=1):
            w = len(c)
            top.append(" " * w + f" {self.insertion(a):^3} ")
            mid.append(c + " <=> ")
            bot.append(" " * w + f" {self.removal(a):^3} ")
        return "\n".join(["".join(r).rstrip() for r in (top, mid, bot)])

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "subsets": [sorted(s) for s in self.subsets],
            "removal": list(self.removal.images),
            "insertion": list(self.insertion.images),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Necklace":
        rho = Perm(tuple(data["removal"]))
        iota = Perm(tuple(data["insertion"]))
        N = grassmannlike(rho, iota)
        if "subsets" in data and [sorted(s) for s in N.subsets] != [sorted(s) for s in data["subsets"]]:
            raise NecklaceError("subsets disagree with removal/insertion permutations")
        return N


def fmt_subsets(N: Necklace) -> str:
    return " ".join(fmt_subset(s, N.n) for s in N.subsets)


def grassmannlike(rho: Perm, iota: Perm) -> Necklace:
    """Necklace with removal rho and insertion iota."""
    if rho.n != iota.n:
        raise NecklaceError("size mismatch")
    n = rho.n
    rinv, iinv = rho.inverse(), iota.inverse()
    first = frozenset(a for a in range(1, n + 1) if rinv(a) <= iinv(a))
    subs = [first]
    for a in range(1, n):
        cur = subs[-1]
        if rho(a) not in cur:
            raise NecklaceError(f"rho({a}) not in I_{a}")
        subs.append((cur - {rho(a)}) | {iota(a)})
    return Necklace(n, len(first), tuple(subs), rho, iota)


def necklace_of(iota: Perm, pi: Perm) -> Necklace:
    """The necklace N_{., iota, pi}: insertion iota, trip pi."""
    return grassmannlike(pi.inverse() * iota, iota)


def forward_necklace(pi: Perm) -> Necklace:
    return grassmannlike(identity(pi.n), pi)


def reverse_necklace(pi: Perm, shift: int = 0) -> Necklace:
    """Rotation by ``shift`` of the reverse necklace (insertion id, removal pi^-1)."""
    n = pi.n
    eps = epsilon(shift % n, n)
    return grassmannlike(pi.inverse() * eps, eps)


def rotate(N: Necklace, r: int) -> Necklace:
    """N[r] = (I_{r+1}, ..., I_n, I_1, ..., I_r)."""
    eps = epsilon(r % N.n, N.n)
    return grassmannlike(N.removal * eps, N.insertion * eps)


def dual(N: Necklace) -> Necklace:
    return grassmannlike(N.insertion.inverse(), N.removal.inverse())


def cyclic_less(x: int, y: int, base: int, n: int) -> bool:
    """x <_base y in the cyclic order starting at base."""
    return (x - base) % n < (y - base) % n


def _between(x: int, lo: int, hi: int, n: int) -> bool:
    """x strictly inside the cyclic open interval (lo, hi)."""
    return 0 < (x - lo) % n < (hi - lo) % n


def _chords_aligned(w: int, x: int, y: int, z: int, n: int) -> bool:
    lt = lambda p, q: cyclic_less(p, q, w, n)
    if w == x and y == z:
        return False
    if w == x:
        return lt(y, z)
    if y == z:
        # by the symmetry of the definition, y->y versus w->x behaves like w <_w x <_w y
        return lt(x, y)
    return (lt(y, z) and lt(z, x)) or (lt(x, z) and lt(z, y))


def _chords_cross(w: int, x: int, y: int, z: int, n: int) -> bool:
    if w == x or y == z:
        return False
    if len({w, x, y, z}) < 4:
        return True
    return _between(y, w, x, n) != _between(z, w, x, n)


def classify_toggle(N: Necklace, a: int) -> ToggleClass:
    n = N.n
    rp, ip = N.removal(a - 1 if a > 1 else n), N.insertion(a - 1 if a > 1 else n)
    ra, ia = N.removal(a), N.insertion(a)
    if rp == ia or ra == ip:
        return ToggleClass.FORBIDDEN
    if _chords_cross(rp, ip, ra, ia, n):
        return ToggleClass.CROSSING
    if _chords_aligned(rp, ip, ra, ia, n):
        return ToggleClass.ALIGNED
    return ToggleClass.NONCROSSING


def toggle(N: Necklace, a: int) -> Necklace:
    n = N.n
    prev = a - 1 if a > 1 else n
    if N.removal(prev) == N.insertion(a):
        raise ForbiddenToggle(f"forbidden toggle at {a}: rho_{prev} = iota_{a}")
    if N.removal(a) == N.insertion(prev):
        raise ForbiddenToggle(f"forbidden toggle at {a}: rho_{a} = iota_{prev}")
    out = grassmannlike(N.removal.right_simple(prev % n), N.insertion.right_simple(prev % n))
    expected = (N[prev] - {N.removal(a)}) | {N.insertion(a)}
    assert out[a] == expected
    return out


def aligned_path(iota: Perm, pi: Perm) -> list[int]:
    """Toggle positions taking the forward necklace of pi to N_{., iota, pi}.

    Walks down a saturated chain of the right weak order from lift(pi) to
    lift(iota); every step is an aligned toggle."""
    i, g = lift(iota), lift(pi)
    if not leq_R(i, g):
        raise IncomparableError(f"{iota} is not below {pi} in circular weak order")
    steps = []
    lg = length(g)
    while g != i:
        for a in range(g.n):
            if g(a) > g(a + 1):
                h = g.right_simple(a)
                if length(h) + length(h.inverse() * g) == lg and leq_R(i, h):
                    steps.append(a + 1)
                    g, lg = h, lg - 1
                    break
        else:  # pragma: no cover - guaranteed by the weak order structure
            raise RuntimeError("no descent leads towards iota")
    return steps


def _add(x: dict, y: dict, sign: int = 1) -> dict:
    out = Counter(x)
    for key, v in y.items():
        out[key] += sign * v
    return {key: v for key, v in out.items() if v}


def unit_monomial_path(pi: Perm, iota: Perm, steps: list[int] | None = None) -> tuple[Necklace, list[dict]]:
    """Laurent monomials, over the forward necklace of pi, for every member
    of N_{., iota, pi}.

    Returns the necklace and a list (indexed by position - 1) of exponent
    dictionaries ``{subset: exponent}``.
    """
    if steps is None:
        steps = aligned_path(iota, pi)
    N = forward_necklace(pi)
    expo = [{s: 1} for s in N.subsets]
    n = pi.n
    for a in steps:
        cls = classify_toggle(N, a)
        if cls not in (ToggleClass.ALIGNED, ToggleClass.NONCROSSING):
            raise NecklaceError(f"toggle at {a} is {cls.value}")
        p, q = (a - 2) % n, a % n
        expo[a - 1] = _add(_add(expo[p], expo[q]), expo[a - 1], -1)
        N = toggle(N, a)
    if N.insertion != iota:
        raise NecklaceError("path does not end at iota")
    return N, expo


def grading_ok(target: frozenset, expo: dict, n: int) -> bool:
    """Sum of c_I 1_I equals 1_J."""
    vec = [0] * (n + 1)
    for s, c in expo.items():
        for x in s:
            vec[x] += c
    return all(vec[x] == (1 if x in target else 0) for x in range(1, n + 1))


__all__.append("grading_ok")

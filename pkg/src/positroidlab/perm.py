"""Finite permutations, bounded affine permutations and weak orders.

Composition is functional throughout: ``(p * q)(x) == p(q(x))``.  Right
multiplication by a simple transposition therefore swaps two *positions* of
the one-line (or window) notation.

>>> pi = Perm.parse("465213")
>>> type_of(pi)
(3, 6)
>>> lift(pi).window
(4, 6, 5, 8, 7, 9)
>>> length(lift(pi))
2
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Perm",
    "AffinePerm",
    "BoundednessCertificate",
    "IncomparableError",
    "identity",
    "simple",
    "epsilon",
    "e_k",
    "type_of",
    "lift",
    "reduce",
    "length",
    "associated_reflections",
    "is_length_additive",
    "leq_R",
    "leq_circ",
    "lower_ideal",
    "boundedness",
    "perms_of_type",
]


class IncomparableError(ValueError):
    """Raised when two elements live in different cosets / types."""


@dataclass(frozen=True)
class Perm:
    """A permutation of [n] in one-line notation."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of [n]: {imgs}")
        object.__setattr__(self, "images", imgs)

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def parse(cls, text: str | Sequence[int]) -> "Perm":
        """Digit strings are accepted only when n <= 9."""
        if not isinstance(text, str):
            return cls(tuple(text))
        s = text.strip()
        if "," in s or " " in s:
            return cls(tuple(int(t) for t in s.replace(",", " ").split()))
        if len(s) > 9:
            raise ValueError("digit-string notation is only allowed for n <= 9")
        return cls(tuple(int(c) for c in s))

    def __call__(self, a: int) -> int:
        return self.images[(a - 1) % self.n]

    def __mul__(self, other: "Perm") -> "Perm":
        if other.n != self.n:
            raise ValueError("size mismatch")
        return Perm(tuple(self(other(a)) for a in range(1, self.n + 1)))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for a, b in enumerate(self.images, start=1):
            inv[b - 1] = a
        return Perm(tuple(inv))

    def apply(self, subset: Iterable[int]) -> frozenset[int]:
        return frozenset(self(a) for a in subset)

    def right_simple(self, a: int) -> "Perm":
        """self * s_a; s_0 swaps positions n and 1."""
        imgs = list(self.images)
        i, j = (self.n - 1, 0) if a % self.n == 0 else (a - 1, a)
        imgs[i], imgs[j] = imgs[j], imgs[i]
        return Perm(tuple(imgs))

    def fixed_points(self) -> list[int]:
        return [a for a in range(1, self.n + 1) if self(a) == a]

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.images))
        return " ".join(map(str, self.images))

    def to_json(self) -> dict:
        return {"n": self.n, "images": list(self.images)}

    @classmethod
    def from_json(cls, data: dict) -> "Perm":
        p = cls(tuple(data["images"]))
        if "n" in data and data["n"] != p.n:
            raise ValueError("n does not match images")
        return p


@dataclass(frozen=True)
class AffinePerm:
    """An n-periodic bijection of Z, stored by its window [f(1), ..., f(n)]."""

    window: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.window)
        n = len(w)
        if n == 0 or len({x % n for x in w}) != n:
            raise ValueError(f"window values must be distinct mod n: {w}")
        object.__setattr__(self, "window", w)

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, x: int) -> int:
        q, r = divmod(x - 1, self.n)
        return self.window[r] + q * self.n

    def __mul__(self, other: "AffinePerm") -> "AffinePerm":
        if other.n != self.n:
            raise ValueError("size mismatch")
        return AffinePerm(tuple(self(other(a)) for a in range(1, self.n + 1)))

    def inverse(self) -> "AffinePerm":
        n = self.n
        inv = [0] * n
        for a, v in enumerate(self.window, start=1):
            q, r = divmod(v - 1, n)
            inv[r] = a - q * n
        return AffinePerm(tuple(inv))

    def av(self) -> int:
        total = sum(v - a for a, v in enumerate(self.window, start=1))
        if total % self.n:
            raise ValueError("average is not an integer")
        return total // self.n

    def right_simple(self, a: int) -> "AffinePerm":
        """self * s_a for a in 0..n-1 (s_0 swaps positions 0 and 1)."""
        n = self.n
        w = list(self.window)
        a %= n
        if a == 0:
            w[0], w[n - 1] = self.window[n - 1] - n, self.window[0] + n
        else:
            w[a - 1], w[a] = w[a], w[a - 1]
        return AffinePerm(tuple(w))

    def is_bounded(self) -> bool:
        return all(a < v <= a + self.n for a, v in enumerate(self.window, start=1))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.window)) + "]"

    def to_json(self) -> dict:
        return {"n": self.n, "window": list(self.window)}

    @classmethod
    def from_json(cls, data: dict) -> "AffinePerm":
        f = cls(tuple(data["window"]))
        if "n" in data and data["n"] != f.n:
            raise ValueError("n does not match window")
        return f


@dataclass(frozen=True)
class BoundednessCertificate:
    k: int
    bounded: bool


def identity(n: int) -> Perm:
    return Perm(tuple(range(1, n + 1)))


def simple(a: int, n: int) -> Perm:
    return identity(n).right_simple(a)


def epsilon(r: int, n: int) -> Perm:
    """The rotation a -> a + r (mod n); epsilon(k, n) is k+1 ... n 1 ... k."""
    return Perm(tuple((a + r - 1) % n + 1 for a in range(1, n + 1)))


def e_k(k: int, n: int) -> AffinePerm:
    return AffinePerm(tuple(a + k for a in range(1, n + 1)))


def type_of(pi: Perm) -> tuple[int, int]:
    inv = pi.inverse()
    k = sum(1 for a in range(1, pi.n + 1) if a <= inv(a))
    return k, pi.n


def lift(pi: Perm) -> AffinePerm:
    """Bounded lift; fixed points go to a + n (white fixed points)."""
    n = pi.n
    return AffinePerm(tuple(v if v > a else v + n for a, v in enumerate(pi.images, start=1)))


def reduce(f: AffinePerm) -> Perm:
    n = f.n
    return Perm(tuple((v - 1) % n + 1 for v in f.window))


def boundedness(f: AffinePerm) -> BoundednessCertificate:
    return BoundednessCertificate(f.av(), f.is_bounded())


def _horizon(f: AffinePerm) -> int:
    n = f.n
    span = max(f.window) - min(f.window)
    return n * (-(-span // n) + 1)


def _inversions(f: AffinePerm) -> Iterator[tuple[int, int]]:
    n = f.n
    h = _horizon(f)
    for i in range(1, n + 1):
        fi = f(i)
        for j in range(i + 1, i + h + 1):
            if fi > f(j):
                yield i, j


def length(f: AffinePerm) -> int:
    return sum(1 for _ in _inversions(f))


def _canonical(a: int, b: int, n: int) -> tuple[int, int]:
    if a > b:
        a, b = b, a
    shift = (a - 1) // n * n
    return a - shift, b - shift


def associated_reflections(f: AffinePerm, side: str = "right") -> set[tuple[int, int]]:
    """Canonical pairs (a, b), a in [1, n], a < b, for the reflections t_ab
    with l(f t) < l(f) (right) or l(t f) < l(f) (left)."""
    if side == "left":
        f = f.inverse()
    elif side != "right":
        raise ValueError("side must be 'left' or 'right'")
    return {_canonical(i, j, f.n) for i, j in _inversions(f)}


def is_length_additive(u: AffinePerm, v: AffinePerm) -> bool:
    return length(u * v) == length(u) + length(v)


def _check_coset(u: AffinePerm, f: AffinePerm) -> None:
    if u.n != f.n:
        raise IncomparableError("size mismatch")
    if u.av() != f.av():
        raise IncomparableError("incomparable coset: av(u) != av(f)")


def leq_R(u: AffinePerm, f: AffinePerm) -> bool:
    _check_coset(u, f)
    return length(f) == length(u) + length(u.inverse() * f)


def leq_circ(iota: Perm, pi: Perm) -> bool:
    if type_of(iota) != type_of(pi):
        raise IncomparableError("permutations have different types")
    return leq_R(lift(iota), lift(pi))


def lower_ideal(f: AffinePerm) -> set[AffinePerm]:
    """All u <=_R f, by downward search through length-decreasing s_a."""
    seen = {f}
    queue = deque([(f, length(f))])
    while queue:
        g, lg = queue.popleft()
        if lg == 0:
            continue
        for a in range(g.n):
            h = g.right_simple(a)
            # g(a) > g(a+1) is exactly the condition for a descent at a
            if g(a) > g(a + 1) and h not in seen:
                seen.add(h)
                queue.append((h, lg - 1))
    return seen


def perms_of_type(k: int, n: int) -> Iterator[Perm]:
    """All permutations of [n] of type (k, n), lexicographic order."""
    for imgs in permutations(range(1, n + 1)):
        p = Perm(imgs)
        if type_of(p)[0] == k:
            yield p

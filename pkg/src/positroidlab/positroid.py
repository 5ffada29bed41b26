"""Positroids from Grassmann necklaces (Oh's theorem)."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .necklace import Necklace, cyclic_less, forward_necklace, reverse_necklace
from .perm import Perm, length, lift, type_of

__all__ = [
    "Positroid",
    "gale_leq",
    "contains",
    "enumerate_bases",
    "dimension",
    "positroid_of",
    "necklace_exchange_nonbasis",
    "all_subsets",
]


def all_subsets(n: int, k: int) -> list[frozenset[int]]:
    return [frozenset(c) for c in combinations(range(1, n + 1), k)]


def _sorted_from(S: Iterable[int], i: int, n: int) -> list[int]:
    return sorted(S, key=lambda x: (x - i) % n)


def gale_leq(i: int, S: Iterable[int], T: Iterable[int], n: int) -> bool:
    """S <=_i T in the Gale order starting at i."""
    s, t = _sorted_from(S, i, n), _sorted_from(T, i, n)
    if len(s) != len(t):
        raise ValueError("Gale order compares subsets of equal size")
    return all((a - i) % n <= (b - i) % n for a, b in zip(s, t))


@dataclass(frozen=True)
class Positroid:
    necklace: Necklace
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def n(self) -> int:
        return self.necklace.n

    @property
    def k(self) -> int:
        return self.necklace.k

    @property
    def pi(self) -> Perm:
        return self.necklace.trip

    def __contains__(self, S) -> bool:
        return contains(self, S)

    @property
    def bases(self) -> frozenset[frozenset[int]]:
        # idempotent fill: concurrent first access computes the same value
        if "bases" not in self._cache:
            self._cache["bases"] = frozenset(S for S in all_subsets(self.n, self.k) if contains(self, S))
        return self._cache["bases"]

    def to_json(self, with_bases: bool = False) -> dict:
        out = {"necklace": self.necklace.to_json(), "pi": list(self.pi.images)}
        if with_bases:
            out["bases"] = sorted(sorted(S) for S in self.bases)
        return out


def positroid_of(pi: Perm) -> Positroid:
    return Positroid(forward_necklace(pi))


def contains(M: Positroid, S) -> bool:
    S = frozenset(S)
    if len(S) != M.k:
        return False
    N = M.necklace
    return all(gale_leq(a, N[a], S, M.n) for a in range(1, M.n + 1))


def contains_reverse(pi: Perm, S) -> bool:
    """Membership via S <=_a of the reverse necklace."""
    R = reverse_necklace(pi)
    S = frozenset(S)
    return len(S) == R.k and all(gale_leq(a, S, R[a], pi.n) for a in range(1, pi.n + 1))


__all__.append("contains_reverse")


def enumerate_bases(M: Positroid) -> frozenset[frozenset[int]]:
    return M.bases


def dimension(pi: Perm) -> int:
    k, n = type_of(pi)
    return k * (n - k) + 1 - length(lift(pi))


def necklace_exchange_nonbasis(N: Necklace, z: int, y: int, M: Positroid | None = None):
    """Check the exchange lemma at (z, y) for a necklace reached from the
    forward necklace by noncrossing toggles (the caller attests this).

    Returns ``(applies, candidate, in_positroid)``.  Whenever ``applies`` is
    true the lemma predicts ``in_positroid`` is false.
    """
    pi = N.trip
    n = N.n
    if M is None:
        M = positroid_of(pi)
    I = N[N.removal.inverse()(z)]
    pz = pi(z)
    if y not in I and cyclic_less(y, pz, z, n) and y != z:
        cand = (I - {z}) | {y}
        return True, cand, contains(M, cand)
    if y in I and cyclic_less(pz, y, z, n):
        cand = (I - {y}) | {pz}
        return True, cand, contains(M, cand)
    return False, None, None

"""Finitely generated submonoids of (N, +) with exact, total membership.

Membership is tabulated by a coin-problem DP up to the conductor; past the
conductor a natural number belongs iff the gcd of the generators divides it,
so the membership query is total.  The conductor here is the least ``c >= 0``
such that every ``n >= c`` divisible by the gcd is a member (for gcd 1 this is
the Frobenius number plus one).

All bounds the DP relies on are stored as fields, so tests can recompute them
independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import UsageError


@dataclass(frozen=True)
class AdditiveMonoid:
    """A submonoid of the naturals under addition, given by generators.

    ``table[n]`` holds membership for ``0 <= n <= conductor``; beyond that,
    membership is ``gcd | n``.  The empty generating set gives the trivial
    monoid {0} (gcd 0, conductor 0).
    """

    generators: tuple[int, ...]
    gcd: int
    conductor: int
    table: tuple[bool, ...]

    @classmethod
    def from_generators(cls, generators: Iterable[int]) -> "AdditiveMonoid":
        gens = sorted(set(generators))
        for g in gens:
            if not isinstance(g, int) or isinstance(g, bool) or g < 1:
                raise UsageError(f"additive generators must be integers >= 1, got {g!r}")
        if not gens:
            return cls((), 0, 0, (True,))
        d = math.gcd(*gens)
        lo, hi = gens[0], gens[-1]
        # Sylvester-style bound on the scaled gcd-1 problem: conductor <= d*(lo/d)*(hi/d) + hi
        limit = (lo // d) * (hi // d) * d + hi
        reach = bytearray(limit + 1)
        reach[0] = 1
        for n in range(1, limit + 1):
            for g in gens:
                if g > n:
                    break
                if reach[n - g]:
                    reach[n] = 1
                    break
        last_gap = -1
        for n in range(0, limit + 1, d):
            if not reach[n]:
                last_gap = n
        conductor = 0 if last_gap < 0 else last_gap + d
        table = tuple(bool(reach[n]) for n in range(conductor + 1))
        return cls(tuple(gens), d, conductor, table)

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        if n <= self.conductor:
            return self.table[n]
        return self.gcd != 0 and n % self.gcd == 0

    def __contains__(self, n: int) -> bool:
        return self.contains(n)

    def members_upto(self, bound: int) -> list[int]:
        """All members n with 0 <= n <= bound."""
        return [n for n in range(bound + 1) if self.contains(n)]

    def gaps(self) -> tuple[int, ...]:
        """Non-members below the conductor (the finite complement for gcd 1)."""
        return tuple(n for n in range(self.conductor) if not self.table[n])

    def minimal_generators(self) -> tuple[int, ...]:
        """The unique minimal generating set: nonzero members that are not a
        sum of two nonzero members.  Every member beyond conductor + min(gens)
        is reducible, so the search range is finite."""
        if not self.generators:
            return ()
        bound = self.conductor + self.generators[0]
        members = [n for n in range(1, bound + 1) if self.contains(n)]
        member_set = set(members)
        minimal = []
        for n in members:
            if not any(a in member_set and (n - a) in member_set
                       for a in range(1, n // 2 + 1)):
                minimal.append(n)
        return tuple(minimal)

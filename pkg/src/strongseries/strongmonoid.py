"""Strongly closed exponent monoids.

A set T of positive integers is *strongly closed* when 1 is a member and
s + t - 1 is a member whenever s and t are.  These are exactly the exponent
supports closed under series composition over every coefficient ring, and they
correspond bijectively to additive submonoids of the naturals through the
shift S = T - 1.  A :class:`StrongMonoid` stores that additive shadow, which
makes membership total and the monoid finitely generated.

The certification functions accept an explicit membership description (a
:class:`StrongMonoid`, a container of integers, or a predicate) together with
an explicit bound, and return a :class:`Verdict` whose witness, if any, can be
re-checked independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Union

from .addmonoid import AdditiveMonoid
from .errors import UsageError


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bounded certification; ``witness`` exhibits any violation."""

    holds: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class StrongMonoid:
    """A strongly closed submonoid of the positive integers.

    Stored through its additive shadow (the members shifted down by one); the
    generators it was built from, if any, are kept for display purposes.
    """

    shadow: AdditiveMonoid
    origin_generators: tuple[int, ...] | None = None

    def contains(self, t: int) -> bool:
        return t >= 1 and self.shadow.contains(t - 1)

    def __contains__(self, t: int) -> bool:
        return self.contains(t)

    def members_upto(self, bound: int) -> list[int]:
        """All members t with 1 <= t <= bound."""
        return [s + 1 for s in self.shadow.members_upto(bound - 1)] if bound >= 1 else []

    def minimal_generators(self) -> tuple[int, ...]:
        """Minimal generating set as a strongly closed monoid (shadow's, shifted up)."""
        return tuple(y + 1 for y in self.shadow.minimal_generators())


def strong_closure(generators: Iterable[int]) -> StrongMonoid:
    """Least strongly closed superset of the given positive integers and 1.

    Membership is 1 + (additive closure of the generators shifted down by 1):
    every member is 1 plus a natural combination of (g - 1) over the
    generators.
    """
    gens = sorted(set(generators))
    for g in gens:
        if not isinstance(g, int) or isinstance(g, bool) or g < 1:
            raise UsageError(f"exponent generators must be integers >= 1, got {g!r}")
    shadow = AdditiveMonoid.from_generators(g - 1 for g in gens if g > 1)
    return StrongMonoid(shadow, tuple(gens))


def from_additive(shadow: AdditiveMonoid) -> StrongMonoid:
    """The strongly closed monoid 1 + S for an additive submonoid S."""
    return StrongMonoid(shadow)


def to_additive(monoid: StrongMonoid) -> AdditiveMonoid:
    """The additive shadow S = T - 1."""
    return monoid.shadow


Members = Union[StrongMonoid, Callable[[int], bool], Iterable[int]]


def _member_set(members: Members, bound: int) -> set[int]:
    """Normalize a membership description to the explicit set on 1..bound."""
    if isinstance(members, StrongMonoid):
        return set(members.members_upto(bound))
    if callable(members):
        return {t for t in range(1, bound + 1) if members(t)}
    return {t for t in members if 1 <= t <= bound}


def is_strongly_closed(members: Members, bound: int) -> Verdict:
    """Bounded check of the pair condition: 1 present, s + t - 1 present.

    The witness is the lexicographically least violating pair (s, t) with
    s + t - 1 <= bound, or (1,) when 1 itself is missing.
    """
    if bound < 1:
        raise UsageError(f"bound must be >= 1, got {bound}")
    present = _member_set(members, bound)
    if 1 not in present:
        return Verdict(False, (1,))
    ordered = sorted(present)
    for s in ordered:
        for t in ordered:
            v = s + t - 1
            if v > bound:
                break
            if v not in present:
                return Verdict(False, (s, t))
    return Verdict(True)


def _partitions_desc(s: int, max_part: int | None = None):
    """Partitions of s as nonincreasing tuples, largest first part first."""
    if s == 0:
        yield ()
        return
    if max_part is None or max_part > s:
        max_part = s
    for first in range(max_part, 0, -1):
        for rest in _partitions_desc(s - first, first):
            yield (first,) + rest


def satisfies_partition_condition(members: Members, bound: int, s_max: int) -> Verdict:
    """Bounded check of the weighted-partition condition.

    For every member s <= s_max, every partition s = s_1 + ... + s_k into
    positive parts, and every tuple of members (t_1, ..., t_k) with weighted
    sum s_1*t_1 + ... + s_k*t_k <= bound, the weighted sum must again be a
    member.  Tuples attached to equal parts are taken nondecreasing, since
    permuting them leaves the sum unchanged.

    The witness is the first violation (s, parts, ts, total) in the documented
    enumeration order: s ascending, partitions largest-part-first, member
    tuples ascending; or (1,) when 1 is missing.
    """
    if bound < 1:
        raise UsageError(f"bound must be >= 1, got {bound}")
    if s_max > bound:
        raise UsageError(f"s_max ({s_max}) must not exceed bound ({bound})")
    present = _member_set(members, bound)
    if 1 not in present:
        return Verdict(False, (1,))
    ordered = sorted(present)

    def search(parts: tuple[int, ...]):
        k = len(parts)
        min_tail = [0] * (k + 1)
        for i in range(k - 1, -1, -1):
            min_tail[i] = min_tail[i + 1] + parts[i]
        ts: list[int] = []

        def dfs(i: int, partial: int, lo_index: int):
            if i == k:
                if partial not in present:
                    return tuple(ts), partial
                return None
            start = lo_index if i > 0 and parts[i] == parts[i - 1] else 0
            for idx in range(start, len(ordered)):
                t = ordered[idx]
                total = partial + parts[i] * t
                if total + min_tail[i + 1] > bound:
                    break
                ts.append(t)
                hit = dfs(i + 1, total, idx)
                ts.pop()
                if hit is not None:
                    return hit
            return None

        return dfs(0, 0, 0)

    for s in ordered:
        if s > s_max:
            break
        for parts in _partitions_desc(s):
            hit = search(parts)
            if hit is not None:
                ts, total = hit
                return Verdict(False, (s, parts, ts, total))
    return Verdict(True)


def is_mult_closed(members: Members, bound: int) -> Verdict:
    """Bounded check that products of members (up to the bound) stay members.

    Strong closure implies this (s*t = s + s*(t-1) by repeated application of
    the pair rule), but not conversely.  Witness: least violating (s, t).
    """
    if bound < 1:
        raise UsageError(f"bound must be >= 1, got {bound}")
    present = _member_set(members, bound)
    ordered = sorted(present)
    for s in ordered:
        for t in ordered:
            v = s * t
            if v > bound:
                break
            if v not in present:
                return Verdict(False, (s, t))
    return Verdict(True)


@dataclass(frozen=True)
class PrimeWitnesses:
    """Primes found in the progression base + k*(base-1), certifying that the
    closure of {base} has no finite multiplicative generating set."""

    base: int
    primes: tuple[int, ...]
    ks: tuple[int, ...]
    complete: bool


def is_prime(n: int) -> bool:
    """Deterministic trial division up to sqrt(n); adequate at desk scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for p in range(3, math.isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


def multiplicative_prime_witnesses(a: int, count: int, k_max: int) -> PrimeWitnesses:
    """First ``count`` primes of the form a + k*(a-1) with 0 <= k <= k_max.

    Each returned prime is certified by trial division and lies in the strong
    closure of {a}.  ``complete`` is False when fewer than ``count`` primes
    exist below the scan limit (existence is guaranteed for unbounded k, but
    no bound on k is known a priori).
    """
    if not isinstance(a, int) or isinstance(a, bool) or a < 2:
        raise UsageError(f"base must be an integer >= 2, got {a!r}")
    if count < 1 or k_max < 0:
        raise UsageError("count must be >= 1 and k_max >= 0")
    step = a - 1
    primes: list[int] = []
    ks: list[int] = []
    for k in range(k_max + 1):
        p = a + k * step
        if is_prime(p):
            primes.append(p)
            ks.append(k)
            if len(primes) == count:
                break
    return PrimeWitnesses(a, tuple(primes), tuple(ks), len(primes) == count)

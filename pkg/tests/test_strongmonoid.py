import itertools

import pytest
import sympy

from strongseries import (
    AdditiveMonoid,
    UsageError,
    from_additive,
    is_mult_closed,
    is_strongly_closed,
    multiplicative_prime_witnesses,
    satisfies_partition_condition,
    strong_closure,
    to_additive,
)
from strongseries.rng import SplitMix64
from strongseries.verify import exhaustive_generator_sets, random_exponent_set


def pair_rule_closure(generators, cap):
    """Independent oracle: fixed point of (s, t) -> s + t - 1 from gens + {1}."""
    members = set(g for g in generators if 1 <= g <= cap) | {1}
    changed = True
    while changed:
        changed = False
        for s, t in itertools.product(sorted(members), repeat=2):
            v = s + t - 1
            if v <= cap and v not in members:
                members.add(v)
                changed = True
    return sorted(members)


def partition_rule_closure(generators, cap):
    """Second independent oracle: fixed point of the weighted-partition rule.

    A pass adds, for every member base s, every weighted sum
    s_1*t_1 + ... + s_k*t_k <= cap over partitions s = s_1 + ... + s_k and
    member tuples.  Grouping parts by the member they multiply rewrites the
    sum as s + sum of c_t*(t-1) with nonnegative weights c_t totalling at
    most s (1 is always a member, so slack weight can sit on it).  One pass
    is therefore a bounded-count coin problem over the shifted members,
    answered exactly by a fewest-coins DP.
    """
    members = set(g for g in generators if 1 <= g <= cap) | {1}
    changed = True
    while changed:
        changed = False
        coins = sorted(t - 1 for t in members if t >= 2)
        fewest = [0] + [cap + 1] * cap
        for v in range(1, cap + 1):
            best = cap + 1
            for c in coins:
                if c > v:
                    break
                if fewest[v - c] + 1 < best:
                    best = fewest[v - c] + 1
            fewest[v] = best
        for s in sorted(members):
            for v in range(cap - s + 1):
                if fewest[v] <= s and (s + v) not in members:
                    members.add(s + v)
                    changed = True
    return sorted(members)


def test_strong_closure_examples():
    odds = strong_closure([3])
    assert odds.members_upto(15) == [1, 3, 5, 7, 9, 11, 13, 15]
    everything = strong_closure([2])
    assert everything.members_upto(12) == list(range(1, 13))
    mixed = strong_closure([4, 6])
    assert mixed.members_upto(14) == [1, 4, 6, 7, 9, 10, 11, 12, 13, 14]
    shifted = AdditiveMonoid.from_generators([3, 5])
    assert mixed.members_upto(100) == [1 + s for s in shifted.members_upto(99)]
    assert strong_closure([]).members_upto(10) == [1]
    assert strong_closure([1]).members_upto(10) == [1]


def test_strong_closure_matches_pair_rule_fixed_point_exhaustively():
    for gens in exhaustive_generator_sets():
        monoid = strong_closure(gens)
        assert monoid.members_upto(100) == pair_rule_closure(gens, 100), gens


def test_strong_closure_matches_partition_rule_fixed_point():
    for gens in exhaustive_generator_sets():
        monoid = strong_closure(gens)
        assert monoid.members_upto(60) == partition_rule_closure(gens, 60), gens


def test_pair_condition_examples():
    evens_plus_one = {1} | set(range(2, 11, 2))
    verdict = is_strongly_closed(evens_plus_one, 10)
    assert not verdict.holds and verdict.witness == (2, 2)
    tail = {1} | set(range(5, 51))
    assert is_strongly_closed(tail, 50).holds
    progression = {1 + 3 * k for k in range(17)}
    assert is_strongly_closed(progression, 50).holds
    assert not is_strongly_closed({2, 3}, 10).holds
    assert is_strongly_closed({2, 3}, 10).witness == (1,)


def test_partition_condition_examples():
    odds = set(range(1, 41, 2))
    assert satisfies_partition_condition(odds, 40, 7).holds
    evens_plus_one = {1} | set(range(2, 13, 2))
    verdict = satisfies_partition_condition(evens_plus_one, 12, 4)
    assert not verdict.holds
    assert verdict.witness == (2, (1, 1), (1, 2), 3)
    assert satisfies_partition_condition({1}, 30, 6).holds


def test_pair_and_partition_conditions_agree():
    for gens in exhaustive_generator_sets():
        members = frozenset(strong_closure(gens).members_upto(60))
        assert is_strongly_closed(members, 60).holds
        assert satisfies_partition_condition(members, 60, 6).holds
    rng = SplitMix64(96)
    for _ in range(50):
        members = random_exponent_set(rng, 60)
        pair = is_strongly_closed(members, 60)
        part = satisfies_partition_condition(members, 60, 6)
        assert pair.holds == part.holds, sorted(members)


def test_partition_witness_reverifies():
    rng = SplitMix64(1234)
    for _ in range(20):
        members = random_exponent_set(rng, 40)
        verdict = satisfies_partition_condition(members, 40, 6)
        if verdict.holds:
            continue
        s, parts, ts, total = verdict.witness
        assert s in members and sum(parts) == s
        assert all(t in members for t in ts)
        assert sum(p * t for p, t in zip(parts, ts)) == total
        assert total <= 40 and total not in members


def test_bijection_roundtrip():
    odds = strong_closure([3])
    assert to_additive(odds).members_upto(20) == list(range(0, 21, 2))
    assert from_additive(AdditiveMonoid.from_generators([])).members_upto(5) == [1]
    rng = SplitMix64(4096)
    for _ in range(100):
        size = rng.randint(0, 4)
        gens = sorted({rng.randint(1, 15) for _ in range(size)})
        shadow = AdditiveMonoid.from_generators(gens)
        monoid = from_additive(shadow)
        back = to_additive(monoid)
        assert back.members_upto(200) == shadow.members_upto(200)
        assert monoid.members_upto(200) == [1 + s for s in shadow.members_upto(199)]


def test_mult_closed_examples():
    odds = strong_closure([3])
    assert is_mult_closed(odds, 200).holds
    assert is_mult_closed(strong_closure([4, 6]), 200).holds
    counterexample = {1} | set(range(2, 21, 2))
    assert is_mult_closed(counterexample, 20).holds
    assert not is_strongly_closed(counterexample, 20).holds
    verdict = is_mult_closed({1, 2, 3}, 10)
    assert not verdict.holds and verdict.witness == (2, 2)


def test_strongly_closed_implies_mult_closed():
    for gens in exhaustive_generator_sets():
        assert is_mult_closed(strong_closure(gens), 400).holds, gens


def test_prime_witness_examples():
    a3 = multiplicative_prime_witnesses(3, 4, 1000)
    assert a3.primes == (3, 5, 7, 11) and a3.ks == (0, 1, 2, 4)
    a4 = multiplicative_prime_witnesses(4, 3, 1000)
    assert a4.primes == (7, 13, 19) and a4.ks == (1, 3, 5)
    a2 = multiplicative_prime_witnesses(2, 3, 1000)
    assert a2.primes == (2, 3, 5) and a2.complete


def test_prime_witnesses_certified_and_supported():
    for a in range(2, 16):
        result = multiplicative_prime_witnesses(a, 5, 100000)
        assert result.complete
        monoid = strong_closure([a])
        for p, k in zip(result.primes, result.ks):
            assert sympy.isprime(p)
            assert p == a + k * (a - 1)
            assert a == 2 or p % (a - 1) == 1 % (a - 1)
            assert p in monoid


def test_prime_witnesses_partial_result():
    result = multiplicative_prime_witnesses(3, 100, 3)
    assert result.primes == (3, 5, 7)
    assert not result.complete


def test_usage_errors():
    with pytest.raises(UsageError):
        strong_closure([0])
    with pytest.raises(UsageError):
        is_strongly_closed({1}, 0)
    with pytest.raises(UsageError):
        satisfies_partition_condition({1}, 10, 20)
    with pytest.raises(UsageError):
        multiplicative_prime_witnesses(1, 3, 10)

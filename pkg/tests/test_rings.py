import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strongseries import NotAUnitError, Q, UsageError, Z, Zmod, ring_from_spec
from strongseries.rng import SplitMix64, fnv1a64

RINGS = [Z, Zmod(6), Zmod(7), Zmod(12), Q]


def _random_element(ring, rng):
    if ring is Z:
        return rng.randint(-50, 50)
    if ring is Q:
        return Fraction(rng.randint(-20, 20), rng.randint(1, 12))
    return rng.randint(0, ring.modulus - 1)


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: r.spec)
def test_ring_axioms_on_random_triples(ring):
    rng = SplitMix64(0x5EED ^ fnv1a64(ring.spec))
    for _ in range(1000):
        a = ring.coerce(_random_element(ring, rng))
        b = ring.coerce(_random_element(ring, rng))
        c = ring.coerce(_random_element(ring, rng))
        assert ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
        assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
        assert ring.add(a, b) == ring.add(b, a)
        assert ring.mul(a, b) == ring.mul(b, a)
        assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
        assert ring.add(a, ring.zero) == a
        assert ring.mul(a, ring.one) == a
        assert ring.add(a, ring.neg(a)) == ring.zero
        assert ring.sub(a, b) == ring.add(a, ring.neg(b))


def test_arithmetic_examples():
    assert Z.add(2, 3) == 5
    assert Zmod(6).mul(4, 5) == 2
    assert Q.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_inverse_unit_examples():
    assert Z.inverse_unit(-1) == -1
    assert Z.inverse_unit(1) == 1
    with pytest.raises(NotAUnitError):
        Z.inverse_unit(2)
    assert Zmod(7).inverse_unit(3) == 5
    with pytest.raises(NotAUnitError):
        Zmod(6).inverse_unit(2)
    assert Q.inverse_unit(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(NotAUnitError):
        Q.inverse_unit(Fraction(0))


@pytest.mark.parametrize("m", [2, 6, 7, 12, 97])
def test_zmod_units_match_gcd_oracle(m):
    ring = Zmod(m)
    for a in range(m):
        expected_unit = math.gcd(a, m) == 1
        assert ring.is_unit(a) == expected_unit
        if expected_unit:
            inv = ring.inverse_unit(a)
            assert ring.mul(a, inv) == ring.one
            assert ring.inverse_unit(inv) == a


def test_inverse_unit_is_an_involution_over_q():
    rng = SplitMix64(99)
    for _ in range(200):
        a = Fraction(rng.randint(-20, 20), rng.randint(1, 12))
        if a == 0:
            continue
        b = Q.inverse_unit(a)
        assert Q.inverse_unit(b) == a
        assert Q.mul(a, b) == 1


def test_canonical_forms():
    assert Zmod(5).coerce(-1) == 4
    assert Zmod(5).coerce(12) == 2
    assert Q.coerce(Fraction(2, 4)) == Fraction(1, 2)
    assert Q.format(Fraction(-10, 4)) == "-5/2"
    assert Q.format(Fraction(5)) == "5"


@given(st.integers())
def test_integer_parse_format_roundtrip(n):
    assert Z.parse(Z.format(n)) == n


@given(st.fractions())
def test_rational_parse_format_roundtrip(q):
    assert Q.parse(Q.format(q)) == q


def test_ring_from_spec():
    assert ring_from_spec("z") is Z
    assert ring_from_spec("q") is Q
    assert ring_from_spec("zmod:7") == Zmod(7)
    assert ring_from_spec("zmod:7") != Zmod(5)
    for bad in ("zmod:1", "zmod:x", "gf:4", ""):
        with pytest.raises(UsageError):
            ring_from_spec(bad)


def test_parse_rejects_garbage():
    for ring, text in [(Z, "1/2"), (Z, "x"), (Q, "1/0"), (Zmod(7), "2.5")]:
        with pytest.raises(UsageError):
            ring.parse(text)

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strongseries import (
    ConstantTermError,
    MismatchError,
    MultiSeries,
    ParseError,
    Q,
    SeriesTuple,
    SupportSetND,
    TruncatedSeries,
    UsageError,
    Z,
    Zmod,
    format_multiseries,
    format_tuple,
    is_norm_saturated,
    is_supported_on_nd,
    monomials_upto,
    norm,
    parse_multiseries,
    parse_tuple,
    strong_closure,
)
from strongseries.rng import SplitMix64, fnv1a64
from strongseries.verify import random_supported_series, random_supported_tuple


def V(i, nvars=2, degree=8, ring=Z):
    return MultiSeries.variable(ring, nvars, degree, i)


def test_norm_examples():
    assert norm((2, 0, 1)) == 3
    assert norm((0, 1, 0)) == 1
    assert norm((0, 5)) == 5


@given(st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.tuples(
        st.tuples(*[st.integers(min_value=0, max_value=9)] * n),
        st.tuples(*[st.integers(min_value=0, max_value=9)] * n))))
def test_norm_is_additive(pair):
    u, v = pair
    w = tuple(a + b for a, b in zip(u, v))
    assert norm(w) == norm(u) + norm(v)


def test_monomials_upto_order():
    assert monomials_upto(2, 2) == [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    for u, v in zip(monomials_upto(3, 4), monomials_upto(3, 4)[1:]):
        assert (sum(u), tuple(-e for e in u)) < (sum(v), tuple(-e for e in v))


def test_arithmetic_examples():
    x1, x2 = V(1), V(2)
    assert (x1 * x2).coeffs == {(1, 1): 1}
    square = (x1 + x2) * (x1 + x2)
    assert square.coeffs == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert (x1 + (-x1)).is_zero()
    assert format_multiseries(square) == "x1^2 + 2*x1*x2 + x2^2"


def test_degree_truncation_in_products():
    x1 = MultiSeries.variable(Z, 1, 3, 1)
    cube = x1 * x1 * x1
    assert cube.coeffs == {(3,): 1}
    assert (cube * x1).is_zero()


def test_parse_and_format_tuple():
    t = parse_tuple("x1^2 | x2", Z, 2, 8)
    assert t.components[0].coeffs == {(2, 0): 1}
    assert t.components[1].coeffs == {(0, 1): 1}
    assert format_tuple(t) == "x1^2 | x2"
    zero_component = parse_tuple("0 | x2", Z, 2, 8)
    assert zero_component.components[0].is_zero()
    roundtrip = parse_tuple(format_tuple(t), Z, 2, 8)
    assert roundtrip == t
    mixed = parse_multiseries("2*x1^2*x2 - x2^3 + 1/1*x1", Q, 2, 8)
    assert parse_multiseries(format_multiseries(mixed), Q, 2, 8) == mixed


def test_parse_rejects_bad_input():
    with pytest.raises(ConstantTermError):
        parse_multiseries("3 + x1", Z, 2, 8)
    with pytest.raises(ConstantTermError):
        parse_multiseries("x1^0", Z, 2, 8)
    with pytest.raises(ParseError):
        parse_multiseries("x3", Z, 2, 8)
    with pytest.raises(ParseError):
        parse_tuple("x1 | x2 | x1", Z, 2, 8)


def test_compose_identity_laws():
    ident = SeriesTuple.identity(Z, 2, 8)
    f = parse_tuple("x1^2 + x2 | x1*x2", Z, 2, 8)
    assert f.compose(ident) == f
    assert ident.compose(f) == f


def test_compose_diagonal_square():
    f = MultiSeries(Z, 2, 8, {(1, 1): 1})
    g = V(1) + V(2)
    result = SeriesTuple([f, V(2)]).compose(SeriesTuple([g, g]))
    assert result.components[0].coeffs == {(2, 0): 1, (1, 1): 2, (0, 2): 1}


def test_compose_substitution_example():
    outer = parse_tuple("x1^2 | x2", Z, 2, 8)
    inner = parse_tuple("x1 + x2^2 | x2", Z, 2, 8)
    composed = outer.compose(inner)
    assert composed.components[0].coeffs == {(2, 0): 1, (1, 2): 2, (0, 4): 1}
    assert composed.components[1].coeffs == {(0, 1): 1}
    assert format_tuple(composed) == "x1^2 + 2*x1*x2^2 + x2^4 | x2"


@pytest.mark.parametrize("nvars", [2, 3])
@pytest.mark.parametrize("ring", [Z, Zmod(5)], ids=lambda r: r.spec)
def test_composition_monoid_laws(nvars, ring):
    rng = SplitMix64(0xD1CE ^ fnv1a64(f"{ring.spec}:{nvars}"))
    degree = 8
    eligible = monomials_upto(nvars, degree)
    ident = SeriesTuple.identity(ring, nvars, degree)
    for _ in range(25):
        f = random_supported_tuple(rng, ring, nvars, degree, eligible, max_terms=6)
        g = random_supported_tuple(rng, ring, nvars, degree, eligible, max_terms=6)
        h = random_supported_tuple(rng, ring, nvars, degree, eligible, max_terms=6)
        assert f.compose(g).compose(h) == f.compose(g.compose(h))
        assert f.compose(ident) == f
        assert ident.compose(f) == f


def test_support_from_monoid_examples():
    odds = strong_closure([3])
    support = SupportSetND.from_strong_monoid(odds, 2, 4)
    assert support.members() == [(1, 0), (0, 1), (3, 0), (2, 1), (1, 2), (0, 3)]
    trivial = SupportSetND.from_strong_monoid(strong_closure([]), 3, 5)
    assert trivial.members() == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    everything = SupportSetND.from_strong_monoid(strong_closure([2]), 2, 3)
    assert everything.members() == monomials_upto(2, 3)


def test_norm_saturation():
    odds = strong_closure([3])
    assert is_norm_saturated(SupportSetND.from_strong_monoid(odds, 2, 5)).holds
    broken = SupportSetND.from_explicit([(1, 0), (0, 1), (2, 0)], 2, 4)
    verdict = is_norm_saturated(broken)
    assert not verdict.holds
    assert verdict.witness == ((2, 0), (1, 1))
    full = SupportSetND.from_explicit(monomials_upto(2, 3), 2, 3)
    assert is_norm_saturated(full).holds


def test_supported_on_verdicts():
    odds = strong_closure([3])
    support = SupportSetND.from_strong_monoid(odds, 2, 8)
    ident = SeriesTuple.identity(Z, 2, 8)
    assert is_supported_on_nd(ident, support).holds
    bad = SeriesTuple([V(1) * V(2), V(2)])
    verdict = bad.is_supported_on(support)
    assert not verdict.holds and verdict.witness == (1, (1, 1))
    zero_tuple = SeriesTuple([MultiSeries.zero(Z, 2, 8)] * 2)
    assert zero_tuple.is_supported_on(support).holds


@pytest.mark.parametrize("gens", [(3,), (4, 6)])
def test_pulled_back_support_absorbs_composition(gens):
    monoid = strong_closure(gens)
    support = SupportSetND.from_strong_monoid(monoid, 2, 10)
    eligible = [u for u in monomials_upto(2, 10) if support.contains(u)]
    rng = SplitMix64(fnv1a64(str(gens)))
    for ring in (Z, Zmod(5)):
        for _ in range(30):
            f = random_supported_tuple(rng, ring, 2, 10, eligible)
            g = random_supported_tuple(rng, ring, 2, 10, eligible)
            assert f.compose(g).is_supported_on(support).holds


def test_univariate_counterexample_lifts():
    bad_norms = {1} | set(range(2, 11, 2))
    support = SupportSetND.from_explicit(
        [u for u in monomials_upto(2, 10) if sum(u) in bad_norms], 2, 10)
    outer = parse_tuple("x1^2 | x2", Z, 2, 10)
    inner = parse_tuple("x1 + x1^2 | x2", Z, 2, 10)
    verdict = outer.compose(inner).is_supported_on(support)
    assert not verdict.holds
    assert verdict.witness == (1, (3, 0))


def test_unsaturated_support_escapes_through_diagonal():
    explicit = SupportSetND.from_explicit([(1, 0), (0, 1), (2, 0)], 2, 6)
    g = V(1, degree=6) + V(2, degree=6)
    f = SeriesTuple([MultiSeries(Z, 2, 6, {(2, 0): 1}),
                     MultiSeries.variable(Z, 2, 6, 2)])
    verdict = f.compose(SeriesTuple([g, g])).is_supported_on(explicit)
    assert not verdict.holds
    assert verdict.witness[1] in {(1, 1), (0, 2)}


def test_single_variable_matches_univariate_compose():
    rng = SplitMix64(11011)
    for ring in (Z, Zmod(7), Q):
        for _ in range(35):
            f1 = random_supported_series(rng, ring, 12, range(1, 13))
            g1 = random_supported_series(rng, ring, 12, range(1, 13))
            f_nd = MultiSeries(ring, 1, 12, {(e,): c for e, c in f1.coeffs.items()})
            g_nd = MultiSeries(ring, 1, 12, {(e,): c for e, c in g1.coeffs.items()})
            composed = SeriesTuple([f_nd]).compose(SeriesTuple([g_nd]))
            expected = f1.compose(g1)
            assert composed.components[0].coeffs == {
                (e,): c for e, c in expected.coeffs.items()}


def test_structural_validation():
    with pytest.raises(ConstantTermError):
        MultiSeries(Z, 2, 5, {(0, 0): 1})
    with pytest.raises(UsageError):
        MultiSeries(Z, 2, 5, {(1, 0, 0): 1})
    with pytest.raises(MismatchError):
        SeriesTuple([V(1), MultiSeries.variable(Z, 2, 9, 2)])
    with pytest.raises(MismatchError):
        SeriesTuple([V(1)])
    with pytest.raises(MismatchError):
        V(1) + MultiSeries.variable(Zmod(5), 2, 8, 1)
    with pytest.raises(MismatchError):
        SeriesTuple.identity(Z, 2, 8).compose(SeriesTuple.identity(Z, 3, 8))


def test_mixed_degree_takes_minimum():
    a = MultiSeries.variable(Z, 2, 9, 1)
    b = MultiSeries.variable(Z, 2, 5, 2)
    assert (a + b).degree == 5
    assert (a * b).degree == 5


@settings(max_examples=40)
@given(st.lists(st.tuples(
    st.tuples(st.integers(min_value=0, max_value=4),
              st.integers(min_value=0, max_value=4)),
    st.integers(min_value=-5, max_value=5)), max_size=6))
def test_addition_group_laws_nd(raw_terms):
    terms = [(u, c) for u, c in raw_terms if any(u)]
    f = MultiSeries(Z, 2, 8, terms)
    zero = MultiSeries.zero(Z, 2, 8)
    assert f + zero == f
    assert f + (-f) == zero

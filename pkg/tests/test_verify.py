import pytest

from strongseries import (
    Q,
    TrialConfig,
    TruncatedSeries,
    UsageError,
    Z,
    Zmod,
    check_group_axioms,
    check_inverse_support,
    check_nd,
    check_theorem_main,
    newton_inverse_oracle,
    parse_series,
    run_suites,
    strong_closure,
)
from strongseries.rng import SplitMix64, fnv1a64
from strongseries.series import format_series
from strongseries.verify import random_supported_series, structured_escape

LIGHT = TrialConfig(seed=42, trials=20, bound=40, precision=20, s_max=5)


def test_newton_oracle_catalan():
    f = parse_series("x + x^2", Z, 6)
    g = newton_inverse_oracle(f)
    assert g.coeffs == {1: 1, 2: -1, 3: 2, 4: -5, 5: 14, 6: -42}
    assert g == f.invert()


def test_newton_oracle_identity():
    ident = TruncatedSeries.identity(Z, 5)
    assert newton_inverse_oracle(ident) == ident


def test_newton_oracle_modular():
    f = parse_series("2*x + x^2", Zmod(5), 8)
    assert newton_inverse_oracle(f) == f.invert()


@pytest.mark.parametrize("ring", [Z, Zmod(7), Q], ids=lambda r: r.spec)
def test_oracle_agrees_with_inductive_inverse(ring):
    rng = SplitMix64(0xBEEF ^ fnv1a64(ring.spec))
    for _ in range(200):
        f = random_supported_series(rng, ring, 20, range(1, 21), unit_linear=True)
        assert newton_inverse_oracle(f) == f.invert()


def test_inverse_suite_passes():
    report = check_inverse_support(LIGHT, strong_closure([4, 6]))
    assert report.passed
    assert [c.name for c in report.checks] == [
        "compose_with_inverse_is_identity_left",
        "compose_with_inverse_is_identity_right",
        "inverse_support_stays_inside_monoid",
    ]
    assert all(c.cases == LIGHT.trials * len(LIGHT.rings) for c in report.checks)


def test_group_suite_passes():
    report = check_group_axioms(LIGHT, strong_closure([3]))
    assert report.passed


def test_nd_suite_passes():
    for nvars in (2, 3):
        report = check_nd(LIGHT, strong_closure([3]), nvars, degree=8)
        assert report.passed, report.to_json()
        names = [c.name for c in report.checks]
        assert "non_closed_norm_set_leaks_composition" in names
        assert "unsaturated_support_leaks_composition" in names


def test_main_suite_coverage_floor():
    config = TrialConfig(seed=11, trials=20, bound=40, precision=15, s_max=5)
    report = check_theorem_main(config)
    assert report.passed
    agree = report.checks[0]
    assert agree.cases >= 60  # 231 exhaustive sets plus the random batch
    escapes = report.checks[2]
    assert escapes.cases >= 10
    # coverage floor: at least 50 distinct closed monoids and 10 non-closed sets
    assert "231 closed generator-set cases" in agree.note
    assert "non-closed" in agree.note


def test_reports_are_deterministic():
    monoid = strong_closure([4, 6])
    for build in (
        lambda: check_inverse_support(LIGHT, monoid),
        lambda: check_group_axioms(LIGHT, monoid),
        lambda: check_nd(LIGHT, monoid, 2, degree=8),
    ):
        first = build().to_json()
        second = build().to_json()
        assert first == second
        assert '"duration' not in first


def test_structured_escape_reverifies():
    members = frozenset({1, 2} | set(range(4, 31, 2)))
    hit = structured_escape(members, 30)
    assert hit is not None
    s = hit["outer_exponent"]
    t = hit["inner_extra_exponent"]
    composed = parse_series(f"x^{s}", Z, 30).compose(
        parse_series(f"x + x^{t}", Z, 30))
    assert format_series(composed) == hit["composition"]
    assert hit["escaped_exponent"] not in members
    assert hit["escaped_exponent"] in composed.support()


def test_structured_escape_none_for_closed_sets():
    members = frozenset(strong_closure([4, 6]).members_upto(40))
    assert structured_escape(members, 40) is None


def test_run_suites_dispatch():
    reports = run_suites("inverse", LIGHT, strong_closure([3]))
    assert [r.suite for r in reports] == ["inverse"]
    reports = run_suites("nd", LIGHT, strong_closure([3]), nd_degree=8)
    assert [r.suite for r in reports] == ["nd-n2", "nd-n3"]
    with pytest.raises(UsageError):
        run_suites("bogus", LIGHT)


def test_config_validation():
    with pytest.raises(UsageError):
        TrialConfig(seed=1, trials=0)
    with pytest.raises(UsageError):
        TrialConfig(seed=1, rings=())
    with pytest.raises(UsageError):
        TrialConfig(seed=1, rings=("gf:9",))

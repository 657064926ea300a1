"""Exact truncated power-series composition over restricted exponent supports.

The package certifies which exponent sets make series with that support closed
under composition (the strongly closed monoids), computes with the additive
shift-by-one shadow of such sets, performs truncated composition and
compositional inversion over pluggable exact coefficient rings in one and
several variables, and ships seeded verification suites plus a CLI.
"""

from .addmonoid import AdditiveMonoid
from .errors import (
    ConstantTermError,
    MismatchError,
    NotAUnitError,
    NotInvertibleError,
    ParseError,
    StrongSeriesError,
    UsageError,
)
from .multiseries import (
    MultiSeries,
    SeriesTuple,
    SupportSetND,
    format_multiseries,
    format_tuple,
    is_norm_saturated,
    is_supported_on_nd,
    monomials_upto,
    norm,
    parse_multiseries,
    parse_tuple,
    support_from_monoid,
)
from .rings import Q, Ring, Z, Zmod, ring_from_spec
from .rng import SplitMix64
from .series import (
    TruncatedSeries,
    TruncationWarning,
    format_series,
    parse_series,
)
from .strongmonoid import (
    PrimeWitnesses,
    StrongMonoid,
    Verdict,
    from_additive,
    is_mult_closed,
    is_prime,
    is_strongly_closed,
    multiplicative_prime_witnesses,
    satisfies_partition_condition,
    strong_closure,
    to_additive,
)
from .verify import (
    Report,
    TrialConfig,
    check_group_axioms,
    check_inverse_support,
    check_nd,
    check_theorem_main,
    newton_inverse_oracle,
    run_suites,
)

__version__ = "0.1.0"

__all__ = [
    "AdditiveMonoid",
    "ConstantTermError",
    "MismatchError",
    "MultiSeries",
    "NotAUnitError",
    "NotInvertibleError",
    "ParseError",
    "PrimeWitnesses",
    "Q",
    "Report",
    "Ring",
    "SeriesTuple",
    "SplitMix64",
    "StrongMonoid",
    "StrongSeriesError",
    "SupportSetND",
    "TrialConfig",
    "TruncatedSeries",
    "TruncationWarning",
    "UsageError",
    "Verdict",
    "Z",
    "Zmod",
    "check_group_axioms",
    "check_inverse_support",
    "check_nd",
    "check_theorem_main",
    "format_multiseries",
    "format_series",
    "format_tuple",
    "from_additive",
    "is_mult_closed",
    "is_norm_saturated",
    "is_prime",
    "is_strongly_closed",
    "is_supported_on_nd",
    "monomials_upto",
    "multiplicative_prime_witnesses",
    "newton_inverse_oracle",
    "norm",
    "parse_multiseries",
    "parse_series",
    "parse_tuple",
    "ring_from_spec",
    "run_suites",
    "satisfies_partition_condition",
    "strong_closure",
    "support_from_monoid",
    "to_additive",
]

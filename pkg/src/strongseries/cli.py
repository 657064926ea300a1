"""Command-line entry point.

Exit codes: 0 when the command succeeds and any verdict holds, 1 when a
verdict fails (the witness is printed), 2 on usage errors.  ``--json`` swaps
the plain output for a single JSON object on stdout in which every number is
a decimal string, so arbitrarily large values survive any JSON parser; the
``verify`` subcommand instead takes ``--json PATH`` and writes its reports to
that file.  Randomized subcommands require an explicit ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import sys

from .addmonoid import AdditiveMonoid
from .errors import StrongSeriesError, UsageError
from .multiseries import format_tuple, parse_tuple
from .rings import ring_from_spec
from .series import format_series, parse_series
from .strongmonoid import (
    is_strongly_closed,
    multiplicative_prime_witnesses,
    satisfies_partition_condition,
    strong_closure,
)
from .verify import TrialConfig, check_nd, run_suites


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None
    if not values:
        raise UsageError(f"expected a nonempty integer list, got {text!r}")
    return values


def _emit_json(obj: dict):
    print(json.dumps(obj, sort_keys=True, indent=2))


def _monoid_json(monoid: AdditiveMonoid) -> dict:
    return {
        "generators": [str(g) for g in monoid.generators],
        "gcd": str(monoid.gcd),
        "conductor": str(monoid.conductor),
        "gaps": [str(n) for n in monoid.gaps()],
    }


def _pair_witness_text(witness: tuple) -> str:
    if len(witness) == 1:
        return f"{witness[0]} not in T"
    s, t = witness
    return f"s={s} t={t} s+t-1={s + t - 1} not in T"


def _partition_witness_text(witness: tuple) -> str:
    if len(witness) == 1:
        return f"{witness[0]} not in T"
    s, parts, ts, total = witness
    return (f"s={s} parts={'+'.join(map(str, parts))} "
            f"ts={','.join(map(str, ts))} sum={total} not in T")


def cmd_closure(args) -> int:
    gens = _int_list(args.gens)
    monoid = strong_closure(gens)
    members = monoid.members_upto(args.bound)
    if args.json:
        _emit_json({
            "command": "closure",
            "generators": [str(g) for g in gens],
            "bound": str(args.bound),
            "members": [str(m) for m in members],
            "shadow": _monoid_json(monoid.shadow),
        })
    else:
        print(" ".join(str(m) for m in members))
    return 0


def cmd_check(args) -> int:
    if (args.gens is None) == (args.set is None):
        raise UsageError("check needs exactly one of --gens or --set")
    if args.gens is not None:
        gens = _int_list(args.gens)
        members = frozenset(strong_closure(gens).members_upto(args.bound))
        source = {"generators": [str(g) for g in gens]}
    else:
        members = frozenset(_int_list(args.set))
        source = {"set": [str(m) for m in sorted(members)]}
    pair = is_strongly_closed(members, args.bound)
    partition = satisfies_partition_condition(members, args.bound, args.smax)
    if args.json:
        obj = {
            "command": "check",
            "bound": str(args.bound),
            "s_max": str(args.smax),
            "pair_condition": {"holds": pair.holds},
            "partition_condition": {"holds": partition.holds},
        }
        obj.update(source)
        if pair.witness is not None:
            obj["pair_condition"]["witness"] = _pair_witness_text(pair.witness)
        if partition.witness is not None:
            obj["partition_condition"]["witness"] = _partition_witness_text(
                partition.witness)
        _emit_json(obj)
    else:
        if pair.holds:
            print("pair-condition: holds")
        else:
            print(f"pair-condition: fails  witness {_pair_witness_text(pair.witness)}")
        if partition.holds:
            print("partition-condition: holds")
        else:
            print("partition-condition: fails  witness "
                  f"{_partition_witness_text(partition.witness)}")
    return 0 if (pair.holds and partition.holds) else 1


def cmd_translate(args) -> int:
    gens = _int_list(args.gens)
    if args.direction == "t2s":
        for g in gens:
            if g < 1:
                raise UsageError(f"exponent generators must be >= 1, got {g}")
        out = sorted({g - 1 for g in gens if g > 1})
    else:
        for g in gens:
            if g < 1:
                raise UsageError(f"additive generators must be >= 1, got {g}")
        out = sorted({g + 1 for g in gens})
    if args.json:
        _emit_json({
            "command": "translate",
            "direction": args.direction,
            "input": [str(g) for g in gens],
            "output": [str(g) for g in out],
        })
    else:
        print(" ".join(str(g) for g in out) if out else "(none)")
    return 0


def cmd_mingens(args) -> int:
    gens = _int_list(args.gens)
    monoid = AdditiveMonoid.from_generators(gens)
    minimal = monoid.minimal_generators()
    if args.json:
        _emit_json({
            "command": "mingens",
            "minimal_generators": [str(g) for g in minimal],
            "monoid": _monoid_json(monoid),
        })
    else:
        print(" ".join(str(g) for g in minimal) if minimal else "(none)")
    return 0


def cmd_member(args) -> int:
    gens = _int_list(args.gens)
    monoid = AdditiveMonoid.from_generators(gens)
    if args.n < 0:
        raise UsageError(f"--n must be a natural number, got {args.n}")
    inside = monoid.contains(args.n)
    if args.json:
        _emit_json({
            "command": "member",
            "n": str(args.n),
            "member": inside,
            "monoid": _monoid_json(monoid),
        })
    else:
        print("true" if inside else "false")
    return 0 if inside else 1


def cmd_primes(args) -> int:
    result = multiplicative_prime_witnesses(args.a, args.count, args.kmax)
    if args.json:
        _emit_json({
            "command": "primes",
            "base": str(result.base),
            "count": str(args.count),
            "k_max": str(args.kmax),
            "primes": [str(p) for p in result.primes],
            "ks": [str(k) for k in result.ks],
            "complete": result.complete,
        })
    else:
        print(" ".join(str(p) for p in result.primes) if result.primes else "(none)")
        if not result.complete:
            print(f"partial: found {len(result.primes)} of {args.count} "
                  f"with k <= {args.kmax}")
    return 0


def cmd_compose(args) -> int:
    ring = ring_from_spec(args.ring)
    outer = parse_series(args.f, ring, args.prec)
    inner = parse_series(args.g, ring, args.prec)
    result = outer.compose(inner)
    if args.json:
        _emit_json(result.to_json_obj())
    else:
        print(format_series(result))
    return 0


def cmd_invert(args) -> int:
    ring = ring_from_spec(args.ring)
    series = parse_series(args.f, ring, args.prec)
    inverse = series.invert()
    verdict = None
    if args.check_support is not None:
        monoid = strong_closure(_int_list(args.check_support))
        verdict = inverse.is_supported_on(monoid)
    if args.json:
        obj = inverse.to_json_obj()
        if verdict is not None:
            check = {"holds": verdict.holds}
            if verdict.witness is not None:
                check["witness_exponent"] = str(verdict.witness[0])
            obj = {"series": obj, "support_check": check}
        _emit_json(obj)
    else:
        print(format_series(inverse))
        if verdict is not None:
            if verdict.holds:
                print("support-check: holds")
            else:
                print(f"support-check: fails  witness exponent {verdict.witness[0]}")
    if verdict is not None and not verdict.holds:
        return 1
    return 0


def cmd_multi_compose(args) -> int:
    ring = ring_from_spec(args.ring)
    outer = parse_tuple(args.f, ring, args.n, args.prec)
    inner = parse_tuple(args.g, ring, args.n, args.prec)
    result = outer.compose(inner)
    if args.json:
        _emit_json(result.to_json_obj())
    else:
        print(format_tuple(result))
    return 0


def _print_report(report) -> None:
    status = "PASS" if report.passed else "FAIL"
    print(f"suite {report.suite}: {status} "
          f"(duration {report.duration_seconds:.2f}s)")
    for check in report.checks:
        mark = "PASS" if check.passed else "FAIL"
        line = f"  [{mark}] {check.name} (cases={check.cases})"
        if check.note:
            line += f" -- {check.note}"
        print(line)
        if not check.passed and check.witness is not None:
            print(f"         witness: {check.witness}")


def cmd_multi_check(args) -> int:
    config = TrialConfig(seed=args.seed, trials=args.trials,
                         rings=tuple(args.ring.split(",")))
    monoid = strong_closure(_int_list(args.gens))
    report = check_nd(config, monoid, args.n, degree=args.degree)
    if args.json:
        print(report.to_json(), end="")
    else:
        _print_report(report)
    return 0 if report.passed else 1


def cmd_verify(args) -> int:
    config = TrialConfig(
        seed=args.seed,
        trials=args.trials,
        bound=args.bound,
        precision=args.prec,
        rings=tuple(args.ring.split(",")),
        s_max=args.smax,
    )
    monoid = strong_closure(_int_list(args.gens))
    reports = run_suites(args.suite, config, monoid, nd_degree=args.degree)
    for report in reports:
        _print_report(report)
    all_passed = all(r.passed for r in reports)
    print(f"overall: {'PASS' if all_passed else 'FAIL'}")
    if args.json is not None:
        payload = {"reports": [r.to_json_obj() for r in reports]}
        with open(args.json, "w", encoding="utf-8") as handle:
            handle.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strongseries",
        description="Truncated power-series composition over restricted "
                    "exponent supports, with exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", help="members of the strongly closed monoid "
                                       "generated by the given exponents")
    p.add_argument("--gens", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("check", help="run both closure conditions on a "
                                     "generated or explicit exponent set")
    p.add_argument("--gens")
    p.add_argument("--set")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--smax", type=int, default=6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("translate", help="shift generators between the "
                                         "exponent monoid and its additive shadow")
    p.add_argument("--gens", required=True)
    p.add_argument("--direction", choices=("t2s", "s2t"), required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("mingens", help="minimal generating set of an additive monoid")
    p.add_argument("--gens", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mingens)

    p = sub.add_parser("member", help="additive-monoid membership query")
    p.add_argument("--gens", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("primes", help="prime witnesses in the progression "
                                      "a + k*(a-1)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--kmax", type=int, default=100000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("compose", help="compose two univariate series")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--prec", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("invert", help="compositional inverse of a series")
    p.add_argument("--f", required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--prec", type=int, required=True)
    p.add_argument("--check-support", dest="check_support")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("multi", help="multivariate tuple operations")
    msub = p.add_subparsers(dest="multi_command", required=True)

    mp = msub.add_parser("compose", help="compose two series tuples")
    mp.add_argument("--n", type=int, required=True)
    mp.add_argument("--f", required=True)
    mp.add_argument("--g", required=True)
    mp.add_argument("--prec", type=int, required=True)
    mp.add_argument("--ring", required=True)
    mp.add_argument("--json", action="store_true")
    mp.set_defaults(func=cmd_multi_compose)

    mp = msub.add_parser("check", help="randomized n-variable support-closure check")
    mp.add_argument("--gens", required=True)
    mp.add_argument("--n", type=int, required=True)
    mp.add_argument("--degree", type=int, default=10)
    mp.add_argument("--trials", type=int, required=True)
    mp.add_argument("--seed", type=int, required=True)
    mp.add_argument("--ring", default="z,zmod:7")
    mp.add_argument("--json", action="store_true")
    mp.set_defaults(func=cmd_multi_check)

    p = sub.add_parser("verify", help="run the certification suites")
    p.add_argument("--suite", choices=("main", "inverse", "group", "nd", "all"),
                   required=True)
    p.add_argument("--gens", default="4,6")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--prec", type=int, default=30)
    p.add_argument("--bound", type=int, default=60)
    p.add_argument("--smax", type=int, default=6)
    p.add_argument("--degree", type=int, default=10)
    p.add_argument("--ring", default="z,zmod:7")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StrongSeriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

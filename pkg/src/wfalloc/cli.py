"""Command-line driver: single waterfilling solves, submodularity checks,
one-off allocation simulations, and batch ratio experiments emitting CSV.

Exit codes: 0 success, 2 invalid flags or values, 3 instance too large for
exhaustive computation, 4 I/O error.
"""

import argparse
import sys

from .allocation import InstanceTooLargeError, run_strategy, system_utility, _ratio_value, _reference_value
from .experiments import evaluate_strategies, format_records_csv, run_experiment, summarize
from .lemmas import rate_oracle
from .profiles import PRNG_ALGORITHM, PROFILE_KINDS, ProfileSpec, generate, replay_from_csv
from .submodular import (
    GroundSetTooLargeError,
    SetFunctionOracle,
    check_monotone,
    check_setpair_submodular,
    check_submodular_pairwise,
    violations_to_csv,
)
from .waterfill import NoiseProfile, log_utility, waterfill

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TOO_LARGE = 3
EXIT_IO = 4

_PROFILE_CHOICES = [k.replace("_", "-") for k in PROFILE_KINDS]
_STRATEGY_CHOICES = ["greedy", "greedy-absolute", "max-weight"]
_REFERENCE_BY_FLAG = {
    "brute-force": "brute_force_optimum",
    "analytic-upper": "analytic_upper_bound",
}


def _fmt(x):
    return f"{x:.12g}"


def _parse_reals(text, flag):
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValueError(f"{flag} expects comma-separated numbers, got {text!r}") from None
    if not values:
        raise ValueError(f"{flag} expects at least one number")
    return values


def _snrs_to_profile(snrs, budget):
    """Channels for the positive SNRs, keyed by their original index."""
    for w in snrs:
        if w < 0.0:
            raise ValueError(f"SNRs must be nonnegative, got {w}")
    ids = [u for u, w in enumerate(snrs) if w > 0.0]
    return NoiseProfile([1.0 / snrs[u] for u in ids], budget, ids)


def _input_column(args):
    W = replay_from_csv(args.input)
    if args.basestation is None:
        raise ValueError("--input needs --basestation to pick a column")
    if not 1 <= args.basestation <= W.m:
        raise ValueError(f"--basestation must be in 1..{W.m}")
    return [float(x) for x in W.weights[:, args.basestation - 1]]


def _cmd_waterfill(args):
    if args.input is not None:
        snrs = _input_column(args)
        profile = _snrs_to_profile(snrs, args.power)
        total = len(snrs)
    elif args.snrs is not None:
        snrs = _parse_reals(args.snrs, "--snrs")
        profile = _snrs_to_profile(snrs, args.power)
        total = len(snrs)
    elif args.noises is not None:
        profile = NoiseProfile(_parse_reals(args.noises, "--noises"), args.power)
        total = len(profile)
    else:
        raise ValueError("one of --noises, --snrs, --input is required")
    sol = waterfill(profile)
    print(f"channels: {total}")
    print(f"budget: {_fmt(profile.budget)}")
    print(f"water_level: {'none' if sol.water_level is None else _fmt(sol.water_level)}")
    print(f"active_set: {' '.join(str(c) for c in sorted(sol.active_set))}")
    for c in range(total):
        print(f"power {c}: {_fmt(sol.powers.get(c, 0.0))}")
    print(f"rate_nats: {_fmt(sol.rate)}")
    return EXIT_OK


def _cmd_check_submodular(args):
    if args.snrs is not None:
        snrs = _parse_reals(args.snrs, "--snrs")
        ground = frozenset(range(len(snrs)))
        oracle = SetFunctionOracle(
            ground, lambda s: log_utility([snrs[u] for u in sorted(s)], args.power))
    elif args.noises is not None:
        profile = NoiseProfile(_parse_reals(args.noises, "--noises"), args.power)
        oracle = rate_oracle(profile)
    else:
        raise ValueError("one of --noises, --snrs is required")
    u = len(oracle.ground_set)
    print(f"ground_set: {u} elements, tolerance {args.tolerance:g}")
    pairwise = check_submodular_pairwise(oracle, tolerance=args.tolerance)
    triples = u * (u - 1) // 2 * (1 << max(u - 2, 0))
    print(f"pairwise: {len(pairwise)} violations in {triples} triples")
    if args.output is not None:
        violations_to_csv(pairwise, args.output)
        print(f"pairwise violations written to {args.output}")
    if u <= 8:
        monotone = check_monotone(oracle, tolerance=args.tolerance)
        print(f"monotone: {len(monotone)} violations")
        setpair = check_setpair_submodular(oracle, tolerance=args.tolerance)
        print(f"setpair: {len(setpair)} violations")
    else:
        print("monotone: skipped (ground set above cap 8)")
        print("setpair: skipped (ground set above cap 8)")
    return EXIT_OK


def _matrix_from_args(args):
    if args.input is not None:
        if args.profile is not None:
            raise ValueError("use either --input or --profile, not both")
        return replay_from_csv(args.input), "replay"
    if args.profile is None or args.users is None or args.basestations is None:
        raise ValueError("need --input, or --profile with --users and --basestations")
    spec = ProfileSpec(args.profile, args.users, args.basestations, args.seed)
    return generate(spec), spec.kind.replace("_", "-")


def _cmd_simulate(args):
    W, _ = _matrix_from_args(args)
    strategies = args.strategy or ["greedy"]
    reference_kind = _REFERENCE_BY_FLAG[args.reference]
    reference = _reference_value(W, reference_kind)
    print(f"users: {W.n}  basestations: {W.m}")
    print(f"reference ({reference_kind}): {_fmt(reference)}")
    for strategy in strategies:
        alloc = run_strategy(strategy, W)
        utility = system_utility(alloc, W)
        ratio = _ratio_value(reference, utility)
        print(f"strategy {strategy}: utility {_fmt(utility)} ratio {_fmt(ratio)}")
        for j, part in enumerate(alloc.parts):
            users = " ".join(str(x) for x in sorted(part))
            print(f"  bs_{j + 1}: {users}")
    return EXIT_OK


def _cmd_ratio_experiment(args):
    strategies = args.strategy or ["greedy"]
    reference_kind = _REFERENCE_BY_FLAG[args.reference]
    if args.input is not None:
        W = replay_from_csv(args.input)
        records = evaluate_strategies(
            W, strategies, reference_kind,
            trial=0, profile_name="replay", seed=args.seed)
    else:
        if args.profile is None or args.users is None or args.basestations is None:
            raise ValueError("need --input, or --profile with --users and --basestations")
        records = run_experiment(
            args.profile, args.users, args.basestations, args.trials,
            strategies=strategies, reference_kind=reference_kind, seed=args.seed)
    text = format_records_csv(records)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"wrote {len(records)} records to {args.output}", file=sys.stderr)
    for row in summarize(records) if records else []:
        print(
            f"profile={row.profile} strategy={row.strategy} n={row.n} trials={row.trials} "
            f"mean_ratio={row.mean_ratio:.6g} max_ratio={row.max_ratio:.6g} "
            f"mean_utility={row.mean_utility:.6g}",
            file=sys.stderr,
        )
    print(f"prng: {PRNG_ALGORITHM}", file=sys.stderr)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wfalloc",
        description="Waterfilling power allocation and online basestation allocation experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    w = sub.add_parser("waterfill", help="solve one power-allocation instance")
    w.add_argument("--noises", help="comma-separated positive noise variances")
    w.add_argument("--snrs", help="comma-separated nonnegative SNRs (noise is 1/SNR, zeros excluded)")
    w.add_argument("--input", help="weight-matrix CSV to take SNRs from")
    w.add_argument("--basestation", type=int, help="1-based column of --input to solve")
    w.add_argument("--power", type=float, default=1.0, help="total power budget (default 1)")
    w.set_defaults(handler=_cmd_waterfill)

    c = sub.add_parser("check-submodular", help="run the exhaustive set-function checks")
    c.add_argument("--noises", help="comma-separated positive noise variances")
    c.add_argument("--snrs", help="comma-separated nonnegative SNRs")
    c.add_argument("--power", type=float, default=1.0, help="total power budget (default 1)")
    c.add_argument("--tolerance", type=float, default=1e-9, help="violation tolerance (default 1e-9)")
    c.add_argument("--output", help="write pairwise violations to this CSV")
    c.set_defaults(handler=_cmd_check_submodular)

    s = sub.add_parser("simulate", help="one instance: print allocations and utilities")
    _add_instance_flags(s)
    s.set_defaults(handler=_cmd_simulate)

    r = sub.add_parser("ratio-experiment", help="batch trials, CSV records out")
    _add_instance_flags(r)
    r.add_argument("--trials", type=int, default=1, help="number of paired trials (default 1)")
    r.add_argument("--output", default="-", help="records CSV path, or - for stdout (default)")
    r.set_defaults(handler=_cmd_ratio_experiment)

    return parser


def _add_instance_flags(p):
    p.add_argument("--users", type=int, help="number of arriving users")
    p.add_argument("--basestations", type=int, help="number of basestations")
    p.add_argument("--profile", choices=_PROFILE_CHOICES, help="SNR profile kind")
    p.add_argument("--seed", type=int, default=0, help="base RNG seed (default 0)")
    p.add_argument("--input", help="replay a weight-matrix CSV instead of generating")
    p.add_argument("--strategy", action="append", choices=_STRATEGY_CHOICES,
                   help="strategy to run (repeatable; default greedy)")
    p.add_argument("--reference", choices=sorted(_REFERENCE_BY_FLAG), default="analytic-upper",
                   help="offline reference (default analytic-upper)")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (GroundSetTooLargeError, InstanceTooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())

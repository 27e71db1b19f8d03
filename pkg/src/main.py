import argparse
import csv
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from src.config import AppConfig
from src.core.bench import KAPPA1_GRID, KAPPA2_GRID, run_trials, sweep_kappa, sweep_n, write_csv
from src.core.datasets import GeneratedKind, generate, load_numeric, load_text, save_dataset
from src.core.distributions import DistributionKind, DistributionSpec
from src.core.oracle import (
    WORST_DEPTH_BUDGET,
    average_depth_c2,
    binary_depth_profile,
    config_rule,
    minimax_depths,
    strategy_worst_depth,
)
from src.core.search import SearchConfig, Variant, minmax_bound
from src.core.verify import run_checks
from src.utils.exceptions import ItpSearchError, OracleBudgetError
from src.utils.logging_setup import setup_logging

VARIANTS = [variant.value for variant in Variant]
DISTRIBUTIONS = [kind.value for kind in DistributionKind]
DEFAULT_N_GRID = [2 ** t for t in range(19)]


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def non_negative_float(text: str) -> float:
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {text}")
    return value


def _add_run_flags(parser: argparse.ArgumentParser, config: AppConfig, grid: bool = False,
                   default_variant: str = "relaxed") -> None:
    parser.add_argument('--trials', type=positive_int, default=config.TRIALS,
                        help="Monte Carlo trials (default: %(default)s)")
    parser.add_argument('--seed', type=int, default=config.SEED,
                        help="master seed; trial t uses SeedSequence(seed, spawn_key=(t,)) (default: %(default)s)")
    nargs = '+' if grid else None
    parser.add_argument('--kappa1', type=float, nargs=nargs,
                        default=list(KAPPA1_GRID) if grid else config.KAPPA1,
                        help="truncation scale, > 0 (default: %(default)s)")
    parser.add_argument('--kappa2', type=float, nargs=nargs,
                        default=list(KAPPA2_GRID) if grid else config.KAPPA2,
                        help="truncation exponent in (1/2, 1) (default: %(default)s)")
    parser.add_argument('--variant', choices=VARIANTS, nargs=None if grid else '+',
                        default=default_variant if grid else [default_variant],
                        help="ITP minmax radius variant (default: %(default)s)")
    parser.add_argument('--nmax-extra', type=non_negative_float, default=config.NMAX_EXTRA,
                        help="relaxed variant uses N_max = ceil(log2 n) + this (default: %(default)s)")
    parser.add_argument('--cap', type=positive_int, default=config.ITERATION_CAP,
                        help="query cap per search; capped runs count as cap hits (default: %(default)s)")
    parser.add_argument('--output', type=Path, default=None,
                        help="CSV destination (default: standard output)")
    parser.add_argument('--workers', type=positive_int, default=config.WORKERS,
                        help="worker processes; output does not depend on it (default: %(default)s)")


def parse_args(argv: Optional[Sequence[str]], config: AppConfig) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="itpsearch",
        description="Sorted-list search with binary, interpolation and ITP probes",
    )
    parser.add_argument('-d', '--debug', help="Debug mode",
                        action="store_const", dest="loglevel",
                        const=logging.DEBUG, default=None)
    parser.add_argument('-v', '--verbose', help="Verbose output",
                        action="store_const", dest="loglevel",
                        const=logging.INFO, default=None)
    commands = parser.add_subparsers(dest="verb", required=True)

    verify = commands.add_parser('verify', help="run the invariant and oracle checks at desk scale")
    verify.add_argument('--max-n', type=positive_int, default=128,
                        help="largest n for the exhaustive checks (default: %(default)s)")
    verify.add_argument('--instances', type=positive_int, default=2000,
                        help="random instances for equivalence and codec checks (default: %(default)s)")
    verify.add_argument('--seed', type=int, default=config.SEED,
                        help="seed for the random instances (default: %(default)s)")

    kappa = commands.add_parser('sweep-kappa', help="mean queries of ITP over a kappa1 x kappa2 grid")
    kappa.add_argument('--n', type=positive_int, default=200000, help="list size (default: %(default)s)")
    kappa.add_argument('--distribution', choices=DISTRIBUTIONS, default="uniform",
                       help="key distribution of the sampled lists (default: %(default)s)")
    _add_run_flags(kappa, config, grid=True, default_variant="strict")

    sweep = commands.add_parser('sweep-n', help="query statistics per strategy across list sizes")
    sweep.add_argument('--n', type=positive_int, nargs='+', default=DEFAULT_N_GRID,
                       help="list sizes (default: powers of two up to 2^18)")
    sweep.add_argument('--distribution', choices=DISTRIBUTIONS, default="uniform",
                       help="key distribution of the sampled lists (default: %(default)s)")
    _add_run_flags(sweep, config)

    bench = commands.add_parser('bench-file', help="query statistics on a list read from a file")
    bench.add_argument('--input', type=Path, required=True, help="one key per line, or CSV with --column")
    bench.add_argument('--text', action='store_true', help="keys are text, encoded base 27")
    bench.add_argument('--column', type=positive_int, default=None, help="1-based CSV column")
    bench.add_argument('--keep-duplicates', action='store_true', help="do not merge equal numeric keys")
    bench.add_argument('--header', action='store_true', help="skip the first row of numeric input")
    _add_run_flags(bench, config)

    oracle = commands.add_parser('oracle-check', help="exhaustive depth oracles for n = 2..N as CSV")
    oracle.add_argument('--n', type=positive_int, default=64, help="largest n, at most 1024 (default: %(default)s)")
    oracle.add_argument('--output', type=Path, default=None,
                        help="CSV destination (default: standard output)")

    gen = commands.add_parser('generate', help="write a self-generated list to a file")
    gen.add_argument('--kind', choices=[kind.value for kind in GeneratedKind], required=True,
                     help="sequence to generate (required)")
    gen.add_argument('--n', type=positive_int, required=True,
                     help="list size; n + 1 keys are written (required)")
    gen.add_argument('--output', type=Path, required=True,
                     help="destination file, one key per line (required)")

    args = parser.parse_args(argv)
    if args.verb == 'bench-file' and args.text and args.column is not None:
        parser.error("--column applies to numeric CSV input, not --text")
    if args.verb == 'bench-file' and args.text and args.keep_duplicates:
        parser.error("--keep-duplicates applies to numeric input, not --text")
    if args.verb == 'bench-file' and args.text and args.header:
        parser.error("--header applies to numeric input, not --text")
    return args


def _strategies(args: argparse.Namespace, config: AppConfig) -> List[SearchConfig]:
    strategies = [
        config.search_config("binary", cap=args.cap),
        config.search_config("interpolation", cap=args.cap),
    ]
    for variant in args.variant:
        strategies.append(config.search_config(
            "itp", variant, kappa1=args.kappa1, kappa2=args.kappa2,
            n_max_extra=args.nmax_extra, cap=args.cap,
        ))
    return strategies


def _spec(args: argparse.Namespace) -> DistributionSpec:
    return DistributionSpec(DistributionKind(args.distribution))


def _run_verify(args: argparse.Namespace) -> int:
    results = run_checks(max_n=args.max_n, instances=args.instances, seed=args.seed)
    for result in results:
        print(f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}")
    return 0 if all(result.passed for result in results) else 1


def _run_oracle_check(args: argparse.Namespace) -> int:
    if args.n > WORST_DEPTH_BUDGET:
        raise OracleBudgetError(f"--n {args.n} exceeds the enumeration budget of {WORST_DEPTH_BUDGET}")
    strict = SearchConfig.itp(Variant.STRICT)
    binary = SearchConfig.binary()
    depths = minimax_depths(args.n)
    rows = []
    for n in range(2, args.n + 1):
        rows.append([
            n,
            minmax_bound(n),
            int(depths[n]),
            strategy_worst_depth(config_rule(strict, n), n),
            strategy_worst_depth(config_rule(binary, n), n),
            f"{average_depth_c2(n):.6f}",
            f"{float(binary_depth_profile(n).avg_depth):.6f}",
        ])
    header = ["n", "minmax_bound", "minimax_depth", "itp_strict_worst", "binary_worst", "c2_formula", "c2_tree"]
    if args.output is None:
        _write_table(sys.stdout, header, rows)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as f:
            _write_table(f, header, rows)
    return 0


def _write_table(stream, header: List[str], rows: List[list]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def run(args: argparse.Namespace, config: AppConfig) -> int:
    if args.verb == 'verify':
        return _run_verify(args)
    if args.verb == 'oracle-check':
        return _run_oracle_check(args)
    if args.verb == 'generate':
        dataset = generate(args.kind, args.n)
        save_dataset(dataset, args.output)
        print(f"Wrote {len(dataset.sorted_list)} {args.kind} keys to {args.output}")
        return 0
    if args.verb == 'sweep-kappa':
        table = sweep_kappa(
            args.kappa1, args.kappa2, args.n, args.trials, args.seed,
            variant=args.variant, cap=args.cap, n_max_extra=args.nmax_extra,
            spec=_spec(args), workers=args.workers,
        )
        write_csv(table.stats, args.output)
        return 0
    if args.verb == 'sweep-n':
        rows = sweep_n(args.n, _spec(args), _strategies(args, config), args.trials, args.seed,
                       workers=args.workers)
        write_csv(rows, args.output)
        return 0
    if args.text:
        dataset = load_text(args.input)
    else:
        dataset = load_numeric(args.input, column=args.column, dedup=not args.keep_duplicates,
                               skip_header=args.header)
    rows = run_trials(dataset, _strategies(args, config), args.trials, args.seed, workers=args.workers)
    write_csv(rows, args.output)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    config = AppConfig.load_from_file()
    args = parse_args(argv, config)
    config.update_log_level(args.loglevel)
    setup_logging(config)

    try:
        return run(args, config)
    except ItpSearchError as e:
        logging.debug(f"Command failed: {e}", exc_info=True)
        print(f"itpsearch: error: {e}", file=sys.stderr)
        return 1
    except Exception as e:
        logging.error(f"Application error: {e}", exc_info=True)
        raise


if __name__ == "__main__":
    sys.exit(main())

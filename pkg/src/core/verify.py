# src/core/verify.py
"""Desk-scale invariant checks run by the `verify` command."""
import logging
from dataclasses import dataclass
from typing import Callable, Iterator, List, Tuple

import numpy as np

from ..utils.performance import measure_performance
from .distributions import DistributionSpec, make_rng, sample_list
from .keycodec import PRECISION_DIGITS, encode_base27, normalize
from .oracle import (
    average_depth_c2,
    binary_depth_profile,
    config_rule,
    linear_scan,
    minimax_depths,
    strategy_worst_depth,
)
from .search import SearchConfig, SortedList, Variant, minmax_bound, search

logger = logging.getLogger(__name__)

_CODEC_ALPHABET = list("abcdefghijklmnopqrstuvwxyzAZ .-'")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check_lists(n: int, seed: int) -> Iterator[SortedList]:
    yield SortedList(np.linspace(0.0, 1.0, n + 1))
    yield SortedList(np.linspace(0.0, 1.0, n + 1) ** 4)
    yield sample_list(DistributionSpec.uniform(), n, seed + n)


def _cell_targets(sorted_list: SortedList) -> Iterator[Tuple[int, float]]:
    """One equality target and one interior target per outcome cell"""
    values = sorted_list.values
    for k in range(sorted_list.n):
        yield k, float(values[k])
        yield k, float((values[k] + values[k + 1]) / 2)


def check_minmax_exhaustive(max_n: int, seed: int) -> CheckResult:
    strict = SearchConfig.itp(Variant.STRICT)
    relaxed = SearchConfig.itp(Variant.RELAXED, n_max_extra=0.99)
    violations = 0
    cases = 0
    for n in range(2, max_n + 1):
        bound = minmax_bound(n)
        for sorted_list in _check_lists(n, seed):
            for k, z in _cell_targets(sorted_list):
                cases += 1
                outcome = search(sorted_list, z, strict)
                if outcome.queries > bound or outcome.k_star != k:
                    violations += 1
                if search(sorted_list, z, relaxed).queries > bound + 1:
                    violations += 1
    return CheckResult("minmax-exhaustive", violations == 0,
                       f"{cases} targets over n=2..{max_n}, {violations} violations")


def check_minimax_oracle(max_n: int) -> CheckResult:
    depths = minimax_depths(max_n)
    bad = [n for n in range(1, max_n + 1) if depths[n] != minmax_bound(n)]
    return CheckResult("minimax-depth", not bad, f"n=1..{max_n}, mismatches at {bad[:5]}")


def check_worst_depth(max_n: int) -> CheckResult:
    strict = SearchConfig.itp(Variant.STRICT)
    bad = []
    for n in range(2, max_n + 1):
        for z_fraction in (0.1, 0.5, 0.9):
            if strategy_worst_depth(config_rule(strict, n, z_fraction), n) > minmax_bound(n):
                bad.append((n, z_fraction))
    return CheckResult("itp-strict-worst-depth", not bad, f"n=2..{max_n}, violations at {bad[:5]}")


def check_oracle_equivalence(instances: int, seed: int) -> CheckResult:
    rng = make_rng(seed)
    configs = (SearchConfig.binary(), SearchConfig.interpolation(), SearchConfig.itp(Variant.STRICT),
               SearchConfig.itp(Variant.RELAXED), SearchConfig.itp(Variant.LOCAL))
    mismatches = 0
    for _ in range(instances):
        n = int(rng.integers(1, 513))
        sorted_list = sample_list(DistributionSpec.uniform(), n, rng)
        z = float(rng.uniform(0.0, 1.0))
        expected = linear_scan(sorted_list, z)
        mismatches += sum(1 for config in configs if search(sorted_list, z, config).k_star != expected)
    return CheckResult("oracle-equivalence", mismatches == 0, f"{instances} instances, {mismatches} mismatches")


def check_codec_order(pairs: int, seed: int) -> CheckResult:
    rng = make_rng(seed)

    def word() -> str:
        return "".join(rng.choice(_CODEC_ALPHABET, size=int(rng.integers(0, 14))))

    violations = 0
    for _ in range(pairs):
        s, t = word(), word()
        s_key, t_key = normalize(s)[:PRECISION_DIGITS], normalize(t)[:PRECISION_DIGITS]
        expected = (s_key > t_key) - (s_key < t_key)
        es, et = encode_base27(s), encode_base27(t)
        if (es > et) - (es < et) != expected:
            violations += 1
    return CheckResult("codec-order", violations == 0, f"{pairs} pairs, {violations} violations")


def check_binary_average(max_n: int) -> CheckResult:
    bad = []
    for n in range(2, max_n + 1):
        floor = minmax_bound(n) - 2
        if average_depth_c2(n) < floor or binary_depth_profile(n).avg_depth < floor:
            bad.append(n)
    return CheckResult("binary-average-depth", not bad, f"n=2..{max_n}, below N-2 at {bad[:5]}")


@measure_performance
def run_checks(max_n: int = 128, instances: int = 2000, seed: int = 7) -> List[CheckResult]:
    checks: List[Callable[[], CheckResult]] = [
        lambda: check_minmax_exhaustive(max_n, seed),
        lambda: check_minimax_oracle(max(max_n, 1024)),
        lambda: check_worst_depth(min(max_n, 64)),
        lambda: check_oracle_equivalence(instances, seed),
        lambda: check_codec_order(instances, seed),
        lambda: check_binary_average(max_n),
    ]
    results = []
    for check in checks:
        result = check()
        logger.info(f"{result.name}: {'PASS' if result.passed else 'FAIL'} ({result.detail})")
        results.append(result)
    return results

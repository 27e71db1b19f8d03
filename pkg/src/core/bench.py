# src/core/bench.py
"""Monte Carlo harness counting queries per strategy.

Trial t of a run seeded with S draws everything from
Generator(PCG64(SeedSequence(S, spawn_key=(t,)))), so results do not depend
on how trials are split across worker processes.
"""
import csv
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat
from pathlib import Path
from typing import List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np

from ..utils.exceptions import ConfigError
from ..utils.performance import measure_performance
from .datasets import Dataset
from .distributions import DistributionSpec, sample_list, sample_target
from .search import SearchConfig, Variant, search

logger = logging.getLogger(__name__)

CSV_HEADER = ("strategy", "n", "trials", "mean", "median", "max", "cap_hits",
              "seed", "variant", "kappa1", "kappa2")
KAPPA1_GRID = (0.01, 0.12, 0.23, 0.34, 0.45, 0.56, 0.67, 0.78)
KAPPA2_GRID = (0.51, 0.56, 0.62, 0.67, 0.72, 0.78, 0.83, 0.88, 0.94, 0.99)
BLOCKS_PER_WORKER = 4

Source = Union[DistributionSpec, Dataset]
# (queries, capped) per trial
Result = Tuple[int, bool]


@dataclass(frozen=True)
class TrialStats:
    strategy: str
    n: int
    trials: int
    mean: float
    median: float
    max: int
    cap_hits: int
    seed: int
    config: SearchConfig

    @classmethod
    def from_results(cls, config: SearchConfig, n: int, results: Sequence[Result], seed: int) -> 'TrialStats':
        counts = sorted(queries for queries, _ in results)
        return cls(
            strategy=config.label,
            n=n,
            trials=len(counts),
            mean=math.fsum(counts) / len(counts),
            median=float(np.median(counts)),
            max=counts[-1],
            cap_hits=sum(1 for _, capped in results if capped),
            seed=seed,
            config=config,
        )

    def to_row(self) -> List[str]:
        is_itp = bool(self.config.variant_label)
        return [
            self.strategy,
            str(self.n),
            str(self.trials),
            f"{self.mean:.4f}",
            f"{self.median:.1f}",
            str(self.max),
            str(self.cap_hits),
            str(self.seed),
            self.config.variant_label,
            f"{self.config.kappa1:g}" if is_itp else "",
            f"{self.config.kappa2:g}" if is_itp else "",
        ]


@dataclass(frozen=True)
class KappaTable:
    kappa1_grid: Tuple[float, ...]
    kappa2_grid: Tuple[float, ...]
    stats: Tuple[TrialStats, ...]

    def cell(self, kappa1: float, kappa2: float) -> TrialStats:
        for stats in self.stats:
            if stats.config.kappa1 == kappa1 and stats.config.kappa2 == kappa2:
                return stats
        raise KeyError((kappa1, kappa2))

    def mean(self, kappa1: float, kappa2: float) -> float:
        return self.cell(kappa1, kappa2).mean

    def best(self) -> TrialStats:
        """Cell with the lowest mean; ties go to the first in grid order"""
        return min(self.stats, key=lambda stats: stats.mean)


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(master_seed, spawn_key=(trial,))))


def _trial_results(source: Source, n: int, strategies: Sequence[SearchConfig], master_seed: int,
                   equality: bool, trials: range) -> List[List[Result]]:
    per_strategy: List[List[Result]] = [[] for _ in strategies]
    for trial in trials:
        rng = trial_rng(master_seed, trial)
        if isinstance(source, Dataset):
            sorted_list = source.sorted_list
        else:
            sorted_list = sample_list(source, n, rng)
        if equality:
            z = sorted_list[int(rng.integers(1, n + 1))]
        else:
            z = sample_target(sorted_list[0], sorted_list[n], rng)
        for results, config in zip(per_strategy, strategies):
            outcome = search(sorted_list, z, config)
            results.append((outcome.queries, outcome.capped))
    logger.debug(f"Finished trials {trials.start}..{trials.stop - 1} at n={n}")
    return per_strategy


def _blocks(trials: int, workers: int) -> List[range]:
    count = max(1, min(trials, workers * BLOCKS_PER_WORKER)) if workers > 1 else 1
    edges = np.linspace(0, trials, count + 1).astype(int)
    return [range(lo, hi) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]


def _run(source: Source, n: int, strategies: Sequence[SearchConfig], trials: int,
         master_seed: int, workers: int, equality: bool) -> List[TrialStats]:
    if trials < 1:
        raise ConfigError(f"trials must be at least 1, got {trials}")
    if not strategies:
        raise ConfigError("At least one strategy is required")
    blocks = _blocks(trials, workers)
    if len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(
                _trial_results, repeat(source), repeat(n), repeat(tuple(strategies)),
                repeat(master_seed), repeat(equality), blocks,
            ))
    else:
        parts = [_trial_results(source, n, strategies, master_seed, equality, blocks[0])]

    merged: List[List[Result]] = [[] for _ in strategies]
    for part in parts:
        for results, block_results in zip(merged, part):
            results.extend(block_results)
    return [TrialStats.from_results(config, n, results, master_seed)
            for config, results in zip(strategies, merged)]


@measure_performance
def run_trials(source: Source, strategies: Sequence[SearchConfig], trials: int, master_seed: int,
               n: Optional[int] = None, workers: int = 1) -> List[TrialStats]:
    """Every strategy sees the same (list, z) in each trial.

    Distribution sources draw a fresh list of size n per trial; dataset
    sources keep their list and only draw z.
    """
    if isinstance(source, Dataset):
        if n is not None and n != source.n:
            raise ConfigError(f"Dataset {source.name} has n={source.n}, not {n}")
        n = source.n
        label = source.name
    else:
        if n is None or n < 1:
            raise ConfigError(f"A distribution source needs a positive n, got {n}")
        label = source.label
    logger.info(f"Running {trials} trials of {len(strategies)} strategies on {label} n={n}")
    stats = _run(source, n, strategies, trials, master_seed, workers, equality=False)
    logger.info(f"Finished {label} n={n}: " + ", ".join(f"{s.strategy} {s.mean:.2f}" for s in stats))
    return stats


@measure_performance
def run_equality_trials(n: int, strategies: Sequence[SearchConfig], trials: int, master_seed: int,
                        workers: int = 1) -> List[TrialStats]:
    """Uniform lists with z = values[k*] and k* uniform on 1..n"""
    if n < 1:
        raise ConfigError(f"n must be positive, got {n}")
    logger.info(f"Running {trials} equality trials of {len(strategies)} strategies at n={n}")
    return _run(DistributionSpec.uniform(), n, strategies, trials, master_seed, workers, equality=True)


@measure_performance
def sweep_kappa(kappa1_grid: Sequence[float], kappa2_grid: Sequence[float], n: int, trials: int, seed: int,
                variant: Union[Variant, str] = Variant.STRICT, cap: int = 1000, n_max_extra: float = 0.99,
                spec: Optional[DistributionSpec] = None, workers: int = 1) -> KappaTable:
    if not kappa1_grid or not kappa2_grid:
        raise ConfigError("Both kappa grids must be non-empty")
    strategies = [
        SearchConfig.itp(variant, kappa1=kappa1, kappa2=kappa2, cap=cap, n_max_extra=n_max_extra)
        for kappa2 in kappa2_grid
        for kappa1 in kappa1_grid
    ]
    stats = run_trials(spec or DistributionSpec.uniform(), strategies, trials, seed, n=n, workers=workers)
    return KappaTable(tuple(kappa1_grid), tuple(kappa2_grid), tuple(stats))


@measure_performance
def sweep_n(n_grid: Sequence[int], spec: DistributionSpec, strategies: Sequence[SearchConfig], trials: int,
            seed: int, workers: int = 1) -> List[TrialStats]:
    if not n_grid:
        raise ConfigError("The n grid must be non-empty")
    rows: List[TrialStats] = []
    for n in n_grid:
        rows.extend(run_trials(spec, strategies, trials, seed, n=n, workers=workers))
    return rows


def write_csv(stats: Sequence[TrialStats], destination: Union[str, Path, TextIO, None] = None) -> None:
    if destination is None or hasattr(destination, "write"):
        _write_rows(stats, destination or sys.stdout)
        return
    path = Path(destination)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        _write_rows(stats, f)
    logger.info(f"Wrote {len(stats)} rows to {path}")


def _write_rows(stats: Sequence[TrialStats], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in stats:
        writer.writerow(row.to_row())

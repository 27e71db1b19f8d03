# src/core/oracle.py
"""Ground-truth engines for checking the search strategies at desk scale."""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from ..utils.exceptions import OracleBudgetError, ProbeRuleError, SearchDomainError
from ..utils.performance import measure_performance
from .search import (
    Bracket,
    SearchConfig,
    SortedList,
    Strategy,
    choose_probe,
    minmax_bound,
    reference_depth,
    search,
)

logger = logging.getLogger(__name__)

MINIMAX_BUDGET = 4096
WORST_DEPTH_BUDGET = 1024
TREE_BUDGET = 1 << 16

# (a, b, j) -> probed index
ProbeRule = Callable[[int, int, int], int]


@dataclass(frozen=True)
class DepthProfile:
    max_depth: int
    avg_depth: Fraction
    outcomes: int


def linear_scan(sorted_list: SortedList, z: float) -> int:
    """Largest k with values[k] <= z, reading every entry"""
    values = sorted_list.values
    z = float(z)
    if math.isnan(z) or not values[0] <= z <= values[-1]:
        raise SearchDomainError(f"Target {z} outside key range [{values[0]}, {values[-1]}]")
    return int(np.count_nonzero(values <= z)) - 1


def minimax_depths(n_max: int) -> np.ndarray:
    """depth[d] = fewest queries that always settle a bracket of width d"""
    if n_max > MINIMAX_BUDGET:
        raise OracleBudgetError(f"n={n_max} exceeds the minimax budget of {MINIMAX_BUDGET}")
    depth = np.zeros(max(n_max, 1) + 1, dtype=np.int64)
    for width in range(2, n_max + 1):
        left = depth[1:width]
        right = depth[width - 1:0:-1]
        depth[width] = 1 + np.min(np.maximum(left, right))
    return depth


def minimax_depth(n: int) -> int:
    if n < 1:
        raise SearchDomainError(f"n must be positive, got {n}")
    return int(minimax_depths(n)[n])


@measure_performance
def strategy_worst_depth(rule: ProbeRule, n: int) -> int:
    """Longest query path of a deterministic rule when every comparison goes against it.

    Equality outcomes end the search at once, so they never lie on a worst path
    and are not expanded.
    """
    if n > WORST_DEPTH_BUDGET:
        raise OracleBudgetError(f"n={n} exceeds the enumeration budget of {WORST_DEPTH_BUDGET}")
    root = (0, n, 0)
    worst: Dict[Tuple[int, int, int], int] = {}
    probes: Dict[Tuple[int, int, int], int] = {}
    stack = [root]
    while stack:
        state = stack[-1]
        if state in worst:
            stack.pop()
            continue
        a, b, j = state
        if b - a <= 1:
            worst[state] = 0
            stack.pop()
            continue
        k = probes.get(state)
        if k is None:
            k = rule(a, b, j)
            if not a < k < b:
                raise ProbeRuleError(f"Rule probed {k} outside ({a}, {b}) at iteration {j}")
            probes[state] = k
        children = ((a, k, j + 1), (k, b, j + 1))
        pending = [child for child in children if child not in worst]
        if pending:
            stack.extend(pending)
            continue
        worst[state] = 1 + max(worst[child] for child in children)
        stack.pop()
    logger.debug(f"Enumerated {len(worst)} bracket states for n={n}")
    return worst[root]


def config_rule(config: SearchConfig, n: int, z_fraction: float = 0.5,
                keys: Optional[Sequence[float]] = None) -> ProbeRule:
    """Freeze a search config into an (a, b, j) rule over synthetic keys and target"""
    if keys is None:
        values = np.linspace(0.0, 1.0, n + 1)
    else:
        values = SortedList(keys).values
        if values.size != n + 1:
            raise SearchDomainError(f"Expected {n + 1} synthetic keys, got {values.size}")
    z = float(values[0] + z_fraction * (values[-1] - values[0]))
    n_ref = reference_depth(config, n) if config.strategy is Strategy.ITP else 0.0

    def rule(a: int, b: int, j: int) -> int:
        bracket = Bracket(a=a, b=b, va=float(values[a]), vb=float(values[b]), j=j)
        return choose_probe(bracket, z, config, n_ref)

    return rule


def average_depth_c2(n: int) -> float:
    """Closed-form binary-search average depth when k* is uniform on 1..n"""
    if n < 2:
        raise SearchDomainError(f"n must be at least 2, got {n}")
    n_half = minmax_bound(n)
    q = n - 2 ** (n_half - 1)
    delta = Fraction(n - n_half - 2 * q, n - 1)
    return float(n_half - 1 - delta)


def binary_depth_profile(n: int) -> DepthProfile:
    """Binary search over keys 0..n with z = k* for every k* in 1..n"""
    if n < 2:
        raise SearchDomainError(f"n must be at least 2, got {n}")
    if n > TREE_BUDGET:
        raise OracleBudgetError(f"n={n} exceeds the tree budget of {TREE_BUDGET}")
    keys = SortedList(np.arange(n + 1, dtype=np.float64))
    config = SearchConfig.binary(cap=n)
    depths = [search(keys, float(k), config).queries for k in range(1, n + 1)]
    return DepthProfile(max_depth=max(depths), avg_depth=Fraction(sum(depths), n), outcomes=n)

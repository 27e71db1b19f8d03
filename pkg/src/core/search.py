# src/core/search.py
"""Bracketing search over sorted lists.

One loop keeps indices a < b with values[a] <= z < values[b] and probes an
interior index until b - a == 1. The probe rule is what differs between
binary search, interpolation search and the ITP method (interpolate, truncate
toward the midpoint, project onto the minmax interval).
"""
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..utils.exceptions import ConfigError, SearchDomainError

logger = logging.getLogger(__name__)


class Strategy(str, Enum):
    BINARY = "binary"
    INTERPOLATION = "interpolation"
    ITP = "itp"


class Variant(str, Enum):
    STRICT = "strict"
    RELAXED = "relaxed"
    LOCAL = "local"


@dataclass(frozen=True, eq=False)
class SortedList:
    """Non-decreasing keys values[0..n], n >= 1"""
    values: Union[np.ndarray, Sequence[float]]

    def __post_init__(self):
        try:
            values = np.array(self.values, dtype=np.float64)
        except (TypeError, ValueError) as e:
            raise SearchDomainError("Keys must be real numbers", e) from e
        if values.ndim != 1 or values.size < 2:
            raise SearchDomainError(f"A sorted list needs at least 2 keys, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise SearchDomainError("Keys must be finite")
        if np.any(np.diff(values) < 0):
            raise SearchDomainError("Keys must be non-decreasing")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.size - 1

    @property
    def is_distinct(self) -> bool:
        return bool(np.all(np.diff(self.values) > 0))

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, k: int) -> float:
        return float(self.values[k])


@dataclass(frozen=True)
class Bracket:
    a: int
    b: int
    va: float
    vb: float
    j: int = 0

    @property
    def delta(self) -> int:
        return self.b - self.a


@dataclass(frozen=True)
class SearchConfig:
    strategy: Strategy = Strategy.ITP
    kappa1: float = 0.01
    kappa2: float = 0.83
    variant: Variant = Variant.RELAXED
    # Relaxed only: absolute N_max, else N_max = N_1/2 + n_max_extra
    n_max: Optional[float] = None
    n_max_extra: float = 0.99
    cap: int = 1000

    def __post_init__(self):
        try:
            object.__setattr__(self, "strategy", Strategy(self.strategy))
            object.__setattr__(self, "variant", Variant(self.variant))
        except ValueError as e:
            raise ConfigError(str(e), e) from e
        if not self.kappa1 > 0:
            raise ConfigError(f"kappa1 must be positive, got {self.kappa1}")
        if not 0.5 < self.kappa2 < 1:
            raise ConfigError(f"kappa2 must lie in (1/2, 1), got {self.kappa2}")
        if not self.n_max_extra >= 0:
            raise ConfigError(f"n_max_extra must be non-negative, got {self.n_max_extra}")
        if self.n_max is not None and not self.n_max >= 0:
            raise ConfigError(f"n_max must be non-negative, got {self.n_max}")
        if int(self.cap) != self.cap or self.cap < 1:
            raise ConfigError(f"cap must be a positive integer, got {self.cap}")

    @classmethod
    def binary(cls, cap: int = 1000) -> 'SearchConfig':
        return cls(strategy=Strategy.BINARY, cap=cap)

    @classmethod
    def interpolation(cls, cap: int = 1000) -> 'SearchConfig':
        return cls(strategy=Strategy.INTERPOLATION, cap=cap)

    @classmethod
    def itp(cls, variant: Union[Variant, str] = Variant.RELAXED, **kwargs) -> 'SearchConfig':
        return cls(strategy=Strategy.ITP, variant=variant, **kwargs)

    @property
    def label(self) -> str:
        return self.strategy.value

    @property
    def variant_label(self) -> str:
        if self.strategy is not Strategy.ITP:
            return ""
        if self.variant is Variant.RELAXED:
            if self.n_max is not None:
                return f"relaxed={self.n_max:g}"
            return f"relaxed+{self.n_max_extra:g}"
        return self.variant.value


@dataclass(frozen=True)
class SearchOutcome:
    k_star: int
    trace: Tuple[int, ...]
    # bracket width after each probe
    widths: Tuple[int, ...]
    capped: bool = False

    @property
    def queries(self) -> int:
        return len(self.trace)


def minmax_bound(n: int) -> int:
    """Worst-case query count ceil(log2 n) of an optimal strategy"""
    if n < 1:
        raise SearchDomainError(f"n must be positive, got {n}")
    return (int(n) - 1).bit_length()


def midpoint(bracket: Bracket) -> float:
    return (bracket.a + bracket.b) / 2


def interpolation_point(bracket: Bracket, z: float) -> float:
    """Linear interpolation of z between (a, va) and (b, vb); midpoint when va == vb"""
    if bracket.va == bracket.vb:
        return midpoint(bracket)
    x = bracket.a + (z - bracket.va) / (bracket.vb - bracket.va) * bracket.delta
    return min(max(x, bracket.a), bracket.b)


def truncate(x_f: float, x_half: float, delta: int, kappa1: float, kappa2: float) -> Tuple[float, int]:
    """Move x_f toward x_half by kappa1 * delta**kappa2, stopping at x_half"""
    diff = x_half - x_f
    sigma = (diff > 0) - (diff < 0)
    step = kappa1 * delta ** kappa2
    if step <= abs(diff):
        return x_f + sigma * step, sigma
    return x_half, sigma


def minmax_radius(j: int, delta: int, variant: Union[Variant, str], n_ref: Optional[float] = None) -> float:
    """Half-width of the interval around the midpoint that keeps the worst case bounded.

    Strict and Relaxed budget n_ref iterations overall (N_1/2 or N_max); Local
    budgets ceil(log2 delta) iterations from the current bracket onward.
    Negative values are clamped to 0, which reduces the step to a binary one.
    """
    variant = Variant(variant)
    if variant is Variant.LOCAL:
        exponent = minmax_bound(delta) - 1
    else:
        if n_ref is None:
            raise ConfigError(f"{variant.value} radius needs a reference depth")
        exponent = n_ref - j - 1
    return max(2.0 ** exponent - delta / 2, 0.0)


def project(x_t: float, x_half: float, r: float, sigma: int) -> float:
    if abs(x_t - x_half) <= r:
        return x_t
    return x_half - sigma * r


def round_toward_midpoint(x: float, x_half: float, a: int, b: int) -> int:
    """Nearest integer to x on the x_half side, clamped into (a, b)"""
    if x == math.floor(x):
        k = int(x)
    elif x < x_half:
        k = math.ceil(x)
    else:
        # covers the tie x == x_half
        k = math.floor(x)
    return min(max(k, a + 1), b - 1)


def bracket_update(bracket: Bracket, k: int, v_k: float, z: float) -> Bracket:
    """Shrink the bracket after reading v_k.

    On equality the bracket collapses to (k, k + 1); values[k + 1] is never
    read, so vb then holds v_k.
    """
    if not bracket.a < k < bracket.b:
        raise SearchDomainError(f"Probe {k} outside open bracket ({bracket.a}, {bracket.b})")
    if v_k > z:
        return replace(bracket, b=k, vb=v_k, j=bracket.j + 1)
    if v_k < z:
        return replace(bracket, a=k, va=v_k, j=bracket.j + 1)
    return Bracket(a=k, b=k + 1, va=v_k, vb=v_k, j=bracket.j + 1)


def reference_depth(config: SearchConfig, n: int) -> float:
    """Iteration budget the Strict/Relaxed radius is computed from"""
    n_half = minmax_bound(n)
    if config.variant is not Variant.RELAXED:
        return float(n_half)
    n_max = config.n_max if config.n_max is not None else n_half + config.n_max_extra
    if n_max < n_half:
        raise ConfigError(f"N_max={n_max} is below ceil(log2 n)={n_half} for n={n}")
    return float(n_max)


def choose_probe(bracket: Bracket, z: float, config: SearchConfig, n_ref: float = 0.0) -> int:
    x_half = midpoint(bracket)
    if config.strategy is Strategy.BINARY:
        x = x_half
    elif config.strategy is Strategy.INTERPOLATION:
        x = interpolation_point(bracket, z)
    else:
        x_f = interpolation_point(bracket, z)
        x_t, sigma = truncate(x_f, x_half, bracket.delta, config.kappa1, config.kappa2)
        r = minmax_radius(bracket.j, bracket.delta, config.variant, n_ref)
        x = project(x_t, x_half, r, sigma)
    return round_toward_midpoint(x, x_half, bracket.a, bracket.b)


def search(sorted_list: SortedList, z: float, config: SearchConfig) -> SearchOutcome:
    """Locate k* with values[k*] <= z < values[k* + 1].

    Only interior reads count as queries; values[0] and values[n] are free.
    z == values[n] resolves to n - 1 through the ordinary loop.
    """
    values = sorted_list.values
    n = sorted_list.n
    z = float(z)
    lo, hi = float(values[0]), float(values[n])
    if math.isnan(z) or not lo <= z <= hi:
        raise SearchDomainError(f"Target {z} outside key range [{lo}, {hi}]")
    if z == lo:
        return SearchOutcome(k_star=0, trace=(), widths=())

    n_ref = reference_depth(config, n) if config.strategy is Strategy.ITP else 0.0
    bracket = Bracket(a=0, b=n, va=lo, vb=hi)
    trace = []
    widths = []
    capped = False
    while bracket.delta > 1:
        if len(trace) >= config.cap:
            capped = True
            logger.debug(f"{config.label} hit the cap of {config.cap} queries at bracket ({bracket.a}, {bracket.b})")
            break
        k = choose_probe(bracket, z, config, n_ref)
        v_k = float(values[k])
        trace.append(k)
        bracket = bracket_update(bracket, k, v_k, z)
        widths.append(bracket.delta)

    return SearchOutcome(k_star=bracket.a, trace=tuple(trace), widths=tuple(widths), capped=capped)


def successful_iterations(outcome: SearchOutcome, n: int) -> int:
    """Count probes that at least halved the bracket"""
    previous = n
    count = 0
    for width in outcome.widths:
        if 2 * width <= previous:
            count += 1
        previous = width
    return count

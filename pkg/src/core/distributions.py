# src/core/distributions.py
"""Seeded list and target generators for the Monte Carlo experiments.

Every generator draws from numpy's PCG64 bit generator. A bare integer seed
maps to Generator(PCG64(seed)); bench derives one child stream per trial
through SeedSequence spawn keys (see bench.trial_rng).
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Union

import numpy as np

from ..utils.exceptions import ConfigError
from .search import SortedList


SeedLike = Union[int, np.random.Generator]


class DistributionKind(str, Enum):
    UNIFORM = "uniform"
    GAUSSIAN = "gaussian"
    EXPONENTIAL = "exponential"
    TRIANGULAR = "triangular"
    STEP = "step"


@dataclass(frozen=True)
class DistributionSpec:
    kind: DistributionKind = DistributionKind.UNIFORM
    sigma: float = 0.01
    lam: float = 1.0
    split: float = 0.75
    left_mass: float = 0.5

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", DistributionKind(self.kind))
        except ValueError as e:
            raise ConfigError(str(e), e) from e
        if not self.sigma > 0:
            raise ConfigError(f"sigma must be positive, got {self.sigma}")
        if not self.lam > 0:
            raise ConfigError(f"lambda must be positive, got {self.lam}")
        if not 0 < self.split < 1:
            raise ConfigError(f"split must lie in (0, 1), got {self.split}")
        if not 0 < self.left_mass < 1:
            raise ConfigError(f"left_mass must lie in (0, 1), got {self.left_mass}")

    @classmethod
    def uniform(cls) -> 'DistributionSpec':
        return cls(DistributionKind.UNIFORM)

    @classmethod
    def gaussian(cls, sigma: float = 0.01) -> 'DistributionSpec':
        return cls(DistributionKind.GAUSSIAN, sigma=sigma)

    @classmethod
    def exponential(cls, lam: float = 1.0) -> 'DistributionSpec':
        return cls(DistributionKind.EXPONENTIAL, lam=lam)

    @classmethod
    def triangular(cls) -> 'DistributionSpec':
        return cls(DistributionKind.TRIANGULAR)

    @classmethod
    def step(cls, split: float = 0.75, left_mass: float = 0.5) -> 'DistributionSpec':
        return cls(DistributionKind.STEP, split=split, left_mass=left_mass)

    @property
    def label(self) -> str:
        return self.kind.value

    @property
    def uses_rejection(self) -> bool:
        return self.kind in (DistributionKind.GAUSSIAN, DistributionKind.EXPONENTIAL)

    def cdf(self, x):
        """Analytic CDF of one interior point on [0, 1]"""
        x = np.clip(np.asarray(x, dtype=np.float64), 0.0, 1.0)
        if self.kind is DistributionKind.UNIFORM:
            return x
        if self.kind is DistributionKind.TRIANGULAR:
            return x ** 2
        if self.kind is DistributionKind.STEP:
            left = self.left_mass * x / self.split
            right = self.left_mass + (1 - self.left_mass) * (x - self.split) / (1 - self.split)
            return np.where(x < self.split, left, right)
        if self.kind is DistributionKind.EXPONENTIAL:
            return -np.expm1(-self.lam * x) / -np.expm1(-self.lam)
        raise ConfigError("The gaussian list draws its own mean, so it has no fixed CDF")


def make_rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def _fill_open_unit(draw: Callable[[np.random.Generator, int], np.ndarray],
                    count: int, rng: np.random.Generator) -> np.ndarray:
    """Collect count draws inside (0, 1), resampling the rest"""
    out = np.empty(count, dtype=np.float64)
    filled = 0
    while filled < count:
        batch = draw(rng, count - filled)
        batch = batch[(batch > 0.0) & (batch < 1.0)]
        take = min(batch.size, count - filled)
        out[filled:filled + take] = batch[:take]
        filled += take
    return out


def _interior_draw(spec: DistributionSpec, rng: np.random.Generator) -> Callable[[np.random.Generator, int], np.ndarray]:
    kind = spec.kind
    if kind is DistributionKind.UNIFORM:
        return lambda g, m: g.random(m)
    if kind is DistributionKind.GAUSSIAN:
        mu = rng.random()
        return lambda g, m: g.normal(mu, spec.sigma, m)
    if kind is DistributionKind.EXPONENTIAL:
        return lambda g, m: g.exponential(1.0 / spec.lam, m)
    if kind is DistributionKind.TRIANGULAR:
        return lambda g, m: np.sqrt(g.random(m))

    def step(g: np.random.Generator, m: int) -> np.ndarray:
        left = g.random(m) < spec.left_mass
        u = g.random(m)
        return np.where(left, u * spec.split, spec.split + u * (1.0 - spec.split))
    return step


def sample_list(spec: DistributionSpec, n: int, seed: SeedLike) -> SortedList:
    """Keys 0 and 1 at the ends with n - 1 sorted interior draws between them"""
    if n < 1:
        raise ConfigError(f"n must be positive, got {n}")
    rng = make_rng(seed)
    draw = _interior_draw(spec, rng)
    interior = np.sort(_fill_open_unit(draw, n - 1, rng))
    values = np.concatenate(([0.0], interior, [1.0]))
    return SortedList(values)


def sample_target(lo: float, hi: float, seed: SeedLike) -> float:
    """Uniform draw strictly inside (lo, hi)"""
    if not lo < hi:
        raise ConfigError(f"Target range must satisfy lo < hi, got [{lo}, {hi}]")
    rng = make_rng(seed)
    while True:
        z = float(rng.uniform(lo, hi))
        if lo < z < hi:
            return z

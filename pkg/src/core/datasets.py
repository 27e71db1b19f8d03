# src/core/datasets.py
"""Numeric and text lists read from files, plus self-generated sequences."""
import csv
import logging
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

import numpy as np
from sortedcontainers import SortedList as SortedKeys, SortedSet

from ..utils.exceptions import (
    DatasetError,
    DatasetParseError,
    EmptyDatasetError,
    GenerationRangeError,
    SearchDomainError,
    log_and_raise,
)
from .keycodec import EncodedKey, encode_key
from .search import SortedList

logger = logging.getLogger(__name__)

# F_1477 overflows float64
FIBONACCI_MAX_N = 1470
PathLike = Union[str, Path]


class Origin(str, Enum):
    FILE = "file"
    GENERATED = "generated"


class GeneratedKind(str, Enum):
    PRIMES = "primes"
    FIBONACCI = "fibonacci"
    HARMONIC = "harmonic"


@dataclass(frozen=True)
class Dataset:
    name: str
    sorted_list: SortedList
    origin: Origin
    dedup_count: int = 0

    @property
    def n(self) -> int:
        return self.sorted_list.n


def _order(keys: Iterable[float], dedup: bool) -> np.ndarray:
    ordered = SortedSet(keys) if dedup else SortedKeys(keys)
    return np.fromiter(ordered, dtype=np.float64, count=len(ordered))


def _build(name: str, values: np.ndarray, records: int, origin: Origin) -> Dataset:
    if values.size < 2:
        raise EmptyDatasetError(f"{name}: need at least 2 distinct keys, got {values.size}")
    try:
        sorted_list = SortedList(values)
    except SearchDomainError as e:
        log_and_raise(logger, f"{name}: keys do not form a searchable list", EmptyDatasetError, e)
    dedup_count = records - values.size
    if dedup_count:
        logger.info(f"{name}: merged {dedup_count} duplicate keys")
    return Dataset(name=name, sorted_list=sorted_list, origin=origin, dedup_count=dedup_count)


def _existing(path: PathLike) -> Path:
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"{path}: no such file")
    return path


def _decoded(path: Path, raw_lines: Iterable[bytes]) -> Iterator[str]:
    for line_number, raw in enumerate(raw_lines, start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise DatasetParseError(f"{path}:{line_number}: not valid UTF-8 ({e.reason})", line_number, e) from e
        yield line


def _read_rows(path: Path, column: Optional[int], skip_header: bool) -> Iterable[Tuple[int, str]]:
    with open(path, "rb") as f:
        lines = _decoded(path, f)
        if skip_header:
            next(lines, None)
        if column is None:
            for line_number, line in enumerate(lines, start=1 + skip_header):
                yield line_number, line.strip()
            return
        reader = csv.reader(lines)
        for row in reader:
            line_number = reader.line_num + skip_header
            if not row:
                continue
            if len(row) < column:
                raise DatasetParseError(
                    f"{path}:{line_number}: row has {len(row)} columns, column {column} requested",
                    line_number,
                )
            yield line_number, row[column - 1].strip()


def load_numeric(path: PathLike, column: Optional[int] = None, dedup: bool = True,
                 skip_header: bool = False) -> Dataset:
    """One decimal per line, or one CSV column selected 1-based"""
    path = _existing(path)
    if column is not None and column < 1:
        raise DatasetParseError(f"Column selector is 1-based, got {column}", 0)
    keys: List[float] = []
    for line_number, cell in _read_rows(path, column, skip_header):
        if not cell:
            continue
        try:
            value = float(cell)
        except ValueError as e:
            raise DatasetParseError(f"{path}:{line_number}: cannot parse {cell!r} as a number", line_number, e) from e
        if not math.isfinite(value):
            raise DatasetParseError(f"{path}:{line_number}: non-finite value {cell!r}", line_number)
        keys.append(value)
    if not keys:
        raise EmptyDatasetError(f"{path}: no numeric rows")
    logger.info(f"Loaded {len(keys)} numeric rows from {path}")
    return _build(path.stem, _order(keys, dedup), len(keys), Origin.FILE)


def load_text(path: PathLike) -> Dataset:
    """One key per line, base-27 encoded; keys equal after normalization merge"""
    path = _existing(path)
    with open(path, "rb") as f:
        keys = [encode_key(line.rstrip("\r\n")) for line in _decoded(path, f)]
    if not keys:
        raise EmptyDatasetError(f"{path}: no text rows")
    logger.info(f"Loaded {len(keys)} text rows from {path}")
    kept: Dict[float, EncodedKey] = {}
    for key in keys:
        first = kept.setdefault(key.value, key)
        if first is not key:
            logger.debug(f"{path.name}: {key.source!r} merges into {first.source!r}")
    return _build(path.stem, _order(kept, dedup=True), len(keys), Origin.FILE)


def _first_primes(count: int) -> np.ndarray:
    bound = 16
    if count >= 6:
        # upper bound on the count-th prime
        bound = int(count * (math.log(count) + math.log(math.log(count)))) + 1
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.flatnonzero(sieve)[:count].astype(np.float64)


def _fibonacci(count: int) -> List[float]:
    terms = []
    a, b = 1, 1
    for _ in range(count):
        terms.append(float(a))
        a, b = b, a + b
    return terms


def generate(kind: Union[GeneratedKind, str], n: int) -> Dataset:
    """First n + 1 terms of the sequence, deduplicated"""
    kind = GeneratedKind(kind)
    if n < 1:
        raise GenerationRangeError(f"n must be positive, got {n}")
    count = n + 1
    if kind is GeneratedKind.PRIMES:
        keys = _first_primes(count)
    elif kind is GeneratedKind.FIBONACCI:
        if n > FIBONACCI_MAX_N:
            raise GenerationRangeError(f"Fibonacci terms overflow float64 beyond n={FIBONACCI_MAX_N}, got {n}")
        keys = _fibonacci(count)
    else:
        keys = np.cumsum(1.0 / np.arange(1, count + 1, dtype=np.float64))
    logger.info(f"Generated {count} {kind.value} terms")
    return _build(f"{kind.value}-{n}", np.unique(np.asarray(keys, dtype=np.float64)), count, Origin.GENERATED)


def save_dataset(dataset: Dataset, path: PathLike) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for value in dataset.sorted_list.values:
            f.write(f"{float(value)!r}\n")
    logger.info(f"Wrote {len(dataset.sorted_list)} keys to {path}")

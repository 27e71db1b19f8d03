# src/__init__.py
from .core import (
    Dataset,
    DistributionSpec,
    SearchConfig,
    SearchOutcome,
    SortedList,
    Strategy,
    TrialStats,
    Variant,
    search,
)
from .utils import setup_logging
from .config import AppConfig

__all__ = [
    'Dataset',
    'DistributionSpec',
    'SearchConfig',
    'SearchOutcome',
    'SortedList',
    'Strategy',
    'TrialStats',
    'Variant',
    'search',
    'setup_logging',
    'AppConfig'
]

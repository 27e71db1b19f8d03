# src/core/__init__.py
from .search import SearchConfig, SearchOutcome, SortedList, Strategy, Variant, search
from .distributions import DistributionSpec
from .datasets import Dataset
from .bench import TrialStats

__all__ = ['SearchConfig', 'SearchOutcome', 'SortedList', 'Strategy', 'Variant', 'search',
           'DistributionSpec', 'Dataset', 'TrialStats']

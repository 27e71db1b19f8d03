# src/utils/__init__.py
from .exceptions import ItpSearchError, log_and_raise
from .logging_setup import setup_logging
from .performance import measure_performance

__all__ = ['ItpSearchError', 'log_and_raise', 'setup_logging', 'measure_performance']

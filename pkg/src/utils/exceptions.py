import logging
from typing import Optional

def log_and_raise(logger, message, exception_class, original_exception=None):
    logger.error(message, exc_info=original_exception is not None)
    raise exception_class(message) from original_exception

class ItpSearchError(Exception):
    """Base exception for sorted-list search errors"""
    def __init__(self, message: str, original_error: Optional[Exception] = None):
        super().__init__(message)
        self.original_error = original_error

class ConfigError(ItpSearchError):
    """Raised when search or bench parameters are invalid"""
    pass

class SearchDomainError(ItpSearchError):
    """Raised when a list or target is outside the searchable domain"""
    pass

class OracleError(ItpSearchError):
    """Raised when an oracle cannot answer"""
    pass

class OracleBudgetError(OracleError):
    """Raised when n exceeds the exhaustive enumeration budget"""
    pass

class ProbeRuleError(OracleError):
    """Raised when a probe rule leaves the open bracket (a, b)"""
    pass

class DatasetError(ItpSearchError):
    """Raised when a dataset cannot be built"""
    pass

class DatasetParseError(DatasetError):
    """Raised when an input row does not parse"""
    def __init__(self, message: str, line_number: int, original_error: Optional[Exception] = None):
        super().__init__(message, original_error)
        self.line_number = line_number

class EmptyDatasetError(DatasetError):
    """Raised when an input holds too few keys to search"""
    pass

class GenerationRangeError(DatasetError):
    """Raised when a generated list leaves the representable range"""
    pass

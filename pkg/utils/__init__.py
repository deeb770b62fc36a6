"""
Utility package
"""
from .errors import ErrorCode, HeisKakeyaError, error_report
from .parallel import parallel_map, split_seeds

__all__ = ['ErrorCode', 'HeisKakeyaError', 'error_report', 'parallel_map', 'split_seeds']
